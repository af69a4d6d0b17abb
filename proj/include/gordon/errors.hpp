#pragma once

#include <stdexcept>
#include <string>

namespace gordon {

/// Base class of every numerical or domain failure raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of an operation (ε < 1, r outside the profile, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Frequency sits inside the guard band of an oscillator resonance.
class ResonanceError : public Error {
public:
  using Error::Error;
};

/// Power series evaluated outside its radius of convergence.
class DivergenceError : public Error {
public:
  using Error::Error;
};

class SuperluminalError : public Error {
public:
  using Error::Error;
};

/// A formula hit a genuine singularity (horizon-crossing coordinate map, ε → 1).
class SingularError : public Error {
public:
  using Error::Error;
};

class NoHorizonError : public Error {
public:
  using Error::Error;
};

class StepCollapseError : public Error {
public:
  using Error::Error;
};

class InstabilityError : public Error {
public:
  using Error::Error;
};

/// Initial data overlaps the absorbing layers.
class SupportError : public Error {
public:
  using Error::Error;
};

} // namespace gordon
