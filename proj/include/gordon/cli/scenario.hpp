#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gordon/errors.hpp"
#include "gordon/flow.hpp"
#include "gordon/geodesic.hpp"
#include "gordon/medium.hpp"

namespace gordon::cli {

inline constexpr std::string_view kScenarioSchema = "gordon-scenario/1";
inline constexpr std::string_view kSweepSchema = "gordon-sweep/1";

enum class Task { metric, horizon, geodesic, wave, dispersion, spectrum };

const char* to_string(Task task) noexcept;
std::optional<Task> parse_task(std::string_view name) noexcept;
/// "metric, horizon, ..." for diagnostics.
std::string task_list();

struct Issue {
  std::string path;  // dotted field path, e.g. "medium.modes[1].omega"
  std::string message;
};

/// Malformed document. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_, column_;
};

/// Every problem found in a well-formed document.
class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const noexcept { return issues_; }

private:
  std::vector<Issue> issues_;
};

class IoError : public Error {
public:
  using Error::Error;
};

struct MetricParams {
  std::size_t samples = 257;
  std::size_t random_checks = 1000;
};

struct GeodesicParams {
  std::size_t inside = 20;
  std::size_t outside = 20;
  double lambda_max = 400.0;
  double initial_step = 0.02;
  double drift_tolerance = 1e-8;
  bool write_trajectories = false;
  std::size_t trajectory_stride = 10;
};

struct PacketParams {
  double center = 0.0;
  double width = 0.0;
  double wavenumber = 0.0;
  RayBranch direction = RayBranch::outgoing;
};

struct WaveParams {
  std::size_t cells = 1024;
  double cfl = 0.5;
  double sponge_fraction = 0.1;
  double sponge_strength = 36.0;
  double r_min = 0.0;  // defaults to the flow domain
  double r_max = 0.0;
  double t_final = 0.0;
  PacketParams packet;
  std::vector<double> probes;
  std::size_t output_every = 1;
  std::size_t snapshot_every = 0;
  bool track_energy = true;
};

struct DispersionParams {
  std::vector<double> omega;
  int max_terms = 12;
};

struct SpectrumParams {
  std::size_t points = 200;
  /// ω_max = factor · k_B T / ħ.
  double omega_max_factor = 20.0;
};

struct Scenario {
  Task task = Task::horizon;
  std::optional<MediumModel> medium;
  std::optional<FlowProfile> flow;  // absent only for the dispersion task
  double length_scale_m = 1e-3;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  MetricParams metric;
  GeodesicParams geodesic;
  WaveParams wave;
  DispersionParams dispersion;
  SpectrumParams spectrum;

  /// The validated input document, re-serialized.
  std::string canonical;

  double epsilon() const { return static_permittivity(*medium); }
};

/// Parses and validates a scenario document. `forced` is the task chosen on
/// the command line: a `task` field in the document must then agree with it,
/// otherwise `task` is required. Throws ParseError or ValidationError (with
/// every issue found).
Scenario parse_scenario(std::string_view text, std::optional<Task> forced = std::nullopt);

/// Reads a file and parses it. Throws IoError when it cannot be read.
Scenario load_scenario(const std::string& path, std::optional<Task> forced = std::nullopt);

std::string read_text_file(const std::string& path);

} // namespace gordon::cli
