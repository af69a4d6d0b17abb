#include "gordon/cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"
#include "gordon/constants.hpp"
#include "gordon/coords.hpp"
#include "gordon/horizon.hpp"
#include "gordon/metric.hpp"
#include "gordon/radial.hpp"
#include "gordon/wavesim.hpp"

namespace gordon::cli {

using ojson = nlohmann::ordered_json;

namespace {

// Uniform doubles in [0, 1) built directly from mt19937_64 output, whose
// sequence is fixed by the standard (the distributions are not).
class Uniform {
public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

private:
  std::mt19937_64 engine_;
};

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

ojson quantity(double value, const char* unit) { return ojson{{"value", value}, {"unit", unit}}; }

ojson horizon_json(const HorizonReport& h, double length_scale_m) {
  ojson j;
  j["schema"] = "gordon-horizon/1";
  j["kind"] = to_string(h.kind);
  j["length_scale_m"] = length_scale_m;
  if (h.kind != HorizonKind::none) {
    j["radius"] = quantity(h.radius, "r0");
    j["radius_m"] = quantity(h.radius * length_scale_m, "m");
    j["beta_h"] = quantity(h.beta_h, "c");
    j["kappa"] = quantity(h.kappa, "1/r0");
    j["kappa_si"] = quantity(h.kappa / length_scale_m, "1/m");
    j["temperature"] = quantity(h.temperature, "K");
    j["temperature_estimate"] = quantity(h.estimate, "K");
  }
  j["roots"] = h.roots;
  j["warnings"] = h.warnings;
  return j;
}

void run_horizon(const Scenario& s, OutputDir& out, std::string& summary) {
  const HorizonReport h = analyze_horizon(*s.flow, s.epsilon(), s.length_scale_m);
  out.write("horizon.json", dump(horizon_json(h, s.length_scale_m)));
  summary = h.kind == HorizonKind::none
                ? "no horizon"
                : fmt::format("{} horizon at r = {:.12g} r0, kappa = {:.12g}/r0, T = {:.6g} K",
                              to_string(h.kind), h.radius, h.kappa, h.temperature);
}

void run_metric(const Scenario& s, OutputDir& out, std::string& summary) {
  const FlowProfile& flow = *s.flow;
  const double eps = s.epsilon();
  const HorizonReport h = find_ergosurface(flow, eps);

  std::vector<double> radii(s.metric.samples);
  const double lo = flow.r_min(), hi = flow.r_max();
  for (std::size_t i = 0; i < radii.size(); ++i)
    radii[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(radii.size() - 1);
  radii.back() = hi;
  radii.insert(radii.end(), h.roots.begin(), h.roots.end());
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  CsvWriter csv({"r[r0]", "g00[1]", "g01[1]", "g11[1]", "g00_static[1]", "g_rr_static[1]"});
  for (double r : radii) {
    const RadialMetricComponents c = radial_block(flow, eps, r);
    std::vector<std::string> row{format_number(r), format_number(c.g00), format_number(c.g01),
                                 format_number(c.g11), "", ""};
    try {
      const StaticForm sf = static_form(c);
      row[4] = format_number(sf.g00);
      row[5] = format_number(sf.g_rr);
    } catch (const SingularError&) {
      // left blank on the horizon
    }
    csv.cells(row);
  }
  out.write("metric.csv", csv.str());

  Uniform rng(s.seed);
  CsvWriter checks({"epsilon[1]", "beta_x[c]", "beta_y[c]", "beta_z[c]", "identity_error[1]",
                    "det_relative_error[1]"});
  double worst_identity = 0.0, worst_det = 0.0;
  for (std::size_t k = 0; k < s.metric.random_checks; ++k) {
    const double e = rng(1.0, 100.0);
    const double mag = rng(0.0, 0.99);
    const double z = rng(-1.0, 1.0);
    const double phi = rng(0.0, 2.0 * std::numbers::pi);
    const double rho = std::sqrt(1.0 - z * z);
    const Vec3 beta{mag * rho * std::cos(phi), mag * rho * std::sin(phi), mag * z};
    const FourVelocity u = four_velocity(beta);
    const MetricTensor up = contravariant_metric(e, u);
    const Mat4 prod = multiply(covariant_metric(e, u).components, up.components);
    long double err = 0.0L;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) err = std::max(err, std::abs(prod[i][j] - (i == j ? 1.0L : 0.0L)));
    const long double det_err = std::abs(metric_determinant(up) + e) / e;
    worst_identity = std::max(worst_identity, static_cast<double>(err));
    worst_det = std::max(worst_det, static_cast<double>(det_err));
    checks.row({e, beta[0], beta[1], beta[2], static_cast<double>(err), static_cast<double>(det_err)});
  }
  out.write("identity_checks.csv", checks.str());

  ojson j;
  j["schema"] = "gordon-metric/1";
  j["epsilon"] = eps;
  j["horizon_kind"] = to_string(h.kind);
  if (h.kind != HorizonKind::none) {
    j["horizon_radius"] = quantity(h.radius, "r0");
    j["g00_at_horizon"] = radial_block(flow, eps, h.radius).g00;
  }
  j["random_checks"] = s.metric.random_checks;
  j["seed"] = s.seed;
  j["max_identity_error"] = worst_identity;
  j["max_det_relative_error"] = worst_det;
  out.write("metric.json", dump(j));
  summary = fmt::format("{} radii, identity error {:.3g}, det error {:.3g}", radii.size(),
                        worst_identity, worst_det);
}

std::vector<double> spread(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// What the one-way property predicts for a launch, or nullptr when it only
// forbids crossing: white-hole ingoing rays pile up on r_h from either side.
const char* expected_class(HorizonKind kind, bool inside, RayBranch branch) {
  if (kind == HorizonKind::black) {
    if (inside) return "captured";
    return branch == RayBranch::outgoing ? "escaped" : "captured";
  }
  if (kind == HorizonKind::white && branch == RayBranch::outgoing) return "escaped";
  return nullptr;
}

void run_geodesic(const Scenario& s, OutputDir& out, std::string& summary) {
  const FlowProfile& flow = *s.flow;
  const double eps = s.epsilon();
  const HorizonReport h = find_ergosurface(flow, eps);
  const GeodesicParams& g = s.geodesic;

  std::vector<RayLaunch> launches;
  std::vector<bool> inside;
  const double lo = flow.r_min(), hi = flow.r_max();
  if (h.kind != HorizonKind::none) {
    const double r_h = h.radius;
    for (double r : spread(lo + 0.1 * (r_h - lo), r_h - 0.05 * (r_h - lo), g.inside))
      for (RayBranch b : {RayBranch::outgoing, RayBranch::ingoing}) {
        launches.push_back({r, b});
        inside.push_back(true);
      }
    for (double r : spread(r_h + 0.05 * (hi - r_h), r_h + 0.9 * (hi - r_h), g.outside))
      for (RayBranch b : {RayBranch::outgoing, RayBranch::ingoing}) {
        launches.push_back({r, b});
        inside.push_back(false);
      }
  } else {
    for (double r : spread(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo), g.inside + g.outside))
      for (RayBranch b : {RayBranch::outgoing, RayBranch::ingoing}) {
        launches.push_back({r, b});
        inside.push_back(false);
      }
  }

  NullIntegrationOptions opts;
  opts.lambda_max = g.lambda_max;
  opts.initial_step = g.initial_step;
  opts.drift_tolerance = g.drift_tolerance;
  opts.sample_stride = g.trajectory_stride;
  const double r_h = h.kind == HorizonKind::none ? std::nan("") : h.radius;
  const auto results = sweep_rays(flow, eps, r_h, launches, opts, g.write_trajectories);

  ojson rays = ojson::array();
  std::size_t consistent = 0;
  double worst_drift = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const RayOutcome& o = results[i];
    const char* cls = to_string(o.classification);
    const char* expected = expected_class(h.kind, inside[i], o.branch);
    bool ok = true;
    if (expected) ok = std::string_view(cls) == expected;
    else if (h.kind == HorizonKind::white)
      ok = inside[i] ? o.max_r <= r_h * (1.0 + 1e-9) : o.min_r >= r_h * (1.0 - 1e-9);
    consistent += ok ? 1 : 0;
    worst_drift = std::max(worst_drift, o.max_null_drift);
    ojson r;
    r["launch_r"] = o.launch_r;
    r["branch"] = to_string(o.branch);
    r["region"] = h.kind == HorizonKind::none ? "domain" : (inside[i] ? "inside" : "outside");
    r["classification"] = cls;
    r["expected"] = expected ? expected
                    : h.kind == HorizonKind::none ? "any"
                    : inside[i] ? "stays below r_h" : "stays above r_h";
    r["consistent"] = ok;
    r["termination"] = to_string(o.termination);
    r["final_r"] = o.final_r;
    r["min_r"] = o.min_r;
    r["max_r"] = o.max_r;
    r["max_null_drift"] = o.max_null_drift;
    rays.push_back(r);

    if (g.write_trajectories) {
      CsvWriter csv({"lambda[r0]", "t[r0/c]", "r[r0]", "p_t[1]", "p_r[1]", "null_residual[1]"});
      for (const auto& smp : o.trajectory.samples)
        csv.row({smp.lambda, smp.point.t, smp.point.r, smp.point.p_t, smp.point.p_r, smp.null_residual});
      out.write(fmt::format("trajectories/ray_{:03d}_{}.csv", i, to_string(o.branch)), csv.str());
    }
  }

  ojson j;
  j["schema"] = "gordon-rays/1";
  j["epsilon"] = eps;
  j["horizon_kind"] = to_string(h.kind);
  if (h.kind != HorizonKind::none) j["horizon_radius"] = quantity(h.radius, "r0");
  j["drift_tolerance"] = g.drift_tolerance;
  j["max_null_drift"] = worst_drift;
  j["consistent"] = consistent;
  j["total"] = results.size();
  j["rays"] = rays;
  out.write("rays.json", dump(j));
  summary = fmt::format("{}/{} rays consistent with the horizon, max drift {:.3g}", consistent,
                        results.size(), worst_drift);
}

void write_snapshot(OutputDir& out, const std::string& name, const Grid1D& grid, const WaveField& f) {
  CsvWriter csv({"r[r0]", "phi[1]", "pi[1]"});
  for (std::size_t i = 0; i < grid.n_cells; ++i) csv.row({grid.center(i), f.phi[i], f.pi[i]});
  out.write(name, csv.str());
}

void run_wave(const Scenario& s, OutputDir& out, std::string& summary) {
  const FlowProfile& flow = *s.flow;
  const double eps = s.epsilon();
  const WaveParams& w = s.wave;

  const Grid1D grid = make_grid(flow, eps, w.r_min, w.r_max, w.cells, w.cfl, w.sponge_fraction);
  const SpongeOptions sponge{w.sponge_strength};
  const WaveCoefficients coeffs = wave_coefficients(grid, flow, eps, sponge);
  const WaveField initial = init_packet(grid, coeffs, w.packet.center, w.packet.width,
                                        w.packet.wavenumber, w.packet.direction);
  write_snapshot(out, "snapshots/initial.csv", grid, initial);

  WaveRunOptions opts;
  opts.probe_every = w.output_every;
  opts.snapshot_every = w.snapshot_every;
  opts.track_energy = w.track_energy;
  opts.sponge = sponge;
  std::size_t index = 0;
  opts.on_snapshot = [&](double, const WaveField& f) {
    index += w.snapshot_every;
    write_snapshot(out, fmt::format("snapshots/step_{:08d}.csv", index), grid, f);
  };
  const WaveRunResult r = run(grid, flow, eps, initial, w.t_final, w.probes, opts);
  write_snapshot(out, "snapshots/final.csv", grid, r.final_field);

  CsvWriter probes({"t[r0/c]", "probe_r[r0]", "phi[1]"});
  for (std::size_t k = 0; k < r.times.size(); ++k)
    for (std::size_t p = 0; p < r.probe_r.size(); ++p)
      probes.row({r.times[k], r.probe_r[p], r.probe_phi[p][k]});
  out.write("probes.csv", probes.str());

  if (w.track_energy) {
    CsvWriter energy({"t[r0/c]", "energy[arb]"});
    for (std::size_t k = 0; k < r.times.size(); ++k) energy.row({r.times[k], r.energy[k]});
    out.write("energy.csv", energy.str());
  }

  ojson j;
  j["schema"] = "gordon-wave/1";
  j["epsilon"] = eps;
  j["cells"] = grid.n_cells;
  j["dr"] = quantity(grid.dr(), "r0");
  j["dt"] = quantity(r.dt, "r0/c");
  j["steps"] = r.steps;
  j["t_final"] = quantity(r.t_final, "r0/c");
  j["max_speed"] = quantity(coeffs.max_speed, "c");
  j["sponge_width"] = quantity(grid.sponge_width, "r0");
  ojson peaks = ojson::array();
  for (std::size_t p = 0; p < r.probe_r.size(); ++p) {
    double peak = 0.0;
    for (double v : r.probe_phi[p]) peak = std::max(peak, std::abs(v));
    peaks.push_back({{"r", r.probe_r[p]}, {"max_abs_phi", peak}});
  }
  j["probes"] = peaks;
  out.write("wave.json", dump(j));
  summary = fmt::format("{} steps of dt = {:.6g} on {} cells", r.steps, r.dt, grid.n_cells);
}

void run_dispersion(const Scenario& s, OutputDir& out, std::string& summary) {
  const MediumModel& m = *s.medium;
  const int n_max = s.dispersion.max_terms;
  CsvWriter csv({"omega[c/r0]", "order[1]", "eps_truncated[1]", "eps_dispersive[1]", "abs_error[1]"});
  ojson rows = ojson::array();
  for (double w : s.dispersion.omega) {
    const double exact = dispersive_permittivity(m, w);
    ojson errs = ojson::array();
    for (int n = 0; n <= n_max; ++n) {
      const double t = truncated_permittivity(m, w, n);
      csv.row({w, static_cast<double>(n), t, exact, std::abs(exact - t)});
      errs.push_back(std::abs(exact - t));
    }
    rows.push_back({{"omega", w}, {"eps_dispersive", exact}, {"abs_error_by_order", errs}});
  }
  out.write("dispersion.csv", csv.str());
  ojson j;
  j["schema"] = "gordon-dispersion/1";
  j["static_epsilon"] = static_permittivity(m);
  j["max_terms"] = n_max;
  j["frequencies"] = rows;
  out.write("dispersion.json", dump(j));
  summary = fmt::format("{} frequencies, orders 0..{}", s.dispersion.omega.size(), n_max);
}

void run_spectrum(const Scenario& s, OutputDir& out, std::string& summary) {
  const HorizonReport h = analyze_horizon(*s.flow, s.epsilon(), s.length_scale_m);
  if (h.kind == HorizonKind::none) throw NoHorizonError("flow has no horizon for this permittivity");
  const double omega_t = si::k_boltzmann * h.temperature / si::hbar;
  const double omega_max = s.spectrum.omega_max_factor * omega_t;
  std::vector<double> omega(s.spectrum.points);
  for (std::size_t i = 0; i < omega.size(); ++i)
    omega[i] = omega_max * static_cast<double>(i + 1) / static_cast<double>(omega.size());
  const std::vector<double> n = planck_spectrum(h.temperature, omega);
  CsvWriter csv({"omega[rad/s]", "occupation[1]"});
  for (std::size_t i = 0; i < omega.size(); ++i) csv.row({omega[i], n[i]});
  out.write("spectrum.csv", csv.str());
  out.write("horizon.json", dump(horizon_json(h, s.length_scale_m)));
  summary = fmt::format("T = {:.6g} K, {} frequencies up to {:.6g} rad/s", h.temperature,
                        omega.size(), omega_max);
}

void log_line(const RunSettings& settings, const std::string& line) {
  if (settings.log && !settings.quiet) *settings.log << line << '\n';
}

} // namespace

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e))
    return kValidation;
  if (dynamic_cast<const IoError*>(&e)) return kIo;
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return kIo;
  return kNumerical;
}

RunReport run_scenario(const Scenario& input, const RunSettings& settings) {
  Scenario s = input;
  if (settings.seed) s.seed = *settings.seed;
  const std::string dir = settings.output_dir.value_or(s.output_dir);

  RunReport report;
  try {
    OutputDir out(dir);
    std::string summary;
    switch (s.task) {
    case Task::metric: run_metric(s, out, summary); break;
    case Task::horizon: run_horizon(s, out, summary); break;
    case Task::geodesic: run_geodesic(s, out, summary); break;
    case Task::wave: run_wave(s, out, summary); break;
    case Task::dispersion: run_dispersion(s, out, summary); break;
    case Task::spectrum: run_spectrum(s, out, summary); break;
    }
    auto doc = ojson::parse(s.canonical);
    doc["seed"] = s.seed;
    out.write("scenario.json", dump(doc));
    out.write_manifest();
    report.files = out.records();
    log_line(settings, fmt::format("{}: {}", to_string(s.task), summary));
  } catch (const std::exception& e) {
    report.exit_code = exit_code_for(e);
    report.diagnostic = fmt::format("{}: {}", to_string(s.task), e.what());
  }
  return report;
}

RunReport run_sweep(const std::string& sweep_path, const RunSettings& settings) {
  RunReport report;
  struct Entry {
    std::string name;
    std::optional<Scenario> scenario;
  };
  std::vector<Entry> entries;
  std::vector<Issue> issues;
  std::string out_dir = settings.output_dir.value_or("out");

  try {
    const std::string text = read_text_file(sweep_path);
    ojson doc;
    try {
      doc = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
      throw ParseError(fmt::format("{}: {}", sweep_path, e.what()), 0, 0);
    }
    if (!doc.is_object()) throw ValidationError(std::vector<Issue>{{"<root>", "must be an object"}});
    for (const auto& item : doc.items())
      if (item.key() != "schema" && item.key() != "scenarios" && item.key() != "output_dir")
        issues.push_back({item.key(), "unknown field"});
    if (doc.value("schema", std::string()) != kSweepSchema)
      issues.push_back({"schema", fmt::format("must be \"{}\"", kSweepSchema)});
    if (!settings.output_dir && doc.contains("output_dir") && doc["output_dir"].is_string())
      out_dir = doc["output_dir"].get<std::string>();
    const auto base = std::filesystem::path(sweep_path).parent_path();
    if (!doc.contains("scenarios") || !doc["scenarios"].is_array() || doc["scenarios"].empty()) {
      issues.push_back({"scenarios", "must be a non-empty array"});
    } else {
      const auto& list = doc["scenarios"];
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = fmt::format("scenarios[{}]", i);
        const auto& e = list[i];
        Entry entry{fmt::format("scenario_{:03d}", i), std::nullopt};
        std::string text_i;
        if (e.is_string()) {
          text_i = read_text_file((base / e.get<std::string>()).string());
        } else if (e.is_object() && e.contains("scenario") && e["scenario"].is_object()) {
          text_i = e["scenario"].dump();
          if (e.contains("name") && e["name"].is_string()) entry.name = e["name"].get<std::string>();
          for (const auto& k : e.items())
            if (k.key() != "name" && k.key() != "scenario") issues.push_back({path + "." + k.key(), "unknown field"});
        } else if (e.is_object() && e.contains("path") && e["path"].is_string()) {
          text_i = read_text_file((base / e["path"].get<std::string>()).string());
          if (e.contains("name") && e["name"].is_string()) entry.name = e["name"].get<std::string>();
          for (const auto& k : e.items())
            if (k.key() != "name" && k.key() != "path") issues.push_back({path + "." + k.key(), "unknown field"});
        } else {
          issues.push_back({path, "must be a file path or an object with `scenario` or `path`"});
          continue;
        }
        try {
          entry.scenario = parse_scenario(text_i);
        } catch (const ValidationError& v) {
          for (const auto& is : v.issues()) issues.push_back({path + "." + is.path, is.message});
        } catch (const ParseError& p) {
          issues.push_back({path, p.what()});
        }
        entries.push_back(std::move(entry));
      }
      std::vector<std::string> names;
      for (const auto& e : entries) names.push_back(e.name);
      std::sort(names.begin(), names.end());
      if (std::adjacent_find(names.begin(), names.end()) != names.end())
        issues.push_back({"scenarios", "entry names must be unique"});
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
  } catch (const std::exception& e) {
    report.exit_code = exit_code_for(e);
    report.diagnostic = fmt::format("sweep: {}", e.what());
    return report;
  }

  std::vector<RunReport> results(entries.size());
  std::atomic<std::size_t> next{0};
  {
    const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(entries.size())));
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
          RunSettings sub = settings;
          sub.output_dir = (std::filesystem::path(out_dir) / entries[i].name).string();
          sub.log = nullptr;
          results[i] = run_scenario(*entries[i].scenario, sub);
        }
      });
  }

  try {
    OutputDir out(out_dir);
    ojson list = ojson::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const RunReport& r = results[i];
      out.adopt(entries[i].name, r.files);
      list.push_back({{"name", entries[i].name},
                      {"task", to_string(entries[i].scenario->task)},
                      {"exit_code", r.exit_code},
                      {"diagnostic", r.diagnostic}});
      report.exit_code = std::max(report.exit_code, r.exit_code);
      if (!r.diagnostic.empty()) {
        if (!report.diagnostic.empty()) report.diagnostic += '\n';
        report.diagnostic += fmt::format("{}: {}", entries[i].name, r.diagnostic);
      }
      log_line(settings, fmt::format("{}: exit {}", entries[i].name, r.exit_code));
    }
    out.write("sweep.json", dump(ojson{{"schema", "gordon-sweep-report/1"}, {"scenarios", list}}));
    out.write_manifest();
    report.files = out.records();
  } catch (const std::exception& e) {
    report.exit_code = std::max(report.exit_code, exit_code_for(e));
    report.diagnostic = fmt::format("sweep: {}", e.what());
  }
  return report;
}

} // namespace gordon::cli
