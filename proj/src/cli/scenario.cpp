#include "gordon/cli/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

namespace gordon::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Task, const char*>, 6> kTasks{{
    {Task::metric, "metric"},
    {Task::horizon, "horizon"},
    {Task::geodesic, "geodesic"},
    {Task::wave, "wave"},
    {Task::dispersion, "dispersion"},
    {Task::spectrum, "spectrum"},
}};

std::string join_issues(const std::vector<Issue>& issues) {
  std::string s = fmt::format("{} validation error(s)", issues.size());
  for (const auto& i : issues) s += fmt::format("\n  {}: {}", i.path, i.message);
  return s;
}

// Collects issues while walking one JSON object; unknown keys are reported
// by finish().
class Block {
public:
  Block(const json* j, std::string path, std::vector<Issue>& issues)
      : j_(j), path_(std::move(path)), issues_(issues) {
    if (j_ && !j_->is_object()) {
      fail("", "must be an object");
      j_ = nullptr;
    }
  }

  bool present() const noexcept { return j_ != nullptr; }

  std::string at(std::string_view key) const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  void fail(std::string_view key, std::string message) {
    issues_.push_back({at(key), std::move(message)});
  }

  const json* find(std::string_view key) {
    if (!j_) return nullptr;
    used_.emplace(key);
    auto it = j_->find(key);
    return it == j_->end() ? nullptr : &*it;
  }

  bool has(std::string_view key) const { return j_ && j_->contains(key); }

  std::optional<double> real(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      fail(key, "must be a number");
      return std::nullopt;
    }
    const double x = v->get<double>();
    if (!std::isfinite(x)) {
      fail(key, "must be finite");
      return std::nullopt;
    }
    return x;
  }

  double real_or(std::string_view key, double fallback) { return real(key).value_or(fallback); }

  std::optional<double> required_real(std::string_view key) {
    if (j_ && !has(key)) fail(key, "is required");
    return real(key);
  }

  std::optional<std::uint64_t> count(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
      fail(key, "must be a non-negative integer");
      return std::nullopt;
    }
    return v->get<std::uint64_t>();
  }

  std::optional<std::string> text(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      fail(key, "must be a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<bool> flag(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      fail(key, "must be true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  std::optional<std::vector<double>> reals(std::string_view key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_array()) {
      fail(key, "must be an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    bool ok = true;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      if (!e.is_number() || !std::isfinite(e.get<double>())) {
        issues_.push_back({fmt::format("{}[{}]", at(key), i), "must be a finite number"});
        ok = false;
      } else {
        out.push_back(e.get<double>());
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

  void finish() {
    if (!j_) return;
    for (const auto& item : j_->items())
      if (!used_.contains(item.key())) fail(item.key(), "unknown field");
  }

private:
  const json* j_;
  std::string path_;
  std::vector<Issue>& issues_;
  std::set<std::string, std::less<>> used_;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  // nlohmann reports the 1-based offset of the offending byte.
  const std::size_t end = std::min(text.size(), byte > 0 ? byte - 1 : 0);
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::optional<MediumModel> parse_medium(Block& b, std::vector<Issue>& issues) {
  const bool has_eps = b.has("epsilon");
  const bool has_modes = b.has("modes");
  if (has_eps == has_modes) {
    b.fail("", "needs exactly one of `epsilon` or `modes`");
    b.find("epsilon");
    b.find("modes");
    b.find("resonance_guard");
    return std::nullopt;
  }
  if (has_eps) {
    const auto eps = b.real("epsilon");
    if (b.has("resonance_guard")) b.fail("resonance_guard", "only applies to `modes`");
    b.find("resonance_guard");
    if (!eps) return std::nullopt;
    if (!(*eps >= 1.0)) {
      b.fail("epsilon", fmt::format("must be >= 1 (got {})", *eps));
      return std::nullopt;
    }
    return MediumModel::direct(*eps);
  }

  const double guard = b.real_or("resonance_guard", MediumModel::kDefaultResonanceGuard);
  if (!(guard > 0.0 && guard < 1.0)) b.fail("resonance_guard", "must lie in (0, 1)");
  const json* modes = b.find("modes");
  if (!modes->is_array() || modes->empty()) {
    b.fail("modes", "must be a non-empty array of {chi, omega} objects");
    return std::nullopt;
  }
  std::vector<OscillatorMode> out;
  const std::size_t before = issues.size();
  for (std::size_t i = 0; i < modes->size(); ++i) {
    Block m(&(*modes)[i], fmt::format("{}[{}]", b.at("modes"), i), issues);
    if (!m.present()) continue;
    const auto chi = m.required_real("chi");
    const auto omega = m.required_real("omega");
    m.finish();
    if (chi && *chi < 0.0) m.fail("chi", fmt::format("must be >= 0 (got {})", *chi));
    if (omega && !(*omega > 0.0)) m.fail("omega", fmt::format("must be > 0 (got {})", *omega));
    if (chi && omega) out.push_back({*chi, *omega});
  }
  if (issues.size() != before || !(guard > 0.0 && guard < 1.0)) return std::nullopt;
  return MediumModel::from_modes(std::move(out), guard);
}

std::optional<FlowProfile> parse_flow(Block& b, std::vector<Issue>& issues) {
  const std::size_t before = issues.size();
  const auto family = b.text("family");
  if (!b.has("family")) b.fail("family", "is required (power_law, tanh_step or tabulated)");

  FlowDirection dir = FlowDirection::inward;
  if (const auto d = b.text("direction")) {
    if (*d == "inward") dir = FlowDirection::inward;
    else if (*d == "outward") dir = FlowDirection::outward;
    else b.fail("direction", fmt::format("unknown direction '{}' (allowed: inward, outward)", *d));
  }

  const auto check_domain = [&](std::optional<double> lo, std::optional<double> hi) {
    if (lo && !(*lo > 0.0)) b.fail("r_min", "must be > 0");
    if (lo && hi && !(*hi > *lo)) b.fail("r_max", "must be > r_min");
  };

  if (family == "power_law") {
    const auto beta0 = b.required_real("beta0");
    const double r0 = b.real_or("r0", 1.0);
    const double p = b.real_or("exponent", 1.0);
    const auto lo = b.required_real("r_min");
    const auto hi = b.required_real("r_max");
    if (beta0 && *beta0 < 0.0) b.fail("beta0", "must be >= 0");
    if (!(r0 > 0.0)) b.fail("r0", "must be > 0");
    check_domain(lo, hi);
    b.finish();
    if (issues.size() != before) return std::nullopt;
    try {
      return FlowProfile::power_law(*beta0, r0, p, dir, *lo, *hi);
    } catch (const Error& e) {
      b.fail("", e.what());
    }
  } else if (family == "tanh_step") {
    const auto far = b.required_real("beta_far");
    const auto near = b.required_real("beta_near");
    const auto center = b.required_real("r_center");
    const auto width = b.required_real("width");
    const auto lo = b.required_real("r_min");
    const auto hi = b.required_real("r_max");
    if (width && !(*width > 0.0)) b.fail("width", "must be > 0");
    check_domain(lo, hi);
    b.finish();
    if (issues.size() != before) return std::nullopt;
    try {
      return FlowProfile::tanh_step(*far, *near, *center, *width, dir, *lo, *hi);
    } catch (const Error& e) {
      b.fail("", e.what());
    }
  } else if (family == "tabulated") {
    const auto r = b.reals("r");
    const auto beta = b.reals("beta");
    if (!b.has("r")) b.fail("r", "is required");
    if (!b.has("beta")) b.fail("beta", "is required");
    if (r && beta && r->size() != beta->size()) b.fail("beta", "must have as many entries as `r`");
    if (r && r->size() < 2) b.fail("r", "needs at least two samples");
    b.finish();
    if (issues.size() != before) return std::nullopt;
    try {
      return FlowProfile::tabulated(*r, *beta, dir);
    } catch (const Error& e) {
      b.fail("", e.what());
    }
  } else {
    if (family) b.fail("family", fmt::format("unknown family '{}' (allowed: power_law, tanh_step, tabulated)", *family));
    for (const char* k : {"beta0", "r0", "exponent", "beta_far", "beta_near", "r_center", "width",
                          "r", "beta", "r_min", "r_max"})
      b.find(k);
    b.finish();
  }
  return std::nullopt;
}

void parse_metric(Block& b, MetricParams& p) {
  if (auto v = b.count("samples")) {
    if (*v < 2) b.fail("samples", "must be >= 2");
    p.samples = *v;
  }
  if (auto v = b.count("random_checks")) p.random_checks = *v;
  b.finish();
}

void parse_geodesic(Block& b, GeodesicParams& p) {
  if (auto v = b.count("inside")) p.inside = *v;
  if (auto v = b.count("outside")) p.outside = *v;
  if (p.inside + p.outside == 0) b.fail("", "needs at least one launch radius");
  p.lambda_max = b.real_or("lambda_max", p.lambda_max);
  if (!(p.lambda_max > 0.0)) b.fail("lambda_max", "must be > 0");
  p.initial_step = b.real_or("initial_step", p.initial_step);
  if (!(p.initial_step > 0.0)) b.fail("initial_step", "must be > 0");
  p.drift_tolerance = b.real_or("drift_tolerance", p.drift_tolerance);
  if (!(p.drift_tolerance > 0.0)) b.fail("drift_tolerance", "must be > 0");
  if (auto v = b.flag("write_trajectories")) p.write_trajectories = *v;
  if (auto v = b.count("trajectory_stride")) {
    if (*v < 1) b.fail("trajectory_stride", "must be >= 1");
    p.trajectory_stride = *v;
  }
  b.finish();
}

void parse_wave(Block& b, WaveParams& p, const std::optional<FlowProfile>& flow,
                std::vector<Issue>& issues) {
  const std::size_t before = issues.size();
  if (auto v = b.count("cells")) {
    if (*v < 16) b.fail("cells", "must be >= 16");
    p.cells = *v;
  }
  p.cfl = b.real_or("cfl", p.cfl);
  if (!(p.cfl > 0.0 && p.cfl <= 1.0)) b.fail("cfl", "must lie in (0, 1]");
  p.sponge_fraction = b.real_or("sponge_fraction", p.sponge_fraction);
  if (!(p.sponge_fraction >= 0.0 && p.sponge_fraction < 0.5))
    b.fail("sponge_fraction", "must lie in [0, 0.5)");
  p.sponge_strength = b.real_or("sponge_strength", p.sponge_strength);
  if (!(p.sponge_strength >= 0.0)) b.fail("sponge_strength", "must be >= 0");

  const auto lo = b.real("r_min");
  const auto hi = b.real("r_max");
  if (flow) {
    p.r_min = lo.value_or(flow->r_min());
    p.r_max = hi.value_or(flow->r_max());
    if (!flow->contains(p.r_min)) b.fail("r_min", "lies outside the flow domain");
    if (!flow->contains(p.r_max)) b.fail("r_max", "lies outside the flow domain");
  }
  if (!(p.r_max > p.r_min)) b.fail("r_max", "must be > r_min");

  if (const auto t = b.required_real("t_final")) {
    if (*t < 0.0) b.fail("t_final", "must be >= 0");
    p.t_final = *t;
  }

  if (!b.has("packet")) b.fail("packet", "is required");
  Block pk(b.find("packet"), b.at("packet"), issues);
  if (pk.present()) {
    const auto c = pk.required_real("center");
    const auto w = pk.required_real("width");
    p.packet.wavenumber = pk.real_or("wavenumber", 0.0);
    if (const auto d = pk.text("direction")) {
      if (*d == "outgoing") p.packet.direction = RayBranch::outgoing;
      else if (*d == "ingoing") p.packet.direction = RayBranch::ingoing;
      else pk.fail("direction", fmt::format("unknown direction '{}' (allowed: outgoing, ingoing)", *d));
    }
    pk.finish();
    if (w && !(*w > 0.0)) pk.fail("width", "must be > 0");
    if (c && w && *w > 0.0 && issues.size() == before) {
      p.packet.center = *c;
      p.packet.width = *w;
      const double sponge = p.sponge_fraction * (p.r_max - p.r_min);
      if (*c - 4.0 * *w < p.r_min + sponge || *c + 4.0 * *w > p.r_max - sponge)
        pk.fail("", "center +- 4 width must lie inside the physical (non-sponge) region");
    }
  }

  if (auto probes = b.reals("probes")) {
    for (std::size_t i = 0; i < probes->size(); ++i)
      if ((*probes)[i] < p.r_min || (*probes)[i] > p.r_max)
        issues.push_back({fmt::format("{}[{}]", b.at("probes"), i), "lies outside the wave grid"});
    p.probes = *probes;
  }
  if (auto v = b.count("output_every")) {
    if (*v < 1) b.fail("output_every", "must be >= 1");
    p.output_every = *v;
  }
  if (auto v = b.count("snapshot_every")) p.snapshot_every = *v;
  if (auto v = b.flag("track_energy")) p.track_energy = *v;
  b.finish();
}

void parse_dispersion(Block& b, DispersionParams& p, const std::optional<MediumModel>& medium,
                      std::vector<Issue>& issues) {
  if (!b.has("omega")) b.fail("omega", "is required");
  if (auto omega = b.reals("omega")) {
    if (omega->empty()) b.fail("omega", "must not be empty");
    const double limit = medium ? medium->min_frequency() : INFINITY;
    for (std::size_t i = 0; i < omega->size(); ++i) {
      const double w = (*omega)[i];
      if (w < 0.0 || !(w < limit))
        issues.push_back({fmt::format("{}[{}]", b.at("omega"), i),
                          fmt::format("must lie in [0, {}) where the expansion converges", limit)});
    }
    p.omega = *omega;
  }
  if (auto v = b.count("max_terms")) {
    if (*v > 200) b.fail("max_terms", "must be <= 200");
    p.max_terms = static_cast<int>(std::min<std::uint64_t>(*v, 200));
  }
  b.finish();
}

void parse_spectrum(Block& b, SpectrumParams& p) {
  if (auto v = b.count("points")) {
    if (*v < 1) b.fail("points", "must be >= 1");
    p.points = *v;
  }
  p.omega_max_factor = b.real_or("omega_max_factor", p.omega_max_factor);
  if (!(p.omega_max_factor > 0.0)) b.fail("omega_max_factor", "must be > 0");
  b.finish();
}

} // namespace

const char* to_string(Task task) noexcept {
  for (const auto& [t, name] : kTasks)
    if (t == task) return name;
  return "?";
}

std::optional<Task> parse_task(std::string_view name) noexcept {
  for (const auto& [t, n] : kTasks)
    if (name == n) return t;
  return std::nullopt;
}

std::string task_list() {
  std::string s;
  for (const auto& [t, name] : kTasks) s += (s.empty() ? "" : ", ") + std::string(name);
  return s;
}

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

Scenario parse_scenario(std::string_view text, std::optional<Task> forced) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    if (auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(fmt::format("line {}, column {}: {}", line, col, msg), line, col);
  }

  std::vector<Issue> issues;
  Scenario s;
  Block root(&doc, "", issues);
  if (!root.present()) throw ValidationError(std::move(issues));

  const auto schema = root.text("schema");
  if (!root.has("schema")) root.fail("schema", fmt::format("is required (\"{}\")", kScenarioSchema));
  else if (schema && *schema != kScenarioSchema)
    root.fail("schema", fmt::format("unsupported schema '{}' (expected '{}')", *schema, kScenarioSchema));

  std::optional<Task> task = forced;
  if (const auto name = root.text("task")) {
    const auto t = parse_task(*name);
    if (!t) root.fail("task", fmt::format("unknown task '{}' (allowed: {})", *name, task_list()));
    else if (forced && *t != *forced)
      root.fail("task", fmt::format("is '{}' but the command requested '{}'", *name, to_string(*forced)));
    else task = t;
  } else if (!forced && !root.has("task")) {
    root.fail("task", fmt::format("is required (allowed: {})", task_list()));
  }
  if (task) s.task = *task;

  s.length_scale_m = root.real_or("length_scale_m", s.length_scale_m);
  if (!(s.length_scale_m > 0.0)) root.fail("length_scale_m", "must be > 0");
  if (auto v = root.count("seed")) s.seed = *v;
  if (auto v = root.text("output_dir")) {
    if (v->empty()) root.fail("output_dir", "must not be empty");
    s.output_dir = *v;
  }

  if (!root.has("medium")) root.fail("medium", "is required");
  Block medium(root.find("medium"), "medium", issues);
  if (medium.present()) {
    s.medium = parse_medium(medium, issues);
    medium.finish();
  }

  const bool needs_flow = task && *task != Task::dispersion;
  if (needs_flow && !root.has("flow"))
    root.fail("flow", fmt::format("is required for the {} task", to_string(*task)));
  Block flow(root.find("flow"), "flow", issues);
  if (flow.present()) s.flow = parse_flow(flow, issues);

  // Task blocks are optional; each is validated whenever it is present and the
  // one belonging to the selected task is checked against the other blocks.
  const auto task_block = [&](const char* key, Task t, auto&& parse) {
    const json* j = root.find(key);
    Block b(j, key, issues);
    if (task == t && !j && (t == Task::wave || t == Task::dispersion))
      root.fail(key, fmt::format("is required for the {} task", key));
    if (b.present()) parse(b);
  };
  task_block("metric", Task::metric, [&](Block& b) { parse_metric(b, s.metric); });
  task_block("geodesic", Task::geodesic, [&](Block& b) { parse_geodesic(b, s.geodesic); });
  task_block("wave", Task::wave, [&](Block& b) { parse_wave(b, s.wave, s.flow, issues); });
  task_block("dispersion", Task::dispersion,
             [&](Block& b) { parse_dispersion(b, s.dispersion, s.medium, issues); });
  task_block("spectrum", Task::spectrum, [&](Block& b) { parse_spectrum(b, s.spectrum); });

  if (task == Task::dispersion && s.medium && s.medium->is_direct())
    root.fail("medium", "the dispersion task needs an oscillator medium (`modes`)");

  root.finish();
  if (!issues.empty()) throw ValidationError(std::move(issues));

  if (forced && !doc.contains("task")) doc["task"] = to_string(*forced);
  s.canonical = doc.dump(2) + "\n";
  return s;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ss.str();
}

Scenario load_scenario(const std::string& path, std::optional<Task> forced) {
  return parse_scenario(read_text_file(path), forced);
}

} // namespace gordon::cli
