#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gordon/cli/runner.hpp"
#include "gordon/cli/scenario.hpp"

namespace {

struct Flags {
  std::string scenario;
  std::string out;
  std::uint64_t seed = 0;
  bool quiet = false;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Flags& f,
                      bool with_run_flags = true) {
  CLI::App* cmd = app.add_subcommand(name, help);
  cmd->add_option("--scenario", f.scenario, "scenario JSON file")->required();
  if (with_run_flags) {
    cmd->add_option("--out", f.out, "output directory (overrides output_dir)");
    cmd->add_option("--seed", f.seed, "random seed (overrides seed)");
  }
  cmd->add_flag("--quiet", f.quiet, "suppress progress output");
  return cmd;
}

int report_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << '\n';
  return gordon::cli::exit_code_for(e);
}

} // namespace

int main(int argc, char** argv) {
  using namespace gordon::cli;

  CLI::App app{"Dielectric analogue-gravity toolkit: Gordon metric, horizons, rays and waves"};
  app.require_subcommand(1);
  Flags f;
  for (Task t : {Task::metric, Task::horizon, Task::geodesic, Task::wave, Task::dispersion,
                 Task::spectrum})
    add_command(app, to_string(t), std::string("run the ") + to_string(t) + " task", f);
  CLI::App* sweep = add_command(app, "sweep", "run every scenario of a sweep file concurrently", f);
  CLI::App* validate = add_command(app, "validate", "check a scenario file without running it", f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidation;
  }

  CLI::App* cmd = app.get_subcommands().front();
  RunSettings settings;
  if (!f.out.empty()) settings.output_dir = f.out;
  if (cmd != validate && cmd->count("--seed") > 0) settings.seed = f.seed;
  settings.quiet = f.quiet;
  settings.log = &std::cout;

  try {
    if (cmd == validate) {
      const Scenario s = load_scenario(f.scenario);
      if (!f.quiet) std::cout << "valid " << to_string(s.task) << " scenario\n";
      return kSuccess;
    }
    RunReport r;
    if (cmd == sweep) {
      r = run_sweep(f.scenario, settings);
    } else {
      const Scenario s = load_scenario(f.scenario, parse_task(cmd->get_name()));
      r = run_scenario(s, settings);
    }
    if (r.exit_code != kSuccess) std::cerr << "error: " << r.diagnostic << '\n';
    return r.exit_code;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}
