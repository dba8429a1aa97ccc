#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qfc/scenario.hpp"

namespace {

struct CommonOpts {
  std::string scenario_file;
  std::string preset_name;
  std::string out_dir;
  long grid = 0;
  std::string form;
  unsigned seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--scenario", o.scenario_file, "scenario file (# scenario v1)");
  cmd->add_option("--preset", o.preset_name, "preset name (see `qfc preset --list`)");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--grid", o.grid, "override both grid sizes");
  cmd->add_option("--form", o.form, "phasematching form: sinc | gauss");
  cmd->add_option("--seed", o.seed, "seed for randomized property sweeps");
}

qfc::Scenario make_scenario(const CommonOpts& o) {
  if (!o.scenario_file.empty() && !o.preset_name.empty())
    throw CLI::ValidationError("--scenario and --preset are exclusive");
  qfc::Scenario s = !o.scenario_file.empty() ? qfc::load_scenario(o.scenario_file)
                    : !o.preset_name.empty() ? qfc::preset(o.preset_name)
                                             : qfc::preset("fig3b");
  if (!o.out_dir.empty()) s.output_dir = o.out_dir;
  if (o.grid > 0) s.grid_input = s.grid_output = o.grid;
  if (!o.form.empty()) s.form = o.form;
  if (o.seed != 0) s.seed = o.seed;
  return s;
}

int run_with(const CommonOpts& o, const std::string& analysis) {
  qfc::Scenario s;
  try {
    s = make_scenario(o);
    if (!analysis.empty()) {
      s.analyses = {"design"};
      if (analysis != "design") s.analyses.push_back(analysis);
    }
    s.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  return qfc::run(s, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"engineered quantum frequency conversion in chi(2) waveguides"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string analysis_for_sub;

  auto* run_cmd = app.add_subcommand("run", "run every analysis a scenario requests");
  add_common(run_cmd, opts);

  for (const char* name : {"design", "jsa", "schmidt", "efficiency", "modematch",
                           "rigorous"}) {
    auto* c = app.add_subcommand(
        name, std::string("run the ") + name + " analysis for a scenario/preset");
    add_common(c, opts);
    c->callback([name, &analysis_for_sub] { analysis_for_sub = name; });
  }

  auto* preset_cmd = app.add_subcommand("preset", "materialize a preset scenario file");
  std::string preset_name;
  bool list_presets = false;
  preset_cmd->add_option("name", preset_name, "preset name");
  preset_cmd->add_flag("--list", list_presets, "list preset names");
  preset_cmd->add_option("--out", opts.out_dir, "directory for the scenario file");

  auto* accept_cmd = app.add_subcommand("accept", "run the acceptance suite");
  accept_cmd->add_option("--out", opts.out_dir, "artifact directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (preset_cmd->parsed()) {
      if (list_presets) {
        for (const auto& n : qfc::preset_names()) std::cout << n << '\n';
        return 0;
      }
      if (preset_name.empty()) {
        std::cerr << "config error: preset name required (or --list)\n";
        return 2;
      }
      const qfc::Scenario s = qfc::preset(preset_name);
      const auto dir = opts.out_dir.empty() ? std::filesystem::path(".")
                                            : std::filesystem::path(opts.out_dir);
      std::filesystem::create_directories(dir);
      const auto path = dir / (preset_name + ".scenario");
      qfc::save_scenario(path.string(), s);
      std::cout << path.string() << '\n';
      return 0;
    }
    if (accept_cmd->parsed()) {
      return qfc::run_acceptance(std::cout, opts.out_dir) ? 0 : 4;
    }
    if (run_cmd->parsed()) return run_with(opts, "");
    return run_with(opts, analysis_for_sub);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
