#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qfc/jsa.hpp"
#include "qfc/types.hpp"

namespace qfc {

/// Scenario file contents (see `# scenario v1` format). Zero-valued pump
/// wavelength / peak power mean "resolve automatically" (group-velocity
/// matching and the unit-efficiency power condition respectively).
struct Scenario {
  std::string name = "scenario";
  Flavor flavor = Flavor::sfg;
  double input_wavelength_nm = 1550.0;
  Axis input_axis = Axis::ordinary;
  double pump_wavelength_nm = 0.0;  // 0 = group-velocity matched
  Axis pump_axis = Axis::extraordinary;
  Axis output_axis = Axis::ordinary;
  double length_mm = 10.0;
  double temperature_c = 190.0;
  std::string poling = "auto";  // auto | none | signed period in um
  double d_eff_pm_v = 1.6;
  double a_eff_um2 = 64.0;
  std::string pump_shape = "gaussian";  // gaussian | hg<order>
  double pump_duration_fs = 300.0;
  double pump_peak_power_w = 0.0;  // 0 = power for theta = pi/2
  double rep_rate_mhz = 76.0;
  Index grid_input = 512;
  Index grid_output = 512;
  std::string form = "sinc";  // sinc | gauss
  std::vector<std::string> analyses;
  std::string output_dir = "out";
  int slices = 200;
  double scale_min = 0.1;
  double scale_max = 2.0;
  double mismatch_ratio = 2.0;
  int max_modes = 16;
  unsigned seed = 12345;
  std::string input_material, pump_material, output_material;  // optional files

  void validate() const;
};

/// Names: fig3a, fig3b, fig4_qpg, fig4_qps, fig5_matched, fig5_mismatched,
/// fig6_gvm, perf_section, appendix_rigorous (aliases: qpg_design,
/// timeorder_appendix).
Scenario preset(const std::string& name);
std::vector<std::string> preset_names();

Scenario load_scenario(const std::string& path);
void save_scenario(const std::string& path, const Scenario& s);

/// Resolved physical process plus the design byproducts worth reporting.
struct ResolvedDesign {
  ProcessSpec process;
  double gvm_pump_wavelength_m = 0.0;
  double poling_period_m = 0.0;  // signed
  double theta = 0.0;
  double required_peak_power_w = 0.0;
  double average_power_w = 0.0;
  double normalization = 0.0;
  double n_pump = 0.0, n_input = 0.0, n_output = 0.0;
};

ResolvedDesign resolve(const Scenario& s);

/// Runs every requested analysis, writes artifacts and manifest.json into
/// output_dir. Returns a process exit code (0 ok, 2 config, 3 numeric).
int run(const Scenario& s, std::ostream& log);

/// Acceptance suite: prints one pass/fail line per criterion, returns true
/// when all pass. Artifacts go under out_dir when non-empty.
bool run_acceptance(std::ostream& os, const std::string& out_dir = "");

}  // namespace qfc
