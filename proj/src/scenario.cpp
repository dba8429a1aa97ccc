#include "qfc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qfc/conversion.hpp"
#include "qfc/io.hpp"
#include "qfc/modematch.hpp"
#include "qfc/schmidt.hpp"
#include "qfc/timeorder.hpp"

namespace qfc {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using constants::c0;
using constants::pi;

namespace {

const std::vector<std::string> kAnalyses = {
    "design",      "jsa",       "schmidt",  "efficiency",
    "modematch",   "correspondence", "gvm_sweep", "rigorous"};

PumpShape parse_pump_shape(const std::string& shape, double duration_fs) {
  PumpShape p;
  p.fwhm_duration_s = duration_fs * 1e-15;
  if (shape == "gaussian") {
    p.kind = PumpShape::Kind::gaussian;
  } else if (shape.rfind("hg", 0) == 0) {
    p.kind = PumpShape::Kind::hermite_gauss;
    p.order = std::stoi(shape.substr(2));
  } else {
    throw std::invalid_argument("unknown pump shape " + shape);
  }
  return p;
}

}  // namespace

void Scenario::validate() const {
  if (!(input_wavelength_nm > 0)) throw std::invalid_argument("input wavelength must be positive");
  if (!(length_mm > 0)) throw std::invalid_argument("length must be positive");
  if (!(pump_duration_fs > 0)) throw std::invalid_argument("pump duration must be positive");
  if (grid_input < 8 || grid_output < 8) throw std::invalid_argument("grids need >= 8 samples");
  if (form != "sinc" && form != "gauss")
    throw std::invalid_argument("form must be sinc or gauss");
  if (slices < 1) throw std::invalid_argument("slices must be >= 1");
  parse_pump_shape(pump_shape, pump_duration_fs);
  if (poling != "auto" && poling != "none") std::stod(poling);
  for (const auto& a : analyses)
    if (std::find(kAnalyses.begin(), kAnalyses.end(), a) == kAnalyses.end())
      throw std::invalid_argument("unknown analysis '" + a + "'");
  for (const auto& p : {input_material, pump_material, output_material})
    if (!p.empty() && !fs::exists(p))
      throw std::invalid_argument("material file does not exist: " + p);
}

std::vector<std::string> preset_names() {
  return {"fig3a",        "fig3b",        "fig4_qpg",     "fig4_qps",
          "fig5_matched", "fig5_mismatched", "fig6_gvm",  "perf_section",
          "appendix_rigorous", "qpg_design", "timeorder_appendix"};
}

Scenario preset(const std::string& name) {
  Scenario s;
  s.name = name;
  // common baseline: engineered SFG at 1550 nm in PPLN at 190 C
  s.analyses = {"design", "jsa", "schmidt", "efficiency"};

  if (name == "fig3a") {
    // non-engineered: narrowband pump pinned at 870 nm
    s.pump_wavelength_nm = 870.0;
    s.pump_duration_fs = 3000.0;
  } else if (name == "fig3b" || name == "qpg_design") {
    // group-velocity matched pump, matched duration
  } else if (name == "fig4_qpg") {
    s.pump_shape = "hg1";
    s.pump_peak_power_w = 1.0;
    s.analyses = {"design", "jsa", "schmidt", "correspondence"};
  } else if (name == "fig4_qps") {
    // mirrored DFG: short-wave input, converted up in wavelength to 1550 nm
    s.flavor = Flavor::dfg;
    s.input_wavelength_nm = 0.0;  // resolved below from the QPG design
    s.pump_shape = "hg1";
    s.pump_peak_power_w = 1.0;
    s.analyses = {"design", "jsa", "schmidt", "correspondence"};
  } else if (name == "fig5_matched") {
    s.mismatch_ratio = 1.0;
    s.analyses = {"design", "jsa", "schmidt", "modematch"};
  } else if (name == "fig5_mismatched") {
    s.mismatch_ratio = 2.0;
    s.analyses = {"design", "jsa", "schmidt", "modematch"};
  } else if (name == "fig6_gvm") {
    s.analyses = {"gvm_sweep"};
  } else if (name == "perf_section") {
    s.analyses = {"design"};
  } else if (name == "appendix_rigorous" || name == "timeorder_appendix") {
    s.analyses = {"design", "jsa", "schmidt", "rigorous"};
    s.scale_min = 0.1;
    s.scale_max = 2.0;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return s;
}

namespace {

DispersionModel model_for(Axis axis, double temperature_k, const std::string& file) {
  if (!file.empty()) {
    DispersionModel m = io::load_material(file);
    m.temperature_k = temperature_k;
    return m;
  }
  return axis == Axis::ordinary ? lithium_niobate_ordinary(temperature_k)
                                : lithium_niobate_extraordinary(temperature_k);
}

Axis parse_axis(const std::string& v) {
  if (v == "ordinary") return Axis::ordinary;
  if (v == "extraordinary") return Axis::extraordinary;
  throw std::invalid_argument("unknown axis " + v);
}

}  // namespace

ResolvedDesign resolve(const Scenario& s) {
  s.validate();
  const double t_k = s.temperature_c + 273.15;

  ResolvedDesign d;
  d.process.flavor = s.flavor;
  d.process.length_m = s.length_mm * 1e-3;
  d.process.temperature_k = t_k;
  d.process.d_eff_m_per_v = s.d_eff_pm_v * 1e-12;
  d.process.a_eff_m2 = s.a_eff_um2 * 1e-12;
  d.process.rep_rate_hz = s.rep_rate_mhz * 1e6;
  d.process.pump_shape = parse_pump_shape(s.pump_shape, s.pump_duration_fs);

  d.process.input_model = model_for(s.input_axis, t_k, s.input_material);
  d.process.pump_model = model_for(s.pump_axis, t_k, s.pump_material);
  d.process.output_model = model_for(s.output_axis, t_k, s.output_material);

  // the QPS preset mirrors the QPG design: input at the QPG's output wavelength
  double input_nm = s.input_wavelength_nm;
  if (input_nm == 0.0) {
    Scenario qpg = s;
    qpg.flavor = Flavor::sfg;
    qpg.input_wavelength_nm = 1550.0;
    qpg.analyses.clear();
    const ResolvedDesign base = resolve(qpg);
    input_nm = base.process.output.center_wavelength_m * 1e9;
  }

  d.process.input = {input_nm * 1e-9, s.input_axis, WaveRole::input};
  double pump_m = s.pump_wavelength_nm * 1e-9;
  if (s.pump_wavelength_nm == 0.0) {
    if (s.flavor == Flavor::sfg) {
      pump_m = find_gvm_pump(d.process.input, s.pump_axis, d.process.pump_model,
                             d.process.input_model, {700e-9, 1000e-9});
    } else {
      // DFG: group-velocity match the pump against the energy-conserving output
      const double li = d.process.input.center_wavelength_m;
      auto gap = [&](double lp) {
        const double lo = output_wavelength(Flavor::dfg, li, lp);
        return group_velocity(d.process.pump_model, 2 * pi * c0 / lp) -
               group_velocity(d.process.output_model, 2 * pi * c0 / lo);
      };
      // keep the implied output inside the validity window
      const double lp_lim = std::max(700e-9, 1.02 / (1.0 / li - 1.0 / 1.9e-6));
      double a = lp_lim, b = 1000e-9;
      double ga = gap(a), gb = gap(b);
      if (ga * gb > 0)
        throw std::runtime_error("no group-velocity-matched pump for the DFG design");
      while (b - a > 0.01e-9) {
        const double mid = 0.5 * (a + b);
        const double gm = gap(mid);
        if (ga * gm <= 0) {
          b = mid;
        } else {
          a = mid;
          ga = gm;
        }
      }
      pump_m = 0.5 * (a + b);
    }
    d.gvm_pump_wavelength_m = pump_m;
  }
  d.process.pump = {pump_m, s.pump_axis, WaveRole::pump};
  d.process.output = {output_wavelength(s.flavor, d.process.input.center_wavelength_m, pump_m),
                      s.output_axis, WaveRole::output};

  if (s.poling == "auto") {
    d.process.poling_period_m = 0.0;
  } else if (s.poling == "none") {
    d.process.poling_period_m = std::numeric_limits<double>::infinity();
  } else {
    d.process.poling_period_m = std::stod(s.poling) * 1e-6;
  }
  d.poling_period_m = resolved_poling(d.process);

  // normalization from a medium-size joint spectrum; N is an integral and is
  // insensitive to the grid density here
  d.process.pump_peak_power_w = s.pump_peak_power_w > 0 ? s.pump_peak_power_w : 1.0;
  const auto [gi, go] = default_grids(d.process, 256, 256);
  const PhasematchForm form =
      s.form == "sinc" ? PhasematchForm::sinc : PhasematchForm::gaussian_approx;
  d.normalization = build_jsa(d.process, gi, go, form).normalization;

  try {
    d.required_peak_power_w = required_pump_power(d.process, d.normalization);
    if (s.pump_peak_power_w == 0.0) d.process.pump_peak_power_w = d.required_peak_power_w;
    d.theta = coupling_theta(d.process, d.normalization);
  } catch (const std::domain_error&) {
    // odd-order pump shapes have no peak-power normalization; power analyses
    // are unavailable but the spectral ones remain valid
    d.required_peak_power_w = std::numeric_limits<double>::quiet_NaN();
    d.theta = std::numeric_limits<double>::quiet_NaN();
  }
  d.average_power_w = average_power(d.process.pump_peak_power_w,
                                    d.process.pump_shape.fwhm_duration_s,
                                    d.process.rep_rate_hz);
  d.n_pump = refractive_index(d.process.pump_model, d.process.pump.center_wavelength_m);
  d.n_input = refractive_index(d.process.input_model, d.process.input.center_wavelength_m);
  d.n_output = refractive_index(d.process.output_model, d.process.output.center_wavelength_m);
  return d;
}

namespace {

struct KeyValueFile {
  std::map<std::string, std::string> kv;

  static KeyValueFile parse(const std::string& path, const char* header) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::string line;
    std::getline(f, line);
    if (line.find(header) == std::string::npos)
      throw std::invalid_argument(path + ": expected header '" + header + "'");
    KeyValueFile out;
    while (std::getline(f, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string v) {
        const auto b = v.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = v.find_last_not_of(" \t\r");
        return v.substr(b, e - b + 1);
      };
      out.kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
  }

  bool has(const std::string& k) const { return kv.count(k) > 0; }
  std::string str(const std::string& k, const std::string& dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  }
  double num(const std::string& k, double dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stod(it->second);
  }
};

}  // namespace

Scenario load_scenario(const std::string& path) {
  const KeyValueFile f = KeyValueFile::parse(path, "# scenario v1");
  Scenario s;
  s.name = f.str("name", s.name);
  s.flavor = f.str("flavor", "sfg") == "dfg" ? Flavor::dfg : Flavor::sfg;
  s.input_wavelength_nm = f.num("input_wavelength_nm", s.input_wavelength_nm);
  s.input_axis = parse_axis(f.str("input_axis", "ordinary"));
  s.pump_wavelength_nm = f.num("pump_wavelength_nm", s.pump_wavelength_nm);
  s.pump_axis = parse_axis(f.str("pump_axis", "extraordinary"));
  s.output_axis = parse_axis(f.str("output_axis", "ordinary"));
  s.length_mm = f.num("length_mm", s.length_mm);
  s.temperature_c = f.num("temperature_c", s.temperature_c);
  s.poling = f.str("poling", s.poling);
  s.d_eff_pm_v = f.num("d_eff_pm_v", s.d_eff_pm_v);
  s.a_eff_um2 = f.num("a_eff_um2", s.a_eff_um2);
  s.pump_shape = f.str("pump_shape", s.pump_shape);
  s.pump_duration_fs = f.num("pump_duration_fs", s.pump_duration_fs);
  s.pump_peak_power_w = f.num("pump_peak_power_w", s.pump_peak_power_w);
  s.rep_rate_mhz = f.num("rep_rate_mhz", s.rep_rate_mhz);
  s.grid_input = static_cast<Index>(f.num("grid_input", static_cast<double>(s.grid_input)));
  s.grid_output = static_cast<Index>(f.num("grid_output", static_cast<double>(s.grid_output)));
  s.form = f.str("form", s.form);
  if (f.has("analysis")) {
    s.analyses.clear();
    std::istringstream is(f.str("analysis", ""));
    std::string a;
    while (is >> a) s.analyses.push_back(a);
  }
  s.output_dir = f.str("output_dir", s.output_dir);
  s.slices = static_cast<int>(f.num("slices", s.slices));
  s.scale_min = f.num("scale_min", s.scale_min);
  s.scale_max = f.num("scale_max", s.scale_max);
  s.mismatch_ratio = f.num("mismatch_ratio", s.mismatch_ratio);
  s.max_modes = static_cast<int>(f.num("max_modes", s.max_modes));
  s.seed = static_cast<unsigned>(f.num("seed", s.seed));
  s.input_material = f.str("input_material", "");
  s.pump_material = f.str("pump_material", "");
  s.output_material = f.str("output_material", "");
  s.validate();
  return s;
}

void save_scenario(const std::string& path, const Scenario& s) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  auto d = io::format_double;
  f << "# scenario v1\n";
  f << "name = " << s.name << '\n';
  f << "flavor = " << to_string(s.flavor) << '\n';
  f << "input_wavelength_nm = " << d(s.input_wavelength_nm) << '\n';
  f << "input_axis = " << to_string(s.input_axis) << '\n';
  f << "pump_wavelength_nm = " << d(s.pump_wavelength_nm) << '\n';
  f << "pump_axis = " << to_string(s.pump_axis) << '\n';
  f << "output_axis = " << to_string(s.output_axis) << '\n';
  f << "length_mm = " << d(s.length_mm) << '\n';
  f << "temperature_c = " << d(s.temperature_c) << '\n';
  f << "poling = " << s.poling << '\n';
  f << "d_eff_pm_v = " << d(s.d_eff_pm_v) << '\n';
  f << "a_eff_um2 = " << d(s.a_eff_um2) << '\n';
  f << "pump_shape = " << s.pump_shape << '\n';
  f << "pump_duration_fs = " << d(s.pump_duration_fs) << '\n';
  f << "pump_peak_power_w = " << d(s.pump_peak_power_w) << '\n';
  f << "rep_rate_mhz = " << d(s.rep_rate_mhz) << '\n';
  f << "grid_input = " << s.grid_input << '\n';
  f << "grid_output = " << s.grid_output << '\n';
  f << "form = " << s.form << '\n';
  f << "analysis =";
  for (const auto& a : s.analyses) f << ' ' << a;
  f << '\n';
  f << "output_dir = " << s.output_dir << '\n';
  f << "slices = " << s.slices << '\n';
  f << "scale_min = " << d(s.scale_min) << '\n';
  f << "scale_max = " << d(s.scale_max) << '\n';
  f << "mismatch_ratio = " << d(s.mismatch_ratio) << '\n';
  f << "max_modes = " << s.max_modes << '\n';
  f << "seed = " << s.seed << '\n';
  if (!s.input_material.empty()) f << "input_material = " << s.input_material << '\n';
  if (!s.pump_material.empty()) f << "pump_material = " << s.pump_material << '\n';
  if (!s.output_material.empty()) f << "output_material = " << s.output_material << '\n';
}

namespace {

class ArtifactWriter {
 public:
  explicit ArtifactWriter(const fs::path& dir) : dir_(dir) { fs::create_directories(dir); }

  std::ofstream open(const std::string& name) {
    touch(name);
    return std::ofstream(dir_ / name);
  }

  void touch(const std::string& name) {
    if (std::find(files_.begin(), files_.end(), name) == files_.end())
      files_.push_back(name);
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write_json(const std::string& name, const json& j) {
    auto f = open(name);
    f << j.dump(2) << '\n';
  }

  void manifest(const std::string& scenario_name) {
    json m;
    m["scenario"] = scenario_name;
    auto files = files_;
    std::sort(files.begin(), files.end());
    m["files"] = json::array();
    for (const auto& f : files)
      m["files"].push_back({{"path", f}, {"digest", io::file_digest((dir_ / f).string())}});
    auto f = std::ofstream(dir_ / "manifest.json");
    f << m.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

json design_json(const Scenario& s, const ResolvedDesign& d) {
  json j;
  j["name"] = s.name;
  j["flavor"] = to_string(s.flavor);
  j["input_wavelength_nm"] = d.process.input.center_wavelength_m * 1e9;
  j["pump_wavelength_nm"] = d.process.pump.center_wavelength_m * 1e9;
  j["output_wavelength_nm"] = d.process.output.center_wavelength_m * 1e9;
  j["gvm_resolved"] = d.gvm_pump_wavelength_m > 0;
  j["poling_period_um"] = std::abs(d.poling_period_m) * 1e6;
  j["poling_direction"] = d.poling_period_m > 0 ? 1 : -1;
  j["n_pump"] = d.n_pump;
  j["n_input"] = d.n_input;
  j["n_output"] = d.n_output;
  j["effective_area_um2"] = d.process.a_eff_m2 * 1e12;
  j["d_eff_pm_v"] = d.process.d_eff_m_per_v * 1e12;
  j["theta_calibration"] = d.process.theta_calibration;
  j["normalization"] = d.normalization;
  j["theta_rad"] = d.theta;
  j["pump_peak_power_w"] = d.process.pump_peak_power_w;
  j["required_peak_power_w"] = d.required_peak_power_w;
  j["average_power_mw"] = d.average_power_w * 1e3;
  return j;
}

SpectralAmplitude hg_reference(const FrequencyGrid& grid, int order, double sigma) {
  return hermite_gauss_spectrum(grid, order, grid.center_rad_s, sigma);
}

double moment_sigma(const SpectralAmplitude& a) {
  const Arrayd w = a.grid.samples();
  const Arrayd p = a.values.abs2();
  const double total = p.sum();
  const double mean = (w * p).sum() / total;
  const double var = ((w - mean).square() * p).sum() / total;
  return std::sqrt(2.0 * var);  // amplitude sigma of a Gaussian with this |.|^2
}

}  // namespace

int run(const Scenario& s, std::ostream& log) {
  ResolvedDesign design;
  PhasematchForm form;
  try {
    design = resolve(s);
    form = s.form == "sinc" ? PhasematchForm::sinc : PhasematchForm::gaussian_approx;
  } catch (const std::exception& e) {
    log << "config error: " << e.what() << '\n';
    return 2;
  }

  try {
    ArtifactWriter out(s.output_dir);
    auto has = [&](const char* a) {
      return std::find(s.analyses.begin(), s.analyses.end(), a) != s.analyses.end();
    };

    JointSpectralAmplitude jsa;
    SchmidtData schmidt;
    const bool needs_jsa = has("jsa") || has("schmidt") || has("efficiency") ||
                           has("modematch") || has("rigorous");
    if (needs_jsa) {
      const auto [gi, go] = default_grids(design.process, s.grid_input, s.grid_output);
      jsa = build_jsa(design.process, gi, go, form);
      schmidt = schmidt_decompose(jsa, s.max_modes);
    }

    if (has("design")) out.write_json("design.json", design_json(s, design));

    if (has("jsa")) {
      io::save_jsa(out.path("jsa.txt").string(), jsa);
      out.touch("jsa.txt");
      json j;
      j["input_center_nm"] = 2 * pi * c0 / jsa.input_grid.center_rad_s * 1e9;
      j["output_center_nm"] = 2 * pi * c0 / jsa.output_grid.center_rad_s * 1e9;
      j["normalization"] = jsa.normalization;
      j["grid_input"] = {{"center_rad_s", jsa.input_grid.center_rad_s},
                         {"spacing_rad_s", jsa.input_grid.spacing_rad_s},
                         {"count", jsa.input_grid.count}};
      j["grid_output"] = {{"center_rad_s", jsa.output_grid.center_rad_s},
                          {"spacing_rad_s", jsa.output_grid.spacing_rad_s},
                          {"count", jsa.output_grid.count}};
      j["form"] = s.form;
      out.write_json("jsa_summary.json", j);
    }

    if (has("schmidt")) {
      json j;
      j["kappas"] = std::vector<double>(schmidt.kappas.data(),
                                        schmidt.kappas.data() +
                                            std::min<Index>(schmidt.kappas.size(), 32));
      j["schmidt_number"] = schmidt_number(schmidt);
      j["kappa0_sq"] = schmidt.kappas[0] * schmidt.kappas[0];
      out.write_json("schmidt.json", j);
      const int n_files = std::min<int>(4, static_cast<int>(schmidt.input_modes.size()));
      for (int m = 0; m < n_files; ++m) {
        const auto pf = "phi_" + std::to_string(m) + ".txt";
        const auto sf = "psi_" + std::to_string(m) + ".txt";
        io::save_spectral_amplitude(out.path(pf).string(), schmidt.input_modes[m]);
        io::save_spectral_amplitude(out.path(sf).string(), schmidt.output_modes[m]);
        out.touch(pf);
        out.touch(sf);
      }
    }

    if (has("efficiency")) {
      const DeviceReport rep = device_report(design.process, jsa, schmidt);
      json j;
      j["theta_rad"] = rep.theta;
      j["kappas"] = std::vector<double>(rep.kappas.data(),
                                        rep.kappas.data() + std::min<Index>(rep.kappas.size(), 32));
      j["efficiencies"] = std::vector<double>(
          rep.mode_efficiencies.data(),
          rep.mode_efficiencies.data() + std::min<Index>(rep.mode_efficiencies.size(), 32));
      j["required_peak_power_w"] = rep.required_peak_power_w;
      j["average_power_mw"] = rep.average_power_w * 1e3;
      j["selected_mode_index"] = rep.selected_mode_index;
      out.write_json("device_report.json", j);

      auto csv = out.open("efficiency_sweep.csv");
      const int n_eta = std::min<int>(6, static_cast<int>(schmidt.kappas.size()));
      csv << "theta";
      for (int m = 0; m < n_eta; ++m) csv << ",eta_" << m;
      csv << '\n';
      for (int step = 0; step <= 128; ++step) {
        const double theta = pi * step / 128.0;
        csv << io::format_double(theta);
        for (int m = 0; m < n_eta; ++m) {
          const double e = std::sin(schmidt.kappas[m] * theta);
          csv << ',' << io::format_double(e * e);
        }
        csv << '\n';
      }
    }

    if (has("modematch")) {
      const double sigma_dev = moment_sigma(schmidt.input_modes[0]);
      const double sigma_in = sigma_dev * s.mismatch_ratio;
      InputState state;
      const int n_in = 4;
      for (int m = 0; m < n_in; ++m)
        state.modes.push_back(
            hg_reference(schmidt.input_grid, m, sigma_in));
      state.weights = Arrayd::Constant(n_in, 1.0 / n_in);
      const Arrayd p = selection_probabilities(state, schmidt, design.theta);

      json j = json::array();
      for (int m = 0; m < n_in; ++m) {
        const double o2 = std::norm(overlap(schmidt.input_modes[0], state.modes[m]));
        j.push_back({{"mode_index", m},
                     {"overlap_sq", o2},
                     {"conversion_probability", p[m]}});
      }
      json root;
      root["duration_ratio"] = s.mismatch_ratio;
      root["selectivity_mode0"] = selectivity(state, schmidt, design.theta, 0);
      root["modes"] = j;
      out.write_json("modematch.json", root);

      auto csv = out.open("modematch_sweep.csv");
      csv << "duration_ratio,p_0,p_1,p_2,p_3\n";
      for (int step = 0; step <= 24; ++step) {
        const double ratio = 0.5 * std::pow(4.0, step / 24.0);  // 0.5 .. 2.0 geometric
        InputState sweep_state;
        for (int m = 0; m < n_in; ++m)
          sweep_state.modes.push_back(hg_reference(schmidt.input_grid, m, sigma_dev * ratio));
        sweep_state.weights = Arrayd::Constant(n_in, 1.0 / n_in);
        const Arrayd ps = selection_probabilities(sweep_state, schmidt, design.theta);
        csv << io::format_double(ratio);
        for (int m = 0; m < n_in; ++m) csv << ',' << io::format_double(ps[m]);
        csv << '\n';
      }
    }

    if (has("correspondence")) {
      // pump-shape control: rebuild the joint spectrum for HG0..HG2 pumps and
      // track which Schmidt mode follows the pump and which stays fixed
      std::vector<SpectralAmplitude> first_in, first_out;
      json per_pump = json::array();
      for (int order = 0; order < 3; ++order) {
        ProcessSpec p = design.process;
        p.pump_shape.kind = order == 0 ? PumpShape::Kind::gaussian
                                       : PumpShape::Kind::hermite_gauss;
        p.pump_shape.order = order;
        const auto [gi, go] = default_grids(p, s.grid_input, s.grid_output);
        const JointSpectralAmplitude pjsa = build_jsa(p, gi, go, form);
        const SchmidtData sd = schmidt_decompose(pjsa, 4);
        first_in.push_back(sd.input_modes[0]);
        first_out.push_back(sd.output_modes[0]);

        const double sigma = p.pump_shape.sigma_omega();
        const bool qpg = s.flavor == Flavor::sfg;
        const SpectralAmplitude& follower = qpg ? sd.input_modes[0] : sd.output_modes[0];
        const double follow2 =
            std::norm(overlap(follower, hg_reference(follower.grid, order, sigma)));
        per_pump.push_back({{"pump", order == 0 ? "gaussian" : "hg" + std::to_string(order)},
                            {"kappa0_sq", sd.kappas[0] * sd.kappas[0]},
                            {"shaped_mode_matches_pump_sq", follow2}});

        const auto fi = "corr_phi0_hg" + std::to_string(order) + ".txt";
        const auto fo = "corr_psi0_hg" + std::to_string(order) + ".txt";
        io::save_spectral_amplitude(out.path(fi).string(), sd.input_modes[0]);
        io::save_spectral_amplitude(out.path(fo).string(), sd.output_modes[0]);
        out.touch(fi);
        out.touch(fo);
      }
      // the non-shaped side should be pump-independent
      const bool qpg = s.flavor == Flavor::sfg;
      const auto& fixed = qpg ? first_out : first_in;
      json pairwise = json::array();
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          pairwise.push_back({{"pumps", {a, b}},
                              {"overlap_sq", std::norm(overlap(fixed[a], fixed[b]))}});
      json root;
      root["device"] = qpg ? "qpg" : "qps";
      root["per_pump"] = per_pump;
      root["fixed_mode_pairwise"] = pairwise;
      out.write_json("correspondence.json", root);
    }

    if (has("gvm_sweep")) {
      auto csv = out.open("gvm.csv");
      csv << "lambda_nm,vg_ordinary_m_s,vg_extraordinary_m_s\n";
      const DispersionModel& mo = design.process.input_model.axis == Axis::ordinary
                                      ? design.process.input_model
                                      : design.process.output_model;
      const DispersionModel me = design.process.pump_model.axis == Axis::extraordinary
                                     ? design.process.pump_model
                                     : lithium_niobate_extraordinary(design.process.temperature_k);
      for (double nm = 500.0; nm <= 1700.0 + 1e-9; nm += 5.0) {
        const double w = 2 * pi * c0 / (nm * 1e-9);
        csv << io::format_double(nm) << ',' << io::format_double(group_velocity(mo, w))
            << ',' << io::format_double(group_velocity(me, w)) << '\n';
      }
    }

    if (has("rigorous")) {
      // drive sweep on a reduced grid for the efficiency curve
      const Index sweep_n = std::min<Index>(160, std::min(s.grid_input, s.grid_output));
      const auto [sgi, sgo] = default_grids(design.process, sweep_n, sweep_n);
      const int sweep_slices = std::min(s.slices, 100);
      auto csv = out.open("drive_sweep.csv");
      csv << "pump_scale,rigorous_eta0,analytic_eta0\n";
      const double kappa0 = schmidt.kappas[0];
      for (int step = 0; step <= 12; ++step) {
        const double scale =
            s.scale_min + (s.scale_max - s.scale_min) * step / 12.0;
        const double eta = scale == 0.0 ? 0.0
                                        : converted_efficiency(design.process, sgi, sgo,
                                                               scale, sweep_slices);
        const double ana = std::sin(scale * design.theta * kappa0);
        csv << io::format_double(scale) << ',' << io::format_double(eta) << ','
            << io::format_double(ana * ana) << '\n';
      }

      // full solution at the drive where the analytic efficiency peaks
      const GreenFunction gf =
          propagate(design.process, jsa.input_grid, jsa.output_grid, 1.0, s.slices);
      const RigorousSchmidt rig = rigorous_schmidt(gf, s.max_modes);
      const double fid_in = std::norm(overlap(schmidt.input_modes[0], rig.input_modes[0]));
      const double fid_out = std::norm(overlap(schmidt.output_modes[0], rig.output_modes[0]));
      auto envelope2 = [](const SpectralAmplitude& a, const SpectralAmplitude& b) {
        const double v =
            (a.values.abs() * b.values.abs()).sum() * a.grid.spacing_rad_s;
        return v * v;
      };

      json j;
      j["pump_scale"] = 1.0;
      j["slices"] = s.slices;
      j["unitarity_residual"] = gf.unitarity_residual();
      j["rigorous_eta0"] = rig.amplitudes[0] * rig.amplitudes[0];
      j["rigorous_eta1"] = rig.amplitudes[1] * rig.amplitudes[1];
      const double ana0 = std::sin(design.theta * kappa0);
      j["analytic_eta0"] = ana0 * ana0;
      j["mode_fidelity_input"] = fid_in;
      j["mode_fidelity_output"] = fid_out;
      j["envelope_overlap_input"] = envelope2(schmidt.input_modes[0], rig.input_modes[0]);
      j["envelope_overlap_output"] = envelope2(schmidt.output_modes[0], rig.output_modes[0]);
      j["form"] = s.form;
      out.write_json("rigorous.json", j);

      for (int m = 0; m < 2 && m < static_cast<int>(rig.input_modes.size()); ++m) {
        const auto fi = "rig_phi_" + std::to_string(m) + ".txt";
        const auto fo = "rig_psi_" + std::to_string(m) + ".txt";
        io::save_spectral_amplitude(out.path(fi).string(), rig.input_modes[m]);
        io::save_spectral_amplitude(out.path(fo).string(), rig.output_modes[m]);
        out.touch(fi);
        out.touch(fo);
      }
    }

    out.manifest(s.name);
    log << "scenario '" << s.name << "' wrote artifacts to " << s.output_dir << '\n';
    return 0;
  } catch (const std::exception& e) {
    log << "analysis error in scenario '" << s.name << "': " << e.what() << '\n';
    return 3;
  }
}

}  // namespace qfc
