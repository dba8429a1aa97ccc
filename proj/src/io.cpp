#include "qfc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qfc::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

[[noreturn]] void bad_format(const std::string& path, const std::string& why) {
  throw std::runtime_error(path + ": " + why);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

DispersionModel load_material(const std::string& path) {
  auto f = open_in(path);
  std::string header;
  std::getline(f, header);
  header = trim(header);

  if (header == "# tabulated-index v1") {
    std::vector<double> lam, n;
    double a, b;
    while (f >> a >> b) {
      lam.push_back(a);
      n.push_back(b);
    }
    Arrayd la = Eigen::Map<Arrayd>(lam.data(), static_cast<Index>(lam.size()));
    Arrayd na = Eigen::Map<Arrayd>(n.data(), static_cast<Index>(n.size()));
    return tabulated_index(la, na, Axis::ordinary, "tabulated: " + path);
  }
  if (header != "# material v1") bad_format(path, "unknown material header '" + header + "'");

  DispersionModel m;
  std::string line;
  while (std::getline(f, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad_format(path, "expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "axis") {
      if (val == "ordinary")
        m.axis = Axis::ordinary;
      else if (val == "extraordinary")
        m.axis = Axis::extraordinary;
      else
        bad_format(path, "unknown axis " + val);
    } else if (key == "coefficients") {
      std::istringstream is(val);
      std::string tok;
      while (is >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) bad_format(path, "coefficient needs name:value");
        m.coefficients[tok.substr(0, colon)] = std::stod(tok.substr(colon + 1));
      }
    } else if (key == "t_ref_kelvin") {
      m.temperature_k = std::stod(val);
    } else if (key == "valid_window_um") {
      std::istringstream is(val);
      if (!(is >> m.valid_window_um.first >> m.valid_window_um.second))
        bad_format(path, "valid_window_um needs two numbers");
    } else if (key == "source") {
      m.source = val;
    } else {
      bad_format(path, "unknown key " + key);
    }
  }
  if (m.coefficients.count("n")) m.form = ModelForm::fixed_index;
  return m;
}

void save_material(const std::string& path, const DispersionModel& model) {
  if (model.form == ModelForm::tabulated) {
    auto f = open_out(path);
    f << "# tabulated-index v1\n";
    for (Index i = 0; i < model.table_lambda_um.size(); ++i)
      f << format_double(model.table_lambda_um[i]) << ' '
        << format_double(model.table_n[i]) << '\n';
    return;
  }
  auto f = open_out(path);
  f << "# material v1\n";
  f << "axis = " << to_string(model.axis) << '\n';
  f << "coefficients =";
  for (const auto& [k, v] : model.coefficients) f << ' ' << k << ':' << format_double(v);
  f << '\n';
  f << "t_ref_kelvin = " << format_double(model.temperature_k) << '\n';
  f << "valid_window_um = " << format_double(model.valid_window_um.first) << ' '
    << format_double(model.valid_window_um.second) << '\n';
  f << "source = " << model.source << '\n';
}

SpectralAmplitude load_spectral_amplitude(const std::string& path) {
  auto f = open_in(path);
  std::string header;
  std::getline(f, header);
  if (trim(header) != "# spectral-amplitude v1")
    bad_format(path, "expected '# spectral-amplitude v1'");
  std::vector<double> w, re, im;
  double a, b, c;
  while (f >> a >> b >> c) {
    w.push_back(a);
    re.push_back(b);
    im.push_back(c);
  }
  const Index n = static_cast<Index>(w.size());
  if (n < 8) bad_format(path, "too few samples");
  const double spacing = w[1] - w[0];
  for (Index k = 2; k < n; ++k)
    if (std::abs((w[k] - w[k - 1]) - spacing) > 1e-6 * spacing)
      bad_format(path, "frequency axis is not uniform");
  FrequencyGrid grid(w[n / 2], spacing, n);
  Arraycd v(n);
  for (Index k = 0; k < n; ++k) v[k] = Complex(re[k], im[k]);
  return {grid, v, path};
}

void save_spectral_amplitude(const std::string& path, const SpectralAmplitude& a) {
  auto f = open_out(path);
  f << "# spectral-amplitude v1\n";
  for (Index k = 0; k < a.grid.count; ++k)
    f << format_double(a.grid.sample(k)) << ' ' << format_double(a.values[k].real())
      << ' ' << format_double(a.values[k].imag()) << '\n';
}

TransverseProfile load_profile(const std::string& path) {
  auto f = open_in(path);
  std::string header;
  std::getline(f, header);
  if (trim(header) != "# transverse-profile v1")
    bad_format(path, "expected '# transverse-profile v1'");

  std::string line;
  std::getline(f, line);
  std::istringstream first(line);
  std::vector<double> x;
  double v;
  while (first >> v) x.push_back(v * 1e-6);
  std::vector<double> y;
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream is(line);
    double yi;
    is >> yi;
    y.push_back(yi * 1e-6);
    std::vector<double> row;
    while (is >> v) row.push_back(v);
    if (row.size() != x.size()) bad_format(path, "ragged profile row");
    rows.push_back(std::move(row));
  }
  TransverseProfile p;
  p.x_m = Eigen::Map<Arrayd>(x.data(), static_cast<Index>(x.size()));
  p.y_m = Eigen::Map<Arrayd>(y.data(), static_cast<Index>(y.size()));
  p.values.resize(static_cast<Index>(x.size()), static_cast<Index>(y.size()));
  for (size_t j = 0; j < y.size(); ++j)
    for (size_t i = 0; i < x.size(); ++i)
      p.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[j][i];
  p.label = path;
  return p;
}

void save_profile(const std::string& path, const TransverseProfile& p) {
  auto f = open_out(path);
  f << "# transverse-profile v1\n";
  for (Index i = 0; i < p.x_m.size(); ++i)
    f << (i ? " " : "") << format_double(p.x_m[i] * 1e6);
  f << '\n';
  for (Index j = 0; j < p.y_m.size(); ++j) {
    f << format_double(p.y_m[j] * 1e6);
    for (Index i = 0; i < p.x_m.size(); ++i) f << ' ' << format_double(p.values(i, j));
    f << '\n';
  }
}

JointSpectralAmplitude load_jsa(const std::string& path) {
  auto f = open_in(path);
  std::string header;
  std::getline(f, header);
  if (trim(header) != "# jsa v1") bad_format(path, "expected '# jsa v1'");

  auto read_grid = [&](const char* tag) {
    std::string word;
    double center, spacing;
    Index count;
    f >> word >> center >> spacing >> count;
    if (word != tag) bad_format(path, std::string("expected ") + tag);
    return FrequencyGrid(center, spacing, count);
  };
  const FrequencyGrid gi = read_grid("input_grid");
  const FrequencyGrid go = read_grid("output_grid");
  std::string word;
  double n;
  f >> word >> n;
  if (word != "normalization") bad_format(path, "expected normalization");

  JointSpectralAmplitude jsa;
  jsa.input_grid = gi;
  jsa.output_grid = go;
  jsa.normalization = n;
  jsa.values.resize(gi.count, go.count);
  for (Index k = 0; k < gi.count; ++k)
    for (Index l = 0; l < go.count; ++l) {
      double re, im;
      if (!(f >> re >> im)) bad_format(path, "truncated value table");
      jsa.values(k, l) = Complex(re, im);
    }
  return jsa;
}

void save_jsa(const std::string& path, const JointSpectralAmplitude& jsa) {
  auto f = open_out(path);
  f << "# jsa v1\n";
  f << "input_grid " << format_double(jsa.input_grid.center_rad_s) << ' '
    << format_double(jsa.input_grid.spacing_rad_s) << ' ' << jsa.input_grid.count << '\n';
  f << "output_grid " << format_double(jsa.output_grid.center_rad_s) << ' '
    << format_double(jsa.output_grid.spacing_rad_s) << ' ' << jsa.output_grid.count
    << '\n';
  f << "normalization " << format_double(jsa.normalization) << '\n';
  for (Index k = 0; k < jsa.input_grid.count; ++k) {
    for (Index l = 0; l < jsa.output_grid.count; ++l)
      f << format_double(jsa.values(k, l).real()) << ' '
        << format_double(jsa.values(k, l).imag()) << (l + 1 < jsa.output_grid.count ? " " : "");
    f << '\n';
  }
}

std::string file_digest(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  uint64_t h = 1469598103934665603ull;
  char c;
  while (f.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qfc::io
