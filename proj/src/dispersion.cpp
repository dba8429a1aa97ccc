#include "qfc/dispersion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfc {

using constants::c0;
using constants::pi;

const char* to_string(Axis a) {
  return a == Axis::ordinary ? "ordinary" : "extraordinary";
}

const char* to_string(Flavor f) { return f == Flavor::sfg ? "sfg" : "dfg"; }

void WaveSpec::validate() const {
  const double um = center_wavelength_m * 1e6;
  if (!(um >= 0.4 && um <= 2.0)) {
    std::ostringstream os;
    os << "wave center wavelength " << um << " um outside [0.4, 2.0] um";
    throw std::domain_error(os.str());
  }
}

DispersionModel lithium_niobate_extraordinary(double temperature_k) {
  DispersionModel m;
  m.axis = Axis::extraordinary;
  m.form = ModelForm::sellmeier;
  m.temperature_k = temperature_k;
  m.source = "congruent LiNbO3 n_e, Jundt (1997)";
  m.coefficients = {
      {"c0", 5.35583},   {"c0t", 4.629e-7},  {"p1", 0.100473}, {"p1t", 3.862e-8},
      {"q1", 0.20692},   {"q1t", -0.89e-8},  {"p2", 100.0},    {"p2t", 2.657e-5},
      {"q2", 11.34927},  {"q2t", 0.0},       {"r", 1.5334e-2}, {"t0", 24.5},
      {"t1", 570.82},
  };
  return m;
}

DispersionModel lithium_niobate_ordinary(double temperature_k) {
  DispersionModel m;
  m.axis = Axis::ordinary;
  m.form = ModelForm::sellmeier;
  m.temperature_k = temperature_k;
  m.source = "congruent LiNbO3 n_o, Edwards & Lawrence (1984)";
  m.coefficients = {
      {"c0", 4.9048},  {"c0t", 2.1429e-8}, {"p1", 0.11775}, {"p1t", 2.2314e-8},
      {"q1", 0.21802}, {"q1t", -2.9671e-8}, {"p2", 0.0},    {"p2t", 0.0},
      {"q2", 0.0},     {"q2t", 0.0},        {"r", 0.027153}, {"t0", 24.5},
      {"t1", 570.5},
  };
  return m;
}

DispersionModel fixed_index(double n, Axis axis) {
  if (!(n > 1.0)) throw std::invalid_argument("fixed index must exceed 1");
  DispersionModel m;
  m.axis = axis;
  m.form = ModelForm::fixed_index;
  m.coefficients = {{"n", n}};
  m.source = "fixed-index stub";
  return m;
}

DispersionModel tabulated_index(const Arrayd& lambda_um, const Arrayd& n, Axis axis,
                                std::string source) {
  const Index k = lambda_um.size();
  if (k < 4 || n.size() != k)
    throw std::invalid_argument("tabulated index needs >= 4 matching samples");
  for (Index i = 1; i < k; ++i)
    if (!(lambda_um[i] > lambda_um[i - 1]))
      throw std::invalid_argument("tabulated wavelengths must be strictly increasing");

  DispersionModel m;
  m.axis = axis;
  m.form = ModelForm::tabulated;
  m.source = std::move(source);
  m.table_lambda_um = lambda_um;
  m.table_n = n;
  m.valid_window_um = {lambda_um[0], lambda_um[k - 1]};

  // natural cubic spline: solve the tridiagonal system for curvatures
  Arrayd h = lambda_um.tail(k - 1) - lambda_um.head(k - 1);
  Matrixd A = Matrixd::Zero(k, k);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  A(0, 0) = 1.0;
  A(k - 1, k - 1) = 1.0;
  for (Index i = 1; i < k - 1; ++i) {
    A(i, i - 1) = h[i - 1];
    A(i, i) = 2.0 * (h[i - 1] + h[i]);
    A(i, i + 1) = h[i];
    rhs[i] = 6.0 * ((n[i + 1] - n[i]) / h[i] - (n[i] - n[i - 1]) / h[i - 1]);
  }
  m.table_curv = A.partialPivLu().solve(rhs).array();
  return m;
}

namespace {

double coeff(const DispersionModel& m, const std::string& key) {
  auto it = m.coefficients.find(key);
  return it == m.coefficients.end() ? 0.0 : it->second;
}

double sellmeier_n(const DispersionModel& m, double lam_um) {
  const double t_c = m.temperature_k - 273.15;
  const double f = (t_c - coeff(m, "t0")) * (t_c + coeff(m, "t1"));
  const double l2 = lam_um * lam_um;
  double n2 = coeff(m, "c0") + coeff(m, "c0t") * f - coeff(m, "r") * l2;
  for (const char* k : {"1", "2"}) {
    const double p = coeff(m, std::string("p") + k) + coeff(m, std::string("p") + k + "t") * f;
    if (p == 0.0) continue;
    const double q = coeff(m, std::string("q") + k) + coeff(m, std::string("q") + k + "t") * f;
    n2 += p / (l2 - q * q);
  }
  if (!(n2 > 1.0)) {
    std::ostringstream os;
    os << "Sellmeier expansion gives n^2 = " << n2 << " at " << lam_um << " um";
    throw std::domain_error(os.str());
  }
  return std::sqrt(n2);
}

double spline_n(const DispersionModel& m, double lam_um) {
  const Arrayd& x = m.table_lambda_um;
  const Index k = x.size();
  Index lo = 0, hi = k - 1;
  while (hi - lo > 1) {
    const Index mid = (lo + hi) / 2;
    (x[mid] <= lam_um ? lo : hi) = mid;
  }
  const double h = x[hi] - x[lo];
  const double a = (x[hi] - lam_um) / h;
  const double b = (lam_um - x[lo]) / h;
  return a * m.table_n[lo] + b * m.table_n[hi] +
         ((a * a * a - a) * m.table_curv[lo] + (b * b * b - b) * m.table_curv[hi]) * h * h / 6.0;
}

void check_window(const DispersionModel& m, double lam_um) {
  if (!(lam_um >= m.valid_window_um.first && lam_um <= m.valid_window_um.second)) {
    std::ostringstream os;
    os << "wavelength " << lam_um << " um outside model validity window ["
       << m.valid_window_um.first << ", " << m.valid_window_um.second << "] um";
    throw std::domain_error(os.str());
  }
}

}  // namespace

double refractive_index(const DispersionModel& model, double wavelength_m) {
  const double lam_um = wavelength_m * 1e6;
  check_window(model, lam_um);
  switch (model.form) {
    case ModelForm::fixed_index:
      return coeff(model, "n");
    case ModelForm::tabulated:
      return spline_n(model, lam_um);
    case ModelForm::sellmeier:
    default:
      return sellmeier_n(model, lam_um);
  }
}

double beta(const DispersionModel& model, double omega_rad_s) {
  if (!(omega_rad_s > 0)) throw std::domain_error("beta requires omega > 0");
  const double lam = 2.0 * pi * c0 / omega_rad_s;
  return refractive_index(model, lam) * omega_rad_s / c0;
}

double group_velocity(const DispersionModel& model, double omega_rad_s) {
  const double h = 1e-4 * omega_rad_s;
  // central difference at steps h and h/2, one Richardson step
  const double d_h = (beta(model, omega_rad_s + h) - beta(model, omega_rad_s - h)) / (2.0 * h);
  const double d_h2 =
      (beta(model, omega_rad_s + h / 2) - beta(model, omega_rad_s - h / 2)) / h;
  const double d = (4.0 * d_h2 - d_h) / 3.0;
  const double vg = 1.0 / d;
  if (!(vg > 0.0 && vg < c0)) {
    std::ostringstream os;
    os << "group velocity " << vg << " m/s outside (0, c)";
    throw std::domain_error(os.str());
  }
  return vg;
}

double find_gvm_pump(const WaveSpec& input, Axis pump_axis, const DispersionModel& pump_model,
                     const DispersionModel& input_model, std::pair<double, double> window_m) {
  input.validate();
  if (pump_model.axis != pump_axis)
    throw std::invalid_argument("pump model axis does not match requested pump axis");
  if (!(window_m.first > 0 && window_m.second > window_m.first))
    throw std::invalid_argument("invalid GVM search window");

  const double vg_in =
      group_velocity(input_model, 2.0 * pi * c0 / input.center_wavelength_m);
  auto gap = [&](double lam) {
    return group_velocity(pump_model, 2.0 * pi * c0 / lam) - vg_in;
  };

  double lo = window_m.first, hi = window_m.second;
  double glo = gap(lo), ghi = gap(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (glo * ghi > 0.0) {
    std::ostringstream os;
    os << "no GVM solution in window [" << lo * 1e9 << ", " << hi * 1e9
       << "] nm; velocity gap " << glo << " m/s at lower edge, " << ghi
       << " m/s at upper edge";
    throw std::runtime_error(os.str());
  }
  while (hi - lo > 0.01e-9) {
    const double mid = 0.5 * (lo + hi);
    const double gm = gap(mid);
    if (gm == 0.0) return mid;
    if (glo * gm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      glo = gm;
    }
  }
  return 0.5 * (lo + hi);
}

double output_wavelength(Flavor flavor, double lambda_in_m, double lambda_pump_m) {
  if (!(lambda_in_m > 0 && lambda_pump_m > 0))
    throw std::domain_error("wavelengths must be positive");
  const double inv = (flavor == Flavor::sfg) ? 1.0 / lambda_in_m + 1.0 / lambda_pump_m
                                             : 1.0 / lambda_in_m - 1.0 / lambda_pump_m;
  if (!(inv > 0)) {
    std::ostringstream os;
    os << "DFG output frequency is nonpositive for input " << lambda_in_m * 1e9
       << " nm, pump " << lambda_pump_m * 1e9 << " nm";
    throw std::domain_error(os.str());
  }
  return 1.0 / inv;
}

PolingResult poling_period(Flavor flavor, double beta_p, double beta_i, double beta_o) {
  if (!(std::isfinite(beta_p) && std::isfinite(beta_i) && std::isfinite(beta_o)))
    throw std::invalid_argument("propagation constants must be finite");
  const double d = (flavor == Flavor::sfg) ? beta_p + beta_i - beta_o
                                           : beta_p - beta_i + beta_o;
  PolingResult r;
  if (d == 0.0) {
    r.phasematched = true;
    return r;
  }
  r.direction = d > 0 ? 1 : -1;
  r.period_m = 2.0 * pi / std::abs(d);
  return r;
}

double phase_mismatch(Flavor flavor, double omega_in, double omega_out,
                      const DispersionModel& pump_model, const DispersionModel& input_model,
                      const DispersionModel& output_model, double poling_period_m) {
  if (poling_period_m == 0.0)
    throw std::invalid_argument("poling period must be nonzero (use +/-inf for none)");
  const double omega_p = (flavor == Flavor::sfg) ? omega_out - omega_in : omega_in - omega_out;
  if (!(omega_p > 0)) throw std::domain_error("implied pump frequency is nonpositive");
  const double grating = 2.0 * pi / poling_period_m;  // signed; 0 for infinite period
  if (flavor == Flavor::sfg)
    return beta(pump_model, omega_p) + beta(input_model, omega_in) -
           beta(output_model, omega_out) - grating;
  return beta(pump_model, omega_p) - beta(input_model, omega_in) +
         beta(output_model, omega_out) - grating;
}

}  // namespace qfc
