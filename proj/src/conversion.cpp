#include "qfc/conversion.hpp"

#include <cmath>
#include <stdexcept>

namespace qfc {

using constants::c0;
using constants::eps0;
using constants::pi;

TransformKind classify_flavor(PumpedFieldRole pumped) {
  return pumped == PumpedFieldRole::a ? TransformKind::squeezer
                                      : TransformKind::beamsplitter;
}

FlavorTransform flavor_transform(TransformKind kind, double parameter) {
  if (!std::isfinite(parameter))
    throw std::invalid_argument("transform parameter must be finite");
  FlavorTransform t{kind, parameter, Eigen::Matrix2cd()};
  if (kind == TransformKind::beamsplitter) {
    const double c = std::cos(parameter), s = std::sin(parameter);
    t.matrix << c, Complex(0, -s), Complex(0, -s), c;
  } else {
    const double ch = std::cosh(parameter), sh = std::sinh(parameter);
    t.matrix << ch, -sh, -sh, ch;
  }
  return t;
}

namespace {

double pump_integral_mag2(const ProcessSpec& spec) {
  const double sigma = spec.pump_shape.sigma_omega();
  const double turning = std::sqrt(2.0 * spec.pump_shape.order + 1.0);
  const Index n = 4096;
  const FrequencyGrid grid(spec.omega_pump(), 2.0 * (turning + 6.0) * sigma / n, n);
  SpectralAmplitude alpha =
      spec.pump_shape.kind == PumpShape::Kind::gaussian
          ? gaussian_spectrum(grid, spec.omega_pump(), spec.pump_shape.fwhm_duration_s)
          : hermite_gauss_spectrum(grid, spec.pump_shape.order, spec.omega_pump(), sigma);
  const Complex integral = alpha.values.sum() * grid.spacing_rad_s;
  const double mag2 = std::norm(integral);
  if (mag2 < 1e-12 * grid.spacing_rad_s * static_cast<double>(n) * grid.spacing_rad_s)
    throw std::domain_error(
        "degenerate pump: spectral amplitude integrates to zero (odd symmetry?)");
  return mag2;
}

}  // namespace

double coupling_theta(const ProcessSpec& spec, double normalization) {
  spec.validate();
  if (!(normalization > 0))
    throw std::invalid_argument("normalization N must be positive");
  const double n_p = refractive_index(spec.pump_model, spec.pump.center_wavelength_m);
  const double n_i = refractive_index(spec.input_model, spec.input.center_wavelength_m);
  const double n_o = refractive_index(spec.output_model, spec.output.center_wavelength_m);
  const double mag2 = pump_integral_mag2(spec);
  const double radicand = 2.0 * spec.omega_input() * spec.omega_output() /
                          (c0 * eps0 * n_p * n_i * n_o * mag2);
  return spec.theta_calibration *
         (2.0 * spec.d_eff_m_per_v * pi * pi * spec.length_m * normalization / c0) *
         std::sqrt(radicand) * std::sqrt(spec.pump_peak_power_w / spec.a_eff_m2);
}

Arrayd efficiencies(const Arrayd& kappas, double theta) {
  if (!(theta >= 0)) throw std::invalid_argument("theta must be nonnegative");
  return (kappas * theta).sin().square();
}

double required_pump_power(const ProcessSpec& spec, double normalization) {
  ProcessSpec unit = spec;
  unit.pump_peak_power_w = 1.0;
  const double theta_unit = coupling_theta(unit, normalization);
  const double r = (pi / 2.0) / theta_unit;
  return r * r;
}

double average_power(double peak_power_w, double fwhm_duration_s, double rep_rate_hz,
                     double shape_factor) {
  if (!(peak_power_w > 0) || !(fwhm_duration_s > 0) || rep_rate_hz < 0)
    throw std::invalid_argument("average_power arguments must be positive");
  return peak_power_w * fwhm_duration_s * rep_rate_hz * shape_factor;
}

std::pair<Arraycd, Arraycd> convert_state(const Arraycd& coefficients,
                                          const SchmidtData& data, double theta) {
  const Index n = coefficients.size();
  if (n > data.kappas.size())
    throw std::invalid_argument("more input coefficients than device modes");
  Arraycd converted(n), transmitted(n);
  for (Index j = 0; j < n; ++j) {
    const double tj = data.kappas[j] * theta;
    converted[j] = Complex(0, -std::sin(tj)) * coefficients[j];
    transmitted[j] = std::cos(tj) * coefficients[j];
  }
  return {converted, transmitted};
}

DeviceReport device_report(const ProcessSpec& spec, const JointSpectralAmplitude& jsa,
                           const SchmidtData& schmidt) {
  DeviceReport r;
  r.theta = coupling_theta(spec, jsa.normalization);
  r.kappas = schmidt.kappas;
  r.mode_efficiencies = efficiencies(schmidt.kappas, r.theta);
  r.required_peak_power_w = required_pump_power(spec, jsa.normalization);
  r.average_power_w = average_power(spec.pump_peak_power_w,
                                    spec.pump_shape.fwhm_duration_s, spec.rep_rate_hz);
  r.selected_mode_index = 0;
  return r;
}

}  // namespace qfc
