#include "qfc/jsa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfc {

using constants::c0;
using constants::pi;

void ProcessSpec::validate() const {
  pump.validate();
  input.validate();
  output.validate();
  const double expected =
      output_wavelength(flavor, input.center_wavelength_m, pump.center_wavelength_m);
  const double rel = std::abs(output.center_wavelength_m - expected) / expected;
  if (rel > 1e-3) {
    std::ostringstream os;
    os << "center wavelengths violate energy conservation: output "
       << output.center_wavelength_m * 1e9 << " nm vs expected " << expected * 1e9
       << " nm (" << rel * 100 << "% off)";
    throw std::invalid_argument(os.str());
  }
  if (!(length_m > 0)) throw std::invalid_argument("waveguide length must be positive");
  if (!(d_eff_m_per_v > 0)) throw std::invalid_argument("d_eff must be positive");
  if (!(a_eff_m2 > 0)) throw std::invalid_argument("effective area must be positive");
  if (!(pump_peak_power_w > 0)) throw std::invalid_argument("pump power must be positive");
  if (pump_model.axis != pump.polarization_axis ||
      input_model.axis != input.polarization_axis ||
      output_model.axis != output.polarization_axis)
    throw std::invalid_argument("dispersion model axes do not match wave polarizations");
}

double resolved_poling(const ProcessSpec& spec) {
  if (spec.poling_period_m != 0.0) return spec.poling_period_m;
  const double bp = beta(spec.pump_model, spec.omega_pump());
  const double bi = beta(spec.input_model, spec.omega_input());
  const double bo = beta(spec.output_model, spec.omega_output());
  return poling_period(spec.flavor, bp, bi, bo).signed_period();
}

Matrixd mismatch_matrix(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                        const FrequencyGrid& output_grid) {
  const double poling = resolved_poling(spec);
  const double grating = 2.0 * pi / poling;
  const int sgn_i = (spec.flavor == Flavor::sfg) ? 1 : -1;

  Arrayd beta_in(input_grid.count), beta_out(output_grid.count);
  for (Index k = 0; k < input_grid.count; ++k)
    beta_in[k] = beta(spec.input_model, input_grid.sample(k));
  for (Index l = 0; l < output_grid.count; ++l)
    beta_out[l] = beta(spec.output_model, output_grid.sample(l));

  Matrixd db(input_grid.count, output_grid.count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < input_grid.count; ++k) {
    try {
      const double wi = input_grid.sample(k);
      for (Index l = 0; l < output_grid.count; ++l) {
        const double wo = output_grid.sample(l);
        const double wp = sgn_i > 0 ? wo - wi : wi - wo;
        db(k, l) = beta(spec.pump_model, wp) + sgn_i * (beta_in[k] - beta_out[l]) - grating;
      }
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return db;
}

Matrixd phasematching_matrix(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                             const FrequencyGrid& output_grid, PhasematchForm form) {
  Matrixd db = mismatch_matrix(spec, input_grid, output_grid);
  const double half_l = spec.length_m / 2.0;
  if (form == PhasematchForm::sinc)
    return db.unaryExpr([half_l](double d) { return sinc(d * half_l); });
  return db.unaryExpr(
      [half_l](double d) { return std::exp(-0.193 * d * half_l * d * half_l); });
}

Matrixcd pump_matrix(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                     const FrequencyGrid& output_grid, const SpectralAmplitude& alpha) {
  const int sgn = (spec.flavor == Flavor::sfg) ? 1 : -1;
  const FrequencyGrid& ag = alpha.grid;

  // coverage check at the detuning extremes
  const double d1 = sgn * (output_grid.min() - input_grid.max());
  const double d2 = sgn * (output_grid.max() - input_grid.min());
  const double dmin = std::min(d1, d2), dmax = std::max(d1, d2);
  if (dmin < ag.min() || dmax > ag.max()) {
    std::ostringstream os;
    os << "pump amplitude grid [" << ag.min() << ", " << ag.max()
       << "] rad/s does not cover detunings [" << dmin << ", " << dmax << "] rad/s";
    throw std::domain_error(os.str());
  }

  Matrixcd a(input_grid.count, output_grid.count);
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < input_grid.count; ++k) {
    const double wi = input_grid.sample(k);
    for (Index l = 0; l < output_grid.count; ++l) {
      const double det = sgn * (output_grid.sample(l) - wi);
      const double pos = (det - ag.min()) / ag.spacing_rad_s;
      const Index j = std::clamp(static_cast<Index>(pos), Index(0), ag.count - 2);
      const double t = pos - static_cast<double>(j);
      a(k, l) = (1.0 - t) * alpha.values[j] + t * alpha.values[j + 1];
    }
  }
  return a;
}

SpectralAmplitude pump_spectrum(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                                const FrequencyGrid& output_grid, Index count) {
  const int sgn = (spec.flavor == Flavor::sfg) ? 1 : -1;
  const double d1 = sgn * (output_grid.min() - input_grid.max());
  const double d2 = sgn * (output_grid.max() - input_grid.min());
  const double wp = spec.omega_pump();
  const double sigma = spec.pump_shape.sigma_omega();
  const double turning = std::sqrt(2.0 * spec.pump_shape.order + 1.0);
  double half = std::max({wp - std::min(d1, d2), std::max(d1, d2) - wp,
                          (turning + 5.5) * sigma});
  half *= 1.0 + 4.0 / static_cast<double>(count);  // two spare samples per edge
  const FrequencyGrid grid(wp, 2.0 * half / static_cast<double>(count), count);
  if (spec.pump_shape.kind == PumpShape::Kind::gaussian)
    return gaussian_spectrum(grid, wp, spec.pump_shape.fwhm_duration_s);
  return hermite_gauss_spectrum(grid, spec.pump_shape.order, wp, sigma);
}

JointSpectralAmplitude build_jsa(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                                 const FrequencyGrid& output_grid, PhasematchForm form,
                                 const SpectralAmplitude& alpha, bool retain_factors) {
  spec.validate();
  Matrixd phi = phasematching_matrix(spec, input_grid, output_grid, form);
  Matrixcd a = pump_matrix(spec, input_grid, output_grid, alpha);

  JointSpectralAmplitude jsa;
  jsa.input_grid = input_grid;
  jsa.output_grid = output_grid;
  jsa.values = a.array() * phi.array().cast<Complex>();
  const double n2 = jsa.values.array().abs2().sum() * input_grid.spacing_rad_s *
                    output_grid.spacing_rad_s;
  if (!(n2 > 0) || !std::isfinite(n2))
    throw std::domain_error(
        "empty joint spectrum: pump and phasematching supports do not intersect");
  jsa.normalization = std::sqrt(n2);
  jsa.values /= jsa.normalization;
  if (retain_factors) {
    jsa.factors_retained = true;
    jsa.pump_factor = std::move(a);
    jsa.pm_factor = std::move(phi);
  }
  return jsa;
}

JointSpectralAmplitude build_jsa(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                                 const FrequencyGrid& output_grid, PhasematchForm form,
                                 bool retain_factors) {
  const SpectralAmplitude alpha = pump_spectrum(spec, input_grid, output_grid);
  return build_jsa(spec, input_grid, output_grid, form, alpha, retain_factors);
}

namespace {

// group-slope coefficients of dbeta around the center frequencies:
// dbeta ~ a_i * dw_i + a_o * dw_o
std::pair<double, double> mismatch_slopes(const ProcessSpec& spec) {
  const double vp = group_velocity(spec.pump_model, spec.omega_pump());
  const double vi = group_velocity(spec.input_model, spec.omega_input());
  const double vo = group_velocity(spec.output_model, spec.omega_output());
  if (spec.flavor == Flavor::sfg) return {1.0 / vi - 1.0 / vp, 1.0 / vp - 1.0 / vo};
  return {1.0 / vp - 1.0 / vi, 1.0 / vo - 1.0 / vp};
}

}  // namespace

std::pair<FrequencyGrid, FrequencyGrid> default_grids(const ProcessSpec& spec,
                                                      Index input_count,
                                                      Index output_count) {
  const auto [a_i, a_o] = mismatch_slopes(spec);
  const double sigma = spec.pump_shape.sigma_omega();
  const double pump_half = 6.0 * sigma * std::sqrt(2.0 * spec.pump_shape.order + 1.0);

  auto pm_half = [&](double slope) {
    const double x = std::abs(slope) * spec.length_m;
    if (x * pump_half < 1e-3) return pump_half;  // phasematching flat on this axis
    return 6.0 * 2.0 * 1.3916 * 2.0 / x;         // 6 sinc intensity-FWHMs
  };

  const double half_i = std::min(pump_half, pm_half(a_i));
  const double half_o = std::min(pump_half, pm_half(a_o));
  FrequencyGrid gi(spec.omega_input(), 2.0 * half_i / static_cast<double>(input_count),
                   input_count);
  FrequencyGrid go(spec.omega_output(), 2.0 * half_o / static_cast<double>(output_count),
                   output_count);
  return {gi, go};
}

}  // namespace qfc
