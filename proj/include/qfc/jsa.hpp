#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "qfc/dispersion.hpp"
#include "qfc/spectra.hpp"
#include "qfc/types.hpp"

namespace qfc {

struct PumpShape {
  enum class Kind { gaussian, hermite_gauss };
  Kind kind = Kind::gaussian;
  int order = 0;
  double fwhm_duration_s = 300e-15;

  /// Gaussian sigma of the (order-0) envelope in rad/s.
  double sigma_omega() const { return 2.0 * std::sqrt(std::log(2.0)) / fwhm_duration_s; }
};

/// Complete physical description of one conversion process.
struct ProcessSpec {
  Flavor flavor = Flavor::sfg;
  WaveSpec pump, input, output;
  DispersionModel pump_model, input_model, output_model;
  double length_m = 0.01;
  double temperature_k = 463.15;
  /// 0 = resolve automatically at the center frequencies; +/-inf = unpoled;
  /// otherwise a signed grating period (see PolingResult::signed_period).
  double poling_period_m = 0.0;
  double d_eff_m_per_v = 1.6e-12;
  double a_eff_m2 = 64e-12;
  PumpShape pump_shape;
  double pump_peak_power_w = 1.0;
  double rep_rate_hz = 76e6;
  double theta_calibration = 1.0;

  double omega_pump() const { return 2.0 * constants::pi * constants::c0 / pump.center_wavelength_m; }
  double omega_input() const { return 2.0 * constants::pi * constants::c0 / input.center_wavelength_m; }
  double omega_output() const { return 2.0 * constants::pi * constants::c0 / output.center_wavelength_m; }

  void validate() const;
};

/// Signed grating period actually in force for the spec (resolves the auto case).
double resolved_poling(const ProcessSpec& spec);

enum class PhasematchForm { sinc, gaussian_approx };

/// Joint spectral distribution G(w_i, w_o) = alpha * phi / N on the grid pair.
/// values(k, l) is indexed (input k, output l); N is the quadrature norm of the
/// unnormalized product (units s^-1/2 for an L2-normalized pump amplitude).
struct JointSpectralAmplitude {
  FrequencyGrid input_grid, output_grid;
  Matrixcd values;
  double normalization = 0.0;
  bool factors_retained = false;
  Matrixcd pump_factor;
  Matrixd pm_factor;

  double quad_norm() const {
    return std::sqrt(values.array().abs2().sum() * input_grid.spacing_rad_s *
                     output_grid.spacing_rad_s);
  }
};

/// Raw phase mismatch dbeta(w_i, w_o) on the grid pair, poling included.
Matrixd mismatch_matrix(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                        const FrequencyGrid& output_grid);

/// Phasematching factor phi(w_i, w_o): sinc(dbeta L/2), or the Gaussian
/// approximation exp(-0.193 (dbeta L/2)^2).
Matrixd phasematching_matrix(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                             const FrequencyGrid& output_grid, PhasematchForm form);

/// Pump factor alpha(w_o - w_i) for SFG, alpha(w_i - w_o) for DFG, linearly
/// interpolated on alpha's own grid. Throws if a required detuning is not covered.
Matrixcd pump_matrix(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                     const FrequencyGrid& output_grid, const SpectralAmplitude& alpha);

/// Pump spectral amplitude of the spec's pump shape, on a grid wide enough to
/// cover every detuning the grid pair can request.
SpectralAmplitude pump_spectrum(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                                const FrequencyGrid& output_grid, Index count = 8192);

JointSpectralAmplitude build_jsa(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                                 const FrequencyGrid& output_grid, PhasematchForm form,
                                 bool retain_factors = false);

/// Same, with a caller-supplied pump amplitude.
JointSpectralAmplitude build_jsa(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                                 const FrequencyGrid& output_grid, PhasematchForm form,
                                 const SpectralAmplitude& alpha, bool retain_factors = false);

/// Default grid pair: +-6 pump bandwidths along the pump-controlled direction,
/// +-6 phasematching bandwidths along the phasematching-controlled direction.
std::pair<FrequencyGrid, FrequencyGrid> default_grids(const ProcessSpec& spec,
                                                      Index input_count = 512,
                                                      Index output_count = 512);

}  // namespace qfc
