#pragma once

#include <string>

#include "qfc/types.hpp"

namespace qfc {

/// Uniform angular-frequency axis. Sample k sits at center + (k - count/2)*spacing.
struct FrequencyGrid {
  double center_rad_s = 0.0;
  double spacing_rad_s = 0.0;
  Index count = 0;

  FrequencyGrid() = default;
  FrequencyGrid(double center, double spacing, Index n);

  double sample(Index k) const { return center_rad_s + (k - count / 2) * spacing_rad_s; }
  double min() const { return sample(0); }
  double max() const { return sample(count - 1); }
  Arrayd samples() const;

  bool operator==(const FrequencyGrid& o) const = default;
};

/// Complex spectral amplitude on a FrequencyGrid. Normalized amplitudes carry
/// unit L2 norm under the quadrature sum |v|^2 * spacing.
struct SpectralAmplitude {
  FrequencyGrid grid;
  Arraycd values;
  std::string label;

  double norm() const;
  void normalize();
};

/// Transform-limited Gaussian with the given intensity-FWHM duration,
/// sigma_omega = 2*sqrt(ln 2)/fwhm, L2-normalized.
SpectralAmplitude gaussian_spectrum(const FrequencyGrid& grid, double omega0,
                                    double fwhm_duration_s);

/// Order-n Hermite-Gauss spectral mode (order 0 is the Gaussian), L2-normalized.
SpectralAmplitude hermite_gauss_spectrum(const FrequencyGrid& grid, int order, double omega0,
                                         double sigma_omega);

/// Quadrature inner product sum conj(a)*b*spacing. Grids must match.
Complex overlap(const SpectralAmplitude& a, const SpectralAmplitude& b);

/// Peak field amplitude A_p = sqrt(2 P / (c eps0 n_p |integral alpha|^2)).
double pump_amplitude_scale(double peak_power_w, const SpectralAmplitude& alpha, double n_pump);

}  // namespace qfc
