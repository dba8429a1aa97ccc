#include "qfc/spectra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfc {

using constants::c0;
using constants::eps0;
using constants::pi;

FrequencyGrid::FrequencyGrid(double center, double spacing, Index n)
    : center_rad_s(center), spacing_rad_s(spacing), count(n) {
  if (!(spacing > 0)) throw std::invalid_argument("grid spacing must be positive");
  if (count < 8) throw std::invalid_argument("grid needs at least 8 samples");
  if (!(sample(0) > 0))
    throw std::invalid_argument("grid extends to nonpositive frequencies");
}

Arrayd FrequencyGrid::samples() const {
  Arrayd s(count);
  for (Index k = 0; k < count; ++k) s[k] = sample(k);
  return s;
}

double SpectralAmplitude::norm() const {
  return std::sqrt(values.abs2().sum() * grid.spacing_rad_s);
}

void SpectralAmplitude::normalize() {
  const double n = norm();
  if (!(n > 0)) throw std::domain_error("cannot normalize an all-zero amplitude");
  values /= n;
}

namespace {

void check_support(const FrequencyGrid& grid, double omega0, double half_span,
                   const char* what) {
  if (omega0 - half_span < grid.min() || omega0 + half_span > grid.max()) {
    std::ostringstream os;
    os << what << " support [" << omega0 - half_span << ", " << omega0 + half_span
       << "] rad/s exceeds grid [" << grid.min() << ", " << grid.max() << "] rad/s";
    throw std::domain_error(os.str());
  }
}

}  // namespace

SpectralAmplitude gaussian_spectrum(const FrequencyGrid& grid, double omega0,
                                    double fwhm_duration_s) {
  if (!(fwhm_duration_s > 0)) throw std::invalid_argument("duration must be positive");
  const double sigma = 2.0 * std::sqrt(std::log(2.0)) / fwhm_duration_s;
  check_support(grid, omega0, 5.0 * sigma, "gaussian");
  SpectralAmplitude a{grid, Arraycd(grid.count), "gaussian"};
  for (Index k = 0; k < grid.count; ++k) {
    const double d = grid.sample(k) - omega0;
    a.values[k] = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  a.normalize();
  return a;
}

SpectralAmplitude hermite_gauss_spectrum(const FrequencyGrid& grid, int order, double omega0,
                                         double sigma_omega) {
  if (order < 0 || order > 10)
    throw std::invalid_argument("hermite-gauss order must be in [0, 10]");
  if (!(sigma_omega > 0)) throw std::invalid_argument("sigma must be positive");
  const double turning = std::sqrt(2.0 * order + 1.0);
  check_support(grid, omega0, (turning + 5.0) * sigma_omega, "hermite-gauss");

  SpectralAmplitude a{grid, Arraycd(grid.count), "hg" + std::to_string(order)};
  for (Index k = 0; k < grid.count; ++k) {
    const double u = (grid.sample(k) - omega0) / sigma_omega;
    double hm1 = 0.0, h = 1.0;  // physicists' Hermite recurrence
    for (int n = 0; n < order; ++n) {
      const double next = 2.0 * u * h - 2.0 * n * hm1;
      hm1 = h;
      h = next;
    }
    a.values[k] = h * std::exp(-u * u / 2.0);
  }
  a.normalize();
  return a;
}

Complex overlap(const SpectralAmplitude& a, const SpectralAmplitude& b) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument("overlap requires identical frequency grids");
  return (a.values.conjugate() * b.values).sum() * a.grid.spacing_rad_s;
}

double pump_amplitude_scale(double peak_power_w, const SpectralAmplitude& alpha,
                            double n_pump) {
  if (!(peak_power_w > 0)) throw std::invalid_argument("peak power must be positive");
  const Complex integral = alpha.values.sum() * alpha.grid.spacing_rad_s;
  const double mag2 = std::norm(integral);
  // Cauchy-Schwarz bound: |int alpha|^2 <= norm^2 * span; degenerate far below it
  const double span = alpha.grid.spacing_rad_s * static_cast<double>(alpha.grid.count);
  const double n2 = alpha.norm() * alpha.norm();
  if (mag2 < 1e-12 * n2 * span) {
    throw std::domain_error(
        "degenerate pump: spectral amplitude integrates to zero (odd symmetry?)");
  }
  return std::sqrt(2.0 * peak_power_w / (c0 * eps0 * n_pump * mag2));
}

}  // namespace qfc
