#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qfc/spectra.hpp"

using namespace qfc;
using constants::pi;

namespace {

FrequencyGrid test_grid(Index n = 1024, double sigma = 5.5e12, double center = 1.2e15) {
  return FrequencyGrid(center, 14.0 * sigma / static_cast<double>(n), n);
}

// time-domain intensity FWHM by direct Fourier synthesis (oracle)
double time_fwhm(const SpectralAmplitude& a) {
  const Arrayd w = a.grid.samples();
  const double w0 = a.grid.center_rad_s;
  auto intensity = [&](double t) {
    Complex e = 0.0;
    for (Index k = 0; k < w.size(); ++k)
      e += a.values[k] * std::polar(1.0, -(w[k] - w0) * t);
    return std::norm(e);
  };
  const double peak = intensity(0.0);
  auto cross = [&](double sign) {
    double lo = 0.0, hi = 2e-12;
    while (intensity(sign * hi) > peak / 2) hi *= 2;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (intensity(sign * mid) > peak / 2 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  return cross(+1.0) + cross(-1.0);
}

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("grid samples follow the center/spacing contract") {
    FrequencyGrid g(1e15, 1e12, 16);
    CHECK(g.sample(8) == 1e15);
    CHECK(g.sample(0) == 1e15 - 8e12);
    CHECK(g.samples().size() == 16);
    CHECK_THROWS_AS(FrequencyGrid(1e15, -1.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyGrid(1e15, 1e12, 4), std::invalid_argument);
    CHECK_THROWS_AS(FrequencyGrid(1e12, 1e12, 512), std::invalid_argument);
  }

  TEST_CASE("gaussian spectrum is normalized with the peak at omega0") {
    const auto g = test_grid();
    const auto a = gaussian_spectrum(g, g.center_rad_s, 300e-15);
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-10));
    Index imax = 0;
    a.values.abs().maxCoeff(&imax);
    CHECK(g.sample(imax) == g.center_rad_s);
  }

  TEST_CASE("gaussian duration round-trips through Fourier synthesis") {
    const auto g = test_grid();
    const auto a = gaussian_spectrum(g, g.center_rad_s, 300e-15);
    CHECK(time_fwhm(a) == doctest::Approx(300e-15).epsilon(0.02));
  }

  TEST_CASE("truncated support is rejected with the required span") {
    const auto g = test_grid(64, 5.5e12);
    CHECK_THROWS_WITH_AS(gaussian_spectrum(g, g.center_rad_s + 6e13, 300e-15),
                         doctest::Contains("support"), std::domain_error);
  }

  TEST_CASE("order zero hermite-gauss equals the gaussian") {
    const auto g = test_grid();
    const double fwhm = 300e-15;
    const double sigma = 2 * std::sqrt(std::log(2.0)) / fwhm;
    const auto hg = hermite_gauss_spectrum(g, 0, g.center_rad_s, sigma);
    const auto ga = gaussian_spectrum(g, g.center_rad_s, fwhm);
    CHECK((hg.values - ga.values).abs().maxCoeff() < 1e-12);
  }

  TEST_CASE("hermite-gauss family is orthonormal") {
    const auto g = test_grid(2048);
    const double sigma = 5.5e12;
    std::vector<SpectralAmplitude> fam;
    for (int n = 0; n <= 10; ++n)
      fam.push_back(hermite_gauss_spectrum(g, n, g.center_rad_s, sigma));
    double frob = 0.0;
    for (int m = 0; m <= 10; ++m)
      for (int n = 0; n <= 10; ++n) {
        const double target = m == n ? 1.0 : 0.0;
        frob += std::norm(overlap(fam[m], fam[n]) - target);
      }
    CHECK(std::sqrt(frob) < 1e-8);
    CHECK(std::abs(overlap(fam[0], fam[1])) < 1e-10);
    for (int n = 0; n <= 5; ++n)
      CHECK(std::abs(overlap(fam[n], fam[n]) - 1.0) < 1e-10);
  }

  TEST_CASE("overlap matches the analytic two-gaussian value") {
    const auto g = test_grid(2048);
    const double s = 4e12;
    const auto a = hermite_gauss_spectrum(g, 0, g.center_rad_s, s);
    const auto b = hermite_gauss_spectrum(g, 0, g.center_rad_s, 2 * s);
    CHECK(std::norm(overlap(a, b)) == doctest::Approx(0.8).epsilon(1e-6));
  }

  TEST_CASE("overlap is hermitian and sesquilinear") {
    const auto g = test_grid();
    auto a = gaussian_spectrum(g, g.center_rad_s, 300e-15);
    auto b = hermite_gauss_spectrum(g, 2, g.center_rad_s, 5e12);
    auto c = hermite_gauss_spectrum(g, 3, g.center_rad_s, 4e12);
    CHECK(overlap(a, b) == std::conj(overlap(b, a)));

    std::mt19937 rng(11);
    std::normal_distribution<double> d;
    for (int t = 0; t < 5; ++t) {
      const Complex u(d(rng), d(rng)), v(d(rng), d(rng));
      SpectralAmplitude mix{g, u * b.values + v * c.values, "mix"};
      const Complex lhs = overlap(a, mix);
      const Complex rhs = u * overlap(a, b) + v * overlap(a, c);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }

  TEST_CASE("overlap requires identical grids") {
    const auto a = gaussian_spectrum(test_grid(), 1.2e15, 300e-15);
    const auto b = gaussian_spectrum(test_grid(512), 1.2e15, 300e-15);
    CHECK_THROWS_AS(overlap(a, b), std::invalid_argument);
  }

  TEST_CASE("pump amplitude scales as sqrt of power") {
    const auto g = test_grid();
    const auto a = gaussian_spectrum(g, g.center_rad_s, 300e-15);
    const double a1 = pump_amplitude_scale(10.0, a, 2.2);
    const double a2 = pump_amplitude_scale(20.0, a, 2.2);
    CHECK(a1 > 0);
    CHECK(a2 / a1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }

  TEST_CASE("gaussian pump integral matches the closed form") {
    const auto g = test_grid(4096);
    const double sigma = 5.5e12;
    const auto a = hermite_gauss_spectrum(g, 0, g.center_rad_s, sigma);
    const Complex integral = a.values.sum() * g.spacing_rad_s;
    const double closed = std::sqrt(2.0 * std::sqrt(pi) * sigma);
    CHECK(std::abs(integral) == doctest::Approx(closed).epsilon(1e-6));
  }

  TEST_CASE("odd pump spectra are rejected as degenerate") {
    const auto g = test_grid();
    const auto odd = hermite_gauss_spectrum(g, 1, g.center_rad_s, 5e12);
    CHECK_THROWS_WITH_AS(pump_amplitude_scale(10.0, odd, 2.2),
                         doctest::Contains("degenerate"), std::domain_error);
  }
}
