#include <doctest.h>

#include <cmath>

#include "qfc/schmidt.hpp"
#include "test_helpers.hpp"

using namespace qfc;
using constants::c0;
using constants::pi;

namespace {

// stub process with analytically known mismatch: all indices constant, so
// dbeta = (n_p w_p + n_i w_i - n_o w_o)/c - grating
ProcessSpec stub_process(double n_po, double n_i, double n_o, double length_m) {
  ProcessSpec p;
  p.flavor = Flavor::sfg;
  p.input = {1550e-9, Axis::ordinary, WaveRole::input};
  p.pump = {870e-9, Axis::extraordinary, WaveRole::pump};
  p.output = {output_wavelength(Flavor::sfg, 1550e-9, 870e-9), Axis::ordinary,
              WaveRole::output};
  p.pump_model = fixed_index(n_po, Axis::extraordinary);
  p.input_model = fixed_index(n_i, Axis::ordinary);
  p.output_model = fixed_index(n_o, Axis::ordinary);
  // dispersion-free stubs hold everywhere; open the windows for wide scans
  p.pump_model.valid_window_um = {0.01, 1000.0};
  p.input_model.valid_window_um = {0.01, 1000.0};
  p.output_model.valid_window_um = {0.01, 1000.0};
  p.length_m = length_m;
  p.poling_period_m = std::numeric_limits<double>::infinity();
  p.pump_shape.fwhm_duration_s = 300e-15;
  return p;
}

}  // namespace

TEST_SUITE("jsa") {
  TEST_CASE("phasematching is exactly 1 at the auto-poled center") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 64, 64);
    const Matrixd phi = phasematching_matrix(p, gi, go, PhasematchForm::sinc);
    CHECK(phi(gi.count / 2, go.count / 2) == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("sinc and gaussian forms at a hand-computed mismatch point") {
    // constant indices 2/2/2.1 make dbeta = -0.1 w_o / c; pick L so that the
    // center sits exactly at dbeta*L/2 = -1
    const double wo0 = 2 * pi * c0 / output_wavelength(Flavor::sfg, 1550e-9, 870e-9);
    const double length = 2.0 * c0 / (0.1 * wo0);
    const ProcessSpec p = stub_process(2.0, 2.0, 2.1, length);
    const auto [gi, go] = default_grids(p, 64, 64);

    const Matrixd s = phasematching_matrix(p, gi, go, PhasematchForm::sinc);
    const Matrixd g = phasematching_matrix(p, gi, go, PhasematchForm::gaussian_approx);
    const Index k = gi.count / 2, l = go.count / 2;
    CHECK(s(k, l) == doctest::Approx(0.8414709848).epsilon(1e-9));
    CHECK(g(k, l) == doctest::Approx(std::exp(-0.193)).epsilon(1e-9));
    CHECK(std::exp(-0.193) == doctest::Approx(0.8245).epsilon(1e-4));
  }

  TEST_CASE("sinc form has its first zero at dbeta L/2 = pi") {
    const double wo0 = 2 * pi * c0 / output_wavelength(Flavor::sfg, 1550e-9, 870e-9);
    const double length = 2.0 * c0 / (0.1 * wo0);  // u = -w_o dependence as above
    const ProcessSpec p = stub_process(2.0, 2.0, 2.1, length);
    // u(l) = -0.05 * L * w_o(l) / c: scan a fine output grid for the sign change
    FrequencyGrid go(wo0 * 3.2, wo0 * 0.002, 2048);
    FrequencyGrid gi(2 * pi * c0 / 1550e-9, 1e9, 8);
    const Matrixd s = phasematching_matrix(p, gi, go, PhasematchForm::sinc);
    for (Index l = 0; l + 1 < go.count; ++l) {
      if (s(0, l) > 0 && s(0, l + 1) <= 0) {
        const double u_here = 0.05 * length * go.sample(l) / c0;
        CHECK(u_here == doctest::Approx(pi).epsilon(0.005));
        return;
      }
    }
    FAIL("no sinc zero crossing found in the scanned band");
  }

  TEST_CASE("gaussian pump factor peaks on the energy-conservation line") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 128, 128);
    const SpectralAmplitude alpha = pump_spectrum(p, gi, go);
    const Matrixcd a = pump_matrix(p, gi, go, alpha);
    const double wp0 = p.omega_pump();
    for (Index k = 0; k < gi.count; k += 17) {
      // only rows whose achievable detuning range contains the pump center
      const double lo = go.min() - gi.sample(k), hi = go.max() - gi.sample(k);
      if (wp0 < lo + 2 * go.spacing_rad_s || wp0 > hi - 2 * go.spacing_rad_s) continue;
      Index lmax = 0;
      a.row(k).cwiseAbs().maxCoeff(&lmax);
      const double det = go.sample(lmax) - gi.sample(k);
      CHECK(std::abs(det - wp0) <= 1.5 * go.spacing_rad_s);
    }
  }

  TEST_CASE("mirrored-role builds transpose the pump factor") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 96, 96);
    const SpectralAmplitude alpha = pump_spectrum(p, gi, go);

    ProcessSpec mirror = p;
    mirror.flavor = Flavor::dfg;
    std::swap(mirror.input, mirror.output);
    mirror.input.role = WaveRole::input;
    mirror.output.role = WaveRole::output;
    std::swap(mirror.input_model, mirror.output_model);

    const Matrixcd fwd = pump_matrix(p, gi, go, alpha);
    const Matrixcd back = pump_matrix(mirror, go, gi, alpha);
    CHECK((fwd - back.transpose()).cwiseAbs().maxCoeff() < 1e-18);
  }

  TEST_CASE("pump rows reproduce the pump spectrum up to interpolation error") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 128, 256);
    const SpectralAmplitude alpha = pump_spectrum(p, gi, go);
    const Matrixcd a = pump_matrix(p, gi, go, alpha);

    const double sigma = p.pump_shape.sigma_omega();
    const double peak = std::pow(pi * sigma * sigma, -0.25);
    const double wp0 = p.omega_pump();
    for (Index k = 0; k < gi.count; k += 31) {
      for (Index l = 0; l < go.count; l += 7) {
        const double det = go.sample(l) - gi.sample(k);
        const double exact =
            peak * std::exp(-(det - wp0) * (det - wp0) / (2 * sigma * sigma));
        CHECK(std::abs(a(k, l).real() - exact) <= 1e-6 * peak);
      }
    }
  }

  TEST_CASE("pump coverage error names the detuning range") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 64, 64);
    FrequencyGrid tiny(p.omega_pump(), 1e9, 16);
    SpectralAmplitude alpha{tiny, Arraycd::Ones(16), "narrow"};
    CHECK_THROWS_WITH_AS(pump_matrix(p, gi, go, alpha), doctest::Contains("detuning"),
                         std::domain_error);
  }

  TEST_CASE("the joint spectrum is unit-normalized") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 256, 256);
    const auto jsa = build_jsa(p, gi, go, PhasematchForm::sinc);
    CHECK(jsa.quad_norm() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(jsa.normalization > 0);
  }

  TEST_CASE("normalization is homogeneous in the pump amplitude") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 96, 96);
    SpectralAmplitude alpha = pump_spectrum(p, gi, go);
    const auto ref = build_jsa(p, gi, go, PhasematchForm::sinc, alpha);
    alpha.values *= 3.0;
    const auto scaled = build_jsa(p, gi, go, PhasematchForm::sinc, alpha);
    CHECK(scaled.normalization == doctest::Approx(3.0 * ref.normalization).epsilon(1e-12));
    CHECK((scaled.values - ref.values).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("an all-zero pump yields the empty-spectrum error") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 64, 64);
    SpectralAmplitude alpha = pump_spectrum(p, gi, go);
    alpha.values.setZero();
    CHECK_THROWS_WITH_AS(build_jsa(p, gi, go, PhasematchForm::sinc, alpha),
                         doctest::Contains("empty"), std::domain_error);
  }

  TEST_CASE("group-velocity matching keeps the phasematching ridge horizontal") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 256, 256);
    const Matrixd phi = phasematching_matrix(p, gi, go, PhasematchForm::sinc);
    const double sigma = p.pump_shape.sigma_omega();
    Index ref = 0;
    phi.row(gi.count / 2).cwiseAbs().maxCoeff(&ref);
    for (Index k = 0; k < gi.count; ++k) {
      if (std::abs(gi.sample(k) - gi.center_rad_s) > 2 * sigma) continue;
      Index lmax = 0;
      phi.row(k).cwiseAbs().maxCoeff(&lmax);
      CHECK(std::abs(static_cast<double>(lmax - ref)) < 2.0);
    }
  }

  TEST_CASE("engineered process is strongly single-mode") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 256, 256);
    const auto sd = schmidt_decompose(build_jsa(p, gi, go, PhasematchForm::sinc));
    CHECK(sd.kappas[0] * sd.kappas[0] >= 0.9);
  }

  TEST_CASE("a quasi-cw pump flattens the Schmidt spectrum") {
    ProcessSpec p = test::engineered_process();
    p.pump_shape.fwhm_duration_s = 30e-12;
    FrequencyGrid gi(p.omega_input(), 2 * 3e12 / 512, 512);
    FrequencyGrid go(p.omega_output(), 2 * 3e12 / 512, 512);
    const auto jsa = build_jsa(p, gi, go, PhasematchForm::sinc);
    const auto sd = schmidt_decompose(jsa);
    CHECK(sd.kappas[0] * sd.kappas[0] < 0.2);
  }

  TEST_CASE("mirrored SFG and DFG joint spectra are transposes") {
    const ProcessSpec p = test::engineered_process();
    const auto [gi, go] = default_grids(p, 96, 96);

    ProcessSpec mirror = p;
    mirror.flavor = Flavor::dfg;
    std::swap(mirror.input, mirror.output);
    mirror.input.role = WaveRole::input;
    mirror.output.role = WaveRole::output;
    std::swap(mirror.input_model, mirror.output_model);

    const auto fwd = build_jsa(p, gi, go, PhasematchForm::sinc);
    const auto back = build_jsa(mirror, go, gi, PhasematchForm::sinc);
    CHECK(fwd.normalization == doctest::Approx(back.normalization).epsilon(1e-10));
    CHECK((fwd.values - back.values.transpose().conjugate()).cwiseAbs().maxCoeff() <
          1e-10);
  }

  TEST_CASE("energy-conservation validation rejects inconsistent centers") {
    ProcessSpec p = test::engineered_process();
    p.output.center_wavelength_m *= 1.01;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("energy conservation"),
                         std::invalid_argument);
  }
}
