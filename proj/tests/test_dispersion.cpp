#include <doctest.h>

#include <cmath>
#include <random>

#include "qfc/dispersion.hpp"

using namespace qfc;
using constants::c0;
using constants::pi;

namespace {

// analytic group velocity for the generic Sellmeier form (test-side oracle)
double analytic_vg(const DispersionModel& m, double omega) {
  const double lam_um = 2 * pi * c0 / omega * 1e6;
  auto co = [&](const char* k) {
    auto it = m.coefficients.find(k);
    return it == m.coefficients.end() ? 0.0 : it->second;
  };
  const double t_c = m.temperature_k - 273.15;
  const double f = (t_c - co("t0")) * (t_c + co("t1"));
  const double l2 = lam_um * lam_um;
  double n2 = co("c0") + co("c0t") * f - co("r") * l2;
  double dn2_dl = -2.0 * co("r") * lam_um;
  for (const char* k : {"1", "2"}) {
    const double p = co((std::string("p") + k).c_str()) +
                     co((std::string("p") + k + "t").c_str()) * f;
    if (p == 0.0) continue;
    const double q = co((std::string("q") + k).c_str()) +
                     co((std::string("q") + k + "t").c_str()) * f;
    const double den = l2 - q * q;
    n2 += p / den;
    dn2_dl += -p * 2.0 * lam_um / (den * den);
  }
  const double n = std::sqrt(n2);
  const double dn_dl = dn2_dl / (2.0 * n);
  const double ng = n - lam_um * dn_dl;
  return c0 / ng;
}

}  // namespace

TEST_SUITE("dispersion") {
  TEST_CASE("bulk indices at 190 C sit near the published effective values") {
    const auto e = lithium_niobate_extraordinary(463.15);
    const auto o = lithium_niobate_ordinary(463.15);
    CHECK(refractive_index(e, 870e-9) == doctest::Approx(2.18).epsilon(0.05));
    CHECK(refractive_index(o, 1550e-9) == doctest::Approx(2.21).epsilon(0.05));
    CHECK(refractive_index(o, 557.2e-9) == doctest::Approx(2.32).epsilon(0.05));
    CHECK(std::abs(refractive_index(e, 870e-9) - 2.18) < 0.1);
    CHECK(std::abs(refractive_index(o, 1550e-9) - 2.21) < 0.1);
  }

  TEST_CASE("index evaluation is pure") {
    const auto e = lithium_niobate_extraordinary();
    CHECK(refractive_index(e, 1.3e-6) == refractive_index(e, 1.3e-6));
  }

  TEST_CASE("out-of-window wavelength names the window") {
    const auto o = lithium_niobate_ordinary();
    CHECK_THROWS_WITH_AS(refractive_index(o, 2.5e-6),
                         doctest::Contains("validity window"), std::domain_error);
  }

  TEST_CASE("n stays above 1 across the validity window") {
    for (const auto& m : {lithium_niobate_ordinary(), lithium_niobate_extraordinary()})
      for (double um = 0.4; um <= 2.0; um += 0.01)
        CHECK(refractive_index(m, um * 1e-6) > 1.0);
  }

  TEST_CASE("beta of the fixed-index stub") {
    const auto m = fixed_index(2.0);
    const double w = 2 * pi * c0 / 1e-6;
    CHECK(beta(m, w) == doctest::Approx(4e6 * pi).epsilon(1e-12));
    // definition consistency
    CHECK(beta(m, w) ==
          doctest::Approx(refractive_index(m, 1e-6) * w / c0).epsilon(1e-12));
  }

  TEST_CASE("beta increases monotonically in omega for the bulk model") {
    const auto o = lithium_niobate_ordinary();
    double prev = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double um = 0.45 + (1.95 - 0.45) * k / 999.0;
      const double b = beta(o, 2 * pi * c0 / (um * 1e-6));
      if (k) CHECK(b < prev);  // omega decreases along increasing wavelength
      prev = b;
    }
  }

  TEST_CASE("no dispersion means vg = c/n exactly") {
    const auto m = fixed_index(2.0);
    CHECK(group_velocity(m, 2 * pi * c0 / 1e-6) == doctest::Approx(c0 / 2).epsilon(1e-12));
  }

  TEST_CASE("finite-difference group velocity matches the analytic derivative") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> lam(0.5e-6, 1.9e-6);
    for (const auto& m : {lithium_niobate_ordinary(), lithium_niobate_extraordinary()})
      for (int t = 0; t < 50; ++t) {
        const double w = 2 * pi * c0 / lam(rng);
        CHECK(group_velocity(m, w) == doctest::Approx(analytic_vg(m, w)).epsilon(1e-6));
      }
  }

  TEST_CASE("ordinary 1550 and extraordinary 870 group velocities nearly match") {
    const auto o = lithium_niobate_ordinary(463.15);
    const auto e = lithium_niobate_extraordinary(463.15);
    const double vi = group_velocity(o, 2 * pi * c0 / 1550e-9);
    const double vp = group_velocity(e, 2 * pi * c0 / 870e-9);
    CHECK(std::abs(vi - vp) <= 0.02 * vi);
  }

  TEST_CASE("GVM search lands near the matched pump and beats a brute scan") {
    const WaveSpec input{1550e-9, Axis::ordinary, WaveRole::input};
    const auto o = lithium_niobate_ordinary(463.15);
    const auto e = lithium_niobate_extraordinary(463.15);
    const double lp = find_gvm_pump(input, Axis::extraordinary, e, o, {700e-9, 1000e-9});
    CHECK(std::abs(lp - 870e-9) < 50e-9);

    const double vi = group_velocity(o, 2 * pi * c0 / 1550e-9);
    const double gap_found = std::abs(group_velocity(e, 2 * pi * c0 / lp) - vi);
    // brute-force oracle: no scanned wavelength beats the bisection result
    // (slack covers the 0.01 nm bisection resolution)
    for (int k = 0; k < 10000; ++k) {
      const double lam = 700e-9 + (1000e-9 - 700e-9) * k / 9999.0;
      const double gap = std::abs(group_velocity(e, 2 * pi * c0 / lam) - vi);
      CHECK(gap_found <= gap + 1e-5 * vi);
    }
    // endpoint check from the spec's re-evaluation oracle
    CHECK(gap_found < std::abs(group_velocity(e, 2 * pi * c0 / 700e-9) - vi));
    CHECK(gap_found < std::abs(group_velocity(e, 2 * pi * c0 / 1000e-9) - vi));
  }

  TEST_CASE("GVM with identical models degenerates to the input wavelength") {
    const auto o = lithium_niobate_ordinary(463.15);
    const WaveSpec input{900e-9, Axis::ordinary, WaveRole::input};
    const double lp = find_gvm_pump(input, Axis::ordinary, o, o, {700e-9, 1000e-9});
    CHECK(lp == doctest::Approx(900e-9).epsilon(1e-4));

    const WaveSpec outside{1550e-9, Axis::ordinary, WaveRole::input};
    CHECK_THROWS_WITH_AS(
        find_gvm_pump(outside, Axis::ordinary, o, o, {700e-9, 1000e-9}),
        doctest::Contains("no GVM solution"), std::runtime_error);
  }

  TEST_CASE("output wavelength: paper values and algebraic inverses") {
    const double lo = output_wavelength(Flavor::sfg, 1550e-9, 870e-9);
    CHECK(lo == doctest::Approx(557.2e-9).epsilon(0.001));
    CHECK(output_wavelength(Flavor::dfg, lo, 870e-9) ==
          doctest::Approx(1550e-9).epsilon(1e-12));
    CHECK(output_wavelength(Flavor::sfg, 1e-6, 1e-6) == doctest::Approx(0.5e-6));
    CHECK_THROWS_AS(output_wavelength(Flavor::dfg, 1550e-9, 870e-9), std::domain_error);
  }

  TEST_CASE("round trip SFG then DFG restores the input wavelength") {
    for (double li : {1.3e-6, 1.55e-6, 1.7e-6}) {
      const double lo = output_wavelength(Flavor::sfg, li, 870e-9);
      CHECK(output_wavelength(Flavor::dfg, lo, 870e-9) ==
            doctest::Approx(li).epsilon(1e-12));
    }
  }

  TEST_CASE("poling period reproduces the published design value") {
    const double bp = 2 * pi * 2.18 / 870e-9;
    const double bi = 2 * pi * 2.21 / 1550e-9;
    const double bo = 2 * pi * 2.32 / 557e-9;
    const auto p = poling_period(Flavor::sfg, bp, bi, bo);
    CHECK(p.period_m * 1e6 == doctest::Approx(4.28).epsilon(0.005));
    CHECK(p.direction == -1);
    CHECK(!p.phasematched);
  }

  TEST_CASE("exactly phasematched combination signals no poling") {
    const auto p = poling_period(Flavor::sfg, 1e6, 2e6, 3e6);
    CHECK(p.phasematched);
    CHECK(std::isinf(p.signed_period()));
  }

  TEST_CASE("poling period conditioning under a tiny uniform scale") {
    const double bp = 2 * pi * 2.18 / 870e-9, bi = 2 * pi * 2.21 / 1550e-9,
                 bo = 2 * pi * 2.32 / 557e-9;
    const double s = 1.0 + 1e-15;
    const auto a = poling_period(Flavor::sfg, bp, bi, bo);
    const auto b = poling_period(Flavor::sfg, bp * s, bi * s, bo * s);
    CHECK(std::abs(a.period_m - b.period_m) / a.period_m < 1e-12);
    CHECK(a.period_m > 0);
    CHECK(std::isfinite(a.period_m));
  }

  TEST_CASE("phase mismatch vanishes at the design center with auto poling") {
    const auto e = lithium_niobate_extraordinary(463.15);
    const auto o = lithium_niobate_ordinary(463.15);
    const double wi = 2 * pi * c0 / 1550e-9, wp = 2 * pi * c0 / 870e-9;
    const double wo = wi + wp;
    const auto pol = poling_period(Flavor::sfg, beta(e, wp), beta(o, wi), beta(o, wo));
    const double db =
        phase_mismatch(Flavor::sfg, wi, wo, e, o, o, pol.signed_period());
    CHECK(std::abs(db * 0.01 / 2) < 1e-6);
  }

  TEST_CASE("SFG and DFG mismatches mirror under role swap") {
    const auto e = lithium_niobate_extraordinary(463.15);
    const auto o = lithium_niobate_ordinary(463.15);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-2e12, 2e12);
    const double wi0 = 2 * pi * c0 / 1550e-9, wp0 = 2 * pi * c0 / 870e-9;
    const double wo0 = wi0 + wp0;
    const double pol = 4.3e-6;
    for (int t = 0; t < 100; ++t) {
      const double wi = wi0 + d(rng), wo = wo0 + d(rng);
      const double sfg = phase_mismatch(Flavor::sfg, wi, wo, e, o, o, pol);
      // role swap: the DFG with input wo and output wi sees the mirrored mismatch
      const double dfg = phase_mismatch(Flavor::dfg, wo, wi, e, o, o, -pol);
      CHECK(sfg == doctest::Approx(-dfg).epsilon(1e-10));
    }
  }

  TEST_CASE("phase mismatch is continuous in omega") {
    const auto e = lithium_niobate_extraordinary(463.15);
    const auto o = lithium_niobate_ordinary(463.15);
    const double wi = 2 * pi * c0 / 1550e-9, wp = 2 * pi * c0 / 870e-9;
    const double wo = wi + wp;
    const double base = phase_mismatch(Flavor::sfg, wi, wo, e, o, o, 4.3e-6);
    double prev_gap = 1e100;
    for (double delta = 1e9; delta >= 1e5; delta /= 10) {
      const double gap =
          std::abs(phase_mismatch(Flavor::sfg, wi + delta, wo, e, o, o, 4.3e-6) - base);
      CHECK(gap < prev_gap + 1e-9);
      prev_gap = gap;
    }
  }

  TEST_CASE("tabulated model interpolates the generating curve") {
    const auto o = lithium_niobate_ordinary(463.15);
    Arrayd lam(81), n(81);
    for (int k = 0; k < 81; ++k) {
      lam[k] = 0.5 + 1.4 * k / 80.0;
      n[k] = refractive_index(o, lam[k] * 1e-6);
    }
    const auto tab = tabulated_index(lam, n, Axis::ordinary);
    for (double um = 0.55; um < 1.85; um += 0.037)
      CHECK(refractive_index(tab, um * 1e-6) ==
            doctest::Approx(refractive_index(o, um * 1e-6)).epsilon(1e-7));
  }
}
