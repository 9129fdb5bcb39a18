#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "gamow/gamow_vector.hpp"
#include "gamow/survival.hpp"
#include "test_util.hpp"

using gamow::Complex;
using gamow::SpectralDensity;
using doctest::Approx;

TEST_CASE("unit weight and A(0) = 1 for every density") {
  const SpectralDensity densities[] = {
      SpectralDensity::breit_wigner_full_line(2.0, 0.5),
      SpectralDensity::breit_wigner_truncated(10.0, 0.5),
      SpectralDensity::gaussian_truncated(10.0, 1.0),
  };
  for (const auto& d : densities) {
    CHECK(std::abs(gamow::amplitude(d, 0.0) - 1.0) < 1e-8);
    CHECK(gamow::nondecay_probability(d, 0.0) == Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("full-line Breit-Wigner decays exponentially; matches the Gamow factor") {
  const double e_r = 3.0, gamma = 0.4;
  auto d = SpectralDensity::breit_wigner_full_line(e_r, gamma);
  gamow::GamowVector state(gamow::ResonancePole(e_r, gamma), gamow::GamowKind::decaying);

  for (double gt : {0.5, 2.0, 8.0, 20.0}) {
    const double t = gt / gamma;
    const Complex a = gamow::amplitude(d, t);
    const double expected = std::exp(-0.5 * gamma * t);
    CHECK(std::abs(std::abs(a) - expected) < 1e-6 * expected);
    // cross-module consistency with the time-evolution factor
    CHECK(std::abs(a - gamow::time_evolution_factor(state, t)) < 1e-9 * expected);
  }
  CHECK(gamow::nondecay_probability(d, 2.0 / gamma) == Approx(std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("truncation is negligible at early times when E_R >> Gamma") {
  auto truncated = SpectralDensity::breit_wigner_truncated(10.0, 0.5);
  auto full = SpectralDensity::breit_wigner_full_line(10.0, 0.5);
  CHECK(std::abs(gamow::amplitude(truncated, 1.0) - gamow::amplitude(full, 1.0)) < 1e-2);
}

TEST_CASE("contour-rotated amplitude agrees with direct oscillatory quadrature") {
  // independent route: phase-resolved panels over [0, W] plus the analytic
  // tail bound integral_W^inf rho <= N (Gamma/2pi)/(W - E_R)
  const double e_r = 10.0, gamma = 0.5, t = 3.0;
  auto d = SpectralDensity::breit_wigner_truncated(e_r, gamma);
  const double window = e_r + 500.0 * gamma;
  auto direct = gamow::integrate_interval(
      [&](double e) { return d.value(e) * std::polar(1.0, -e * t); }, 0.0, window, {},
      d.features());
  const double tail = d.norm_constant() * (gamma / (2.0 * std::numbers::pi)) / (window - e_r);
  CHECK(std::abs(gamow::amplitude(d, t) - direct.value) < tail + 1e-8);
}

TEST_CASE("the contour route is continuous against the plain t = 0 integral") {
  // at t -> 0+ the residue term plus the rotated edge must reassemble the
  // plain normalization integral
  for (auto [e_r, gamma] : {std::pair{10.0, 0.5}, {2.0, 1.0}, {5.0, 0.1}}) {
    auto d = SpectralDensity::breit_wigner_truncated(e_r, gamma);
    CHECK(std::abs(gamow::amplitude(d, 1e-8) - gamow::amplitude(d, 0.0)) < 1e-6);
  }
}

TEST_CASE("Gaussian amplitude matches its closed form when truncation is invisible") {
  // for E_R = 10 sigma the support cut is ~e^{-50} and
  // A(t) = e^{-i E_R t} e^{-sigma^2 t^2 / 2} to that accuracy
  auto d = SpectralDensity::gaussian_truncated(10.0, 1.0);
  for (double t : {0.3, 1.0, 2.0}) {
    const gamow::Complex expected =
        std::polar(std::exp(-0.5 * t * t), -10.0 * t);
    CHECK(std::abs(gamow::amplitude(d, t) - expected) < 1e-6);
  }
}

TEST_CASE("probability stays within [0, 1]") {
  auto d1 = SpectralDensity::breit_wigner_truncated(5.0, 1.0);
  for (double t : {0.0, 0.5, 2.0, 10.0, 50.0, 200.0}) {
    const double p = gamow::nondecay_probability(d1, t);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0 + 1e-9);
  }
  auto d2 = SpectralDensity::gaussian_truncated(10.0, 1.0);
  for (double t : {0.0, 0.1, 1.0, 5.0}) {
    const double p = gamow::nondecay_probability(d2, t);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0 + 1e-9);
  }
}

TEST_CASE("short-time behavior of the truncated Gaussian is quadratic") {
  auto d = SpectralDensity::gaussian_truncated(10.0, 1.0);
  // energy moments by quadrature
  auto m1 = gamow::integrate_half_line([&](double e) { return Complex(e * d.value(e)); }, {},
                                       {9.0, 10.0, 11.0})
                .value.real();
  auto m2 = gamow::integrate_half_line([&](double e) { return Complex(e * e * d.value(e)); },
                                       {}, {9.0, 10.0, 11.0})
                .value.real();
  const double variance = m2 - m1 * m1;
  CHECK(variance == Approx(1.0).epsilon(1e-6));  // truncation at 10 sigma is invisible

  for (double t : {1e-2, 3e-2, 1e-1}) {
    CHECK(gamow::nondecay_probability(d, t) ==
          Approx(1.0 - variance * t * t).epsilon(1e-4));
  }
}

TEST_CASE("long-time power law of the truncated Breit-Wigner") {
  auto d = SpectralDensity::breit_wigner_truncated(5.0, 1.0);
  auto fit = gamow::longtime_exponent(d, 60.0, 200.0);
  CHECK(fit.fit.slope == Approx(-2.0).epsilon(0.1));
  CHECK(fit.fit.rms_residual < 0.05);

  // at the window's right edge the power law dominates the exponential
  CHECK(gamow::nondecay_probability(d, 200.0) > std::exp(-1.0 * 200.0));

  auto full = SpectralDensity::breit_wigner_full_line(5.0, 1.0);
  CHECK_THROWS_AS(gamow::longtime_exponent(full, 60.0, 200.0), std::invalid_argument);
  CHECK_THROWS_AS(gamow::longtime_exponent(d, 2.0, 6.0), gamow::WindowTooEarly);
}

TEST_CASE("automatic window detection lands in the power-law regime") {
  auto d = SpectralDensity::breit_wigner_truncated(5.0, 1.0);
  auto fit = gamow::longtime_exponent_auto(d, 200.0);
  CHECK(fit.fit.slope == Approx(-2.0).epsilon(0.15));
  CHECK(fit.t_min > 5.0);  // past the exponential era
}

TEST_CASE("crossover to the power law arrives later for higher resonance energies") {
  double previous = 0.0;
  for (double e_r : {2.0, 5.0, 10.0}) {
    auto d = SpectralDensity::breit_wigner_truncated(e_r, 1.0);
    double crossover = 0.0;
    for (double t = 1.0; t < 40.0; t += 0.25) {
      if (gamow::nondecay_probability(d, t) > 2.0 * std::exp(-1.0 * t)) {
        crossover = t;
        break;
      }
    }
    REQUIRE(crossover > 0.0);
    CHECK(crossover > previous);
    previous = crossover;
  }
}

TEST_CASE("zeno check: the short-time decay rate vanishes linearly in h") {
  auto d = SpectralDensity::gaussian_truncated(10.0, 1.0);
  const double est3 = gamow::zeno_check(d, 1e-3);
  CHECK(std::abs(est3) < 1e-2);
  CHECK(est3 < 0.0);  // probability decreases

  // halving h halves the estimate: the trend is linear across two decades
  const double est2 = gamow::zeno_check(d, 1e-2);
  const double est4 = gamow::zeno_check(d, 1e-4);
  CHECK(est2 / est3 == Approx(10.0).epsilon(0.05));
  CHECK(est3 / est4 == Approx(10.0).epsilon(0.05));

  auto bw = SpectralDensity::breit_wigner_truncated(10.0, 0.5);
  CHECK_THROWS_AS(gamow::zeno_check(bw, 1e-3), gamow::InfiniteMoment);
}

TEST_CASE("amplitude is Lipschitz with the first absolute moment as constant") {
  auto d = SpectralDensity::gaussian_truncated(10.0, 1.0);
  const double c = gamow::integrate_half_line(
                       [&](double e) { return Complex(std::abs(e) * d.value(e)); }, {},
                       {9.0, 10.0, 11.0})
                       .value.real();
  for (double t : {0.1, 0.7, 2.0}) {
    const double delta = 1e-3;
    const Complex diff = gamow::amplitude(d, t + delta) - gamow::amplitude(d, t);
    CHECK(std::abs(diff) <= 1.05 * c * delta);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(SpectralDensity::breit_wigner_full_line(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralDensity::breit_wigner_truncated(-1.0, 0.5), std::invalid_argument);
  auto d = SpectralDensity::gaussian_truncated(10.0, 1.0);
  CHECK_THROWS_AS(gamow::amplitude(d, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(gamow::zeno_check(d, 0.0), std::invalid_argument);
}
