#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gamow/delta_shell.hpp"
#include "test_util.hpp"

using gamow::Complex;
using gamow::DeltaShellModel;
using gamow::KWindow;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent zero-location oracle: the argument principle on rectangles.
// The winding number of F around a box counts its zeros; quadrisecting the
// box and following the count localizes one without derivatives or seeds.
template <class F>
int winding_number(F&& f, double re0, double re1, double im0, double im1, int per_side = 500) {
  std::vector<Complex> corners = {{re0, im0}, {re1, im0}, {re1, im1}, {re0, im1}};
  double total = 0.0;
  Complex prev = f(corners[0]);
  for (int side = 0; side < 4; ++side) {
    const Complex a = corners[side];
    const Complex b = corners[(side + 1) % 4];
    for (int i = 1; i <= per_side; ++i) {
      const Complex z = a + (b - a) * (static_cast<double>(i) / per_side);
      const Complex v = f(z);
      total += std::arg(v / prev);  // increment wrapped to (-pi, pi]
      prev = v;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

template <class F>
Complex locate_zero_by_subdivision(F&& f, double re0, double re1, double im0, double im1,
                                   double target = 1e-6) {
  REQUIRE(winding_number(f, re0, re1, im0, im1) == 1);
  while (std::max(re1 - re0, im1 - im0) > target) {
    const double rm = 0.5 * (re0 + re1);
    const double im = 0.5 * (im0 + im1);
    struct Box {
      double a, b, c, d;
    };
    const Box boxes[4] = {{re0, rm, im0, im}, {rm, re1, im0, im},
                          {re0, rm, im, im1}, {rm, re1, im, im1}};
    bool descended = false;
    for (const Box& box : boxes) {
      if (winding_number(f, box.a, box.b, box.c, box.d, 120) >= 1) {
        re0 = box.a;
        re1 = box.b;
        im0 = box.c;
        im1 = box.d;
        descended = true;
        break;
      }
    }
    REQUIRE(descended);
  }
  return {0.5 * (re0 + re1), 0.5 * (im0 + im1)};
}

}  // namespace

TEST_CASE("free particle: unit Jost function and no poles") {
  DeltaShellModel free{0.0, 1.0, 1.0};
  for (int trial = 0; trial < 8; ++trial) {
    const Complex k(testutil::uniform(-5, 5), testutil::uniform(-5, 5));
    CHECK(std::abs(gamow::jost_function(free, k) - 1.0) < 1e-15);
    CHECK(std::abs(gamow::s_matrix(free, k) - 1.0) < 1e-15);
  }
  CHECK_THROWS_AS(gamow::find_resonances(free, KWindow{}), gamow::NoPolesInWindow);
}

TEST_CASE("Schwarz reflection: jost(-k*) = jost(k)*") {
  DeltaShellModel model{5.0, 1.0, 1.0};
  for (int trial = 0; trial < 10; ++trial) {
    const Complex k(testutil::uniform(-4, 4), testutil::uniform(-3, 3));
    const Complex lhs = gamow::jost_function(model, -std::conj(k));
    const Complex rhs = std::conj(gamow::jost_function(model, k));
    CHECK(std::abs(lhs - rhs) < 1e-13 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("analytic Jost derivative matches a central difference") {
  DeltaShellModel model{7.0, 1.3, 1.0};
  for (int trial = 0; trial < 8; ++trial) {
    const Complex k(testutil::uniform(-3, 3), testutil::uniform(-2, 2));
    const double h = 1e-6;
    const Complex numeric =
        (gamow::jost_function(model, k + h) - gamow::jost_function(model, k - h)) / (2.0 * h);
    CHECK(std::abs(gamow::jost_derivative(model, k) - numeric) <
          1e-7 * (1.0 + std::abs(numeric)));
  }
  // value at k = 0: i lambda a^2
  CHECK(std::abs(gamow::jost_derivative(model, Complex(0, 0)) -
                 Complex(0.0, 7.0 * 1.3 * 1.3)) < 1e-10);
}

TEST_CASE("unitarity of the S-matrix on the real axis") {
  for (double lambda : {3.0, 10.0, 50.0}) {
    DeltaShellModel model{lambda, 1.0, 1.0};
    for (int i = 0; i < 40; ++i) {
      const double k = 0.05 + 12.0 * i / 39.0;
      CHECK(std::abs(std::abs(gamow::s_matrix(model, Complex(k, 0.0))) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("resonances of the lambda = 10 shell") {
  DeltaShellModel model{10.0, 1.0, 1.0};
  auto poles = gamow::find_resonances(model, KWindow{});
  REQUIRE(poles.size() >= 2);

  for (std::size_t n = 0; n < poles.size(); ++n) {
    CHECK(poles[n].jost_residual <= 1e-10);
    CHECK(std::abs(gamow::jost_function(model, poles[n].k)) <= 1e-10);
    CHECK(poles[n].pole.width() > 0.0);
    // Re k_n sits just below n pi / a
    const double expected = (n + 1) * kPi;
    CHECK(poles[n].k.real() < expected);
    CHECK(std::abs(poles[n].k.real() - expected) < 0.7);
    CHECK(gamow::pole_pair_symmetry_check(model, poles[n].k) <= 1e-8);
  }
  // sorted by resonance energy
  for (std::size_t n = 1; n < poles.size(); ++n)
    CHECK(poles[n].pole.resonance_energy() > poles[n - 1].pole.resonance_energy());
}

TEST_CASE("pole set is stable under seed-grid doubling") {
  DeltaShellModel model{10.0, 1.0, 1.0};
  auto base = gamow::find_resonances(model, KWindow{}, 16, 50, 25);
  auto dense = gamow::find_resonances(model, KWindow{}, 16, 100, 50);
  REQUIRE(base.size() == dense.size());
  for (std::size_t n = 0; n < base.size(); ++n)
    CHECK(std::abs(base[n].k - dense[n].k) < 1e-8);
}

TEST_CASE("stronger coupling narrows every resonance") {
  DeltaShellModel weak{10.0, 1.0, 1.0};
  DeltaShellModel strong{20.0, 1.0, 1.0};
  auto p1 = gamow::find_resonances(weak, KWindow{});
  auto p2 = gamow::find_resonances(strong, KWindow{});
  const std::size_t n = std::min(p1.size(), p2.size());
  REQUIRE(n >= 2);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(p2[i].pole.width() < p1[i].pole.width());
}

TEST_CASE("large-coupling limit approaches k_n = n pi / a") {
  std::vector<std::vector<double>> offsets;
  for (double lambda : {10.0, 50.0, 250.0}) {
    DeltaShellModel model{lambda, 1.0, 1.0};
    auto poles = gamow::find_resonances(model, KWindow{});
    REQUIRE(poles.size() >= 3);
    std::vector<double> off;
    for (int n = 0; n < 3; ++n) off.push_back(std::abs(poles[n].k.real() - (n + 1) * kPi));
    offsets.push_back(off);
  }
  for (int n = 0; n < 3; ++n) {
    CHECK(offsets[1][n] < offsets[0][n]);
    CHECK(offsets[2][n] < offsets[1][n]);
  }
}

TEST_CASE("winding-number oracle confirms the Newton zero") {
  DeltaShellModel model{10.0, 1.0, 1.0};
  auto f = [&](Complex k) { return gamow::jost_function(model, k); };

  const Complex from_boxes = locate_zero_by_subdivision(f, 2.0, 3.3, -0.4, -0.005);
  auto poles = gamow::find_resonances(model, KWindow{});
  REQUIRE(!poles.empty());
  CHECK(std::abs(poles[0].k - from_boxes) < 1e-5);
}

TEST_CASE("S-matrix blows up at a located zero") {
  DeltaShellModel model{10.0, 1.0, 1.0};
  auto poles = gamow::find_resonances(model, KWindow{});
  REQUIRE(!poles.empty());
  CHECK_THROWS_AS(gamow::s_matrix(model, poles[0].k), gamow::PoleHit);
  CHECK(std::abs(gamow::s_matrix(model, poles[0].k + Complex(1e-5, 0.0))) > 1e3);
}

TEST_CASE("attractive shell has a purely imaginary bound-state zero") {
  DeltaShellModel model{-3.0, 1.0, 1.0};
  auto f = [&](Complex k) { return gamow::jost_function(model, k); };
  auto df = [&](Complex k) { return gamow::jost_derivative(model, k); };
  const Complex k0 = gamow::find_root_complex(f, df, Complex(0.0, 1.4), 1e-12, 60);
  CHECK(std::abs(k0.real()) < 1e-10);
  CHECK(k0.imag() > 0.0);
  // -k0* equals k0 itself, so the pair-symmetry residual is the zero residual
  CHECK(gamow::pole_pair_symmetry_check(model, k0) < 1e-10);
}

TEST_CASE("window and parameter validation") {
  DeltaShellModel model{10.0, 1.0, 1.0};
  KWindow bad;
  bad.im_max = 0.5;
  CHECK_THROWS_AS(gamow::find_resonances(model, bad), std::invalid_argument);
  KWindow inverted;
  inverted.re_min = 5.0;
  inverted.re_max = 1.0;
  CHECK_THROWS_AS(gamow::find_resonances(model, inverted), std::invalid_argument);
  DeltaShellModel negative_radius{10.0, -1.0, 1.0};
  CHECK_THROWS_AS(gamow::find_resonances(negative_radius, KWindow{}), std::invalid_argument);
}
