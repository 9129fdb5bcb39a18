#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <vector>

#include "gamow/hardy.hpp"
#include "test_util.hpp"

using gamow::Complex;
using gamow::HalfPlane;
using gamow::HardyFunction;

TEST_CASE("cauchy_eval reproduces rational Hardy functions at frozen targets") {
  // f(E) = 1/(E - i) is lower-class; at z = -i the residue oracle gives
  // -(1/2pi i) * pi = i/2 = f(-i)
  auto f1 = gamow::rational_hardy(HalfPlane::lower, 1);
  Complex v1 = gamow::cauchy_eval(f1, Complex(0.0, -1.0));
  CHECK(std::abs(v1 - Complex(0.0, 0.5)) < 1e-9);

  // mirror: f(E) = 1/(E + i) is upper-class; f(i) = 1/(2i) = -i/2
  auto f2 = gamow::rational_hardy(HalfPlane::upper, 1);
  Complex v2 = gamow::cauchy_eval(f2, Complex(0.0, 1.0));
  CHECK(std::abs(v2 - Complex(0.0, -0.5)) < 1e-9);

  // f(E) = 1/(E - i)^2 at z = -2i: 1/(-3i)^2 = -1/9
  auto f3 = gamow::rational_hardy(HalfPlane::lower, 2);
  Complex v3 = gamow::cauchy_eval(f3, Complex(0.0, -2.0));
  CHECK(std::abs(v3 - Complex(-1.0 / 9.0, 0.0)) < 1e-9);
}

TEST_CASE("reproduction property over the built-in family") {
  const auto family = gamow::builtin_hardy_family();
  const Complex targets[] = {{0.3, -0.002}, {-2.0, -0.5}, {5.0, -3.0}, {0.0, -1.5},
                             {1.0, -0.01},  {-4.0, -0.08}};
  for (const auto& f : family) {
    for (Complex z0 : targets) {
      const Complex z = (f.half_plane == HalfPlane::lower) ? z0 : std::conj(z0);
      const Complex direct = f.analytic(z);
      const Complex via_boundary = gamow::cauchy_eval(f, z);
      CHECK(std::abs(via_boundary - direct) < 1e-6 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("annihilation on the opposite half plane") {
  auto f1 = gamow::rational_hardy(HalfPlane::lower, 1);
  CHECK(std::abs(gamow::opposite_halfplane_check(f1, Complex(0.0, 2.0))) < 1e-6);

  auto f2 = gamow::rational_hardy(HalfPlane::lower, 2);
  CHECK(std::abs(gamow::opposite_halfplane_check(f2, Complex(0.0, 1.0))) < 1e-6);

  auto f3 = gamow::phase_twisted_hardy(HalfPlane::upper, 1, 3.0);
  CHECK(std::abs(gamow::opposite_halfplane_check(f3, Complex(0.0, -1.0))) < 1e-6);

  for (const auto& f : gamow::builtin_hardy_family()) {
    const double side = (f.half_plane == HalfPlane::lower) ? +1.0 : -1.0;  // wrong side
    CHECK(std::abs(gamow::opposite_halfplane_check(f, Complex(0.7, side * 0.4))) < 1e-6);
  }
}

TEST_CASE("gamow_functional_value equals evaluation at the pole") {
  auto f1 = gamow::rational_hardy(HalfPlane::lower, 1);
  gamow::ResonancePole pole1(1.0, 1.0);  // z_R = 1 - 0.5i
  Complex expected1 = 1.0 / (Complex(1.0, -0.5) - Complex(0.0, 1.0));  // 1/(1 - 1.5i)
  CHECK(std::abs(gamow::gamow_functional_value(pole1, f1) - expected1) < 1e-9);

  auto f2 = gamow::rational_hardy(HalfPlane::lower, 2);
  gamow::ResonancePole pole2(2.0, 0.1);  // z_R = 2 - 0.05i
  Complex d2 = Complex(2.0, -1.05);
  CHECK(std::abs(gamow::gamow_functional_value(pole2, f2) - 1.0 / (d2 * d2)) < 1e-9);

  // constant-zero test function
  HardyFunction zero;
  zero.half_plane = HalfPlane::lower;
  zero.decay_order = 1;
  zero.boundary = [](double) { return Complex(0.0, 0.0); };
  zero.analytic = [](Complex) { return Complex(0.0, 0.0); };
  CHECK(std::abs(gamow::gamow_functional_value(pole1, zero)) < 1e-12);

  // upper-class input is rejected
  auto fu = gamow::rational_hardy(HalfPlane::upper, 1);
  CHECK_THROWS_AS(gamow::gamow_functional_value(pole1, fu), gamow::WrongHalfPlane);
}

TEST_CASE("linearity of the functional in the test function") {
  gamow::ResonancePole pole(3.0, 0.4);
  std::vector<HardyFunction> lower_family;
  for (int n = 1; n <= 4; ++n) lower_family.push_back(gamow::rational_hardy(HalfPlane::lower, n));
  lower_family.push_back(gamow::phase_twisted_hardy(HalfPlane::lower, 2));
  lower_family.push_back(gamow::phase_twisted_hardy(HalfPlane::lower, 3));

  for (int trial = 0; trial < 6; ++trial) {
    const auto& f1 = lower_family[static_cast<std::size_t>(
        testutil::uniform(0, static_cast<double>(lower_family.size()) - 1e-9))];
    const auto& f2 = lower_family[static_cast<std::size_t>(
        testutil::uniform(0, static_cast<double>(lower_family.size()) - 1e-9))];
    const Complex c1(testutil::uniform(-2, 2), testutil::uniform(-2, 2));
    const Complex c2(testutil::uniform(-2, 2), testutil::uniform(-2, 2));
    auto combo = gamow::combine(c1, f1, c2, f2);
    const Complex lhs = gamow::gamow_functional_value(pole, combo);
    const Complex rhs = c1 * gamow::gamow_functional_value(pole, f1) +
                        c2 * gamow::gamow_functional_value(pole, f2);
    CHECK(std::abs(lhs - rhs) < 1e-8 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("conjugation duality between the half planes") {
  auto lower = gamow::rational_hardy(HalfPlane::lower, 2);
  auto upper = gamow::rational_hardy(HalfPlane::upper, 2);  // conjugate family
  const Complex z(1.2, -0.7);
  const Complex at_lower = gamow::cauchy_eval(lower, z);
  const Complex at_upper = gamow::cauchy_eval(upper, std::conj(z));
  CHECK(std::abs(at_upper - std::conj(at_lower)) < 1e-8);
}

TEST_CASE("target validation") {
  auto f = gamow::rational_hardy(HalfPlane::lower, 1);
  CHECK_THROWS_AS(gamow::cauchy_eval(f, Complex(0.5, 1e-13)), gamow::OnAxisTarget);
  CHECK_THROWS_AS(gamow::cauchy_eval(f, Complex(0.5, +0.3)), gamow::WrongHalfPlane);
  CHECK_THROWS_AS(gamow::opposite_halfplane_check(f, Complex(0.5, -0.3)),
                  gamow::WrongHalfPlane);
}

TEST_CASE("boundary values are the limits of the analytic continuation") {
  for (const auto& f : gamow::builtin_hardy_family()) {
    for (double e : {-3.0, -0.5, 0.0, 0.9, 4.0}) {
      CHECK(gamow::boundary_consistency_residual(f, e) < 1e-6);
    }
  }
}
