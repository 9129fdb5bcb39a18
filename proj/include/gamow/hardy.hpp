#pragma once

// Concrete Hardy-class test functions and the Cauchy boundary-integral that
// recovers their interior values from real-axis data.  A function analytic
// on a half plane with L2 boundary values satisfies
//
//     f(z) = +- (1/2pi i) integral f(E)/(E - z) dE
//
// with + for targets in the upper half plane and - for the lower; the
// integral over the opposite half plane vanishes because the closed contour
// encloses no singularity.  The built-in family is rational: (E -+ i)^{-n}
// for n = 1..4 and the same poles dressed with a unimodular Blaschke-type
// phase, chosen because the exact analytic continuation doubles as an
// oracle for the boundary integral.

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "gamow/errors.hpp"
#include "gamow/gamow_vector.hpp"
#include "gamow/numerics.hpp"

namespace gamow {

enum class HalfPlane { upper, lower };

/// A Hardy-class function given by its boundary values on the real axis and
/// by its analytic continuation into its half plane.  `decay_order` is the
/// power-law decay exponent at infinity (>= 1 keeps it square integrable).
struct HardyFunction {
  HalfPlane half_plane = HalfPlane::lower;
  int decay_order = 1;
  std::string label;
  std::function<Complex(double)> boundary;
  std::function<Complex(Complex)> analytic;
  std::vector<double> features;  // real-axis abscissae where |f| is structured
};

/// (E - i)^{-n} for the lower half plane, (E + i)^{-n} for the upper.
inline HardyFunction rational_hardy(HalfPlane hp, int order) {
  if (order < 1) throw std::invalid_argument("rational_hardy: order must be >= 1");
  const Complex pole = (hp == HalfPlane::lower) ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  HardyFunction f;
  f.half_plane = hp;
  f.decay_order = order;
  f.label = std::string(hp == HalfPlane::lower ? "lower" : "upper") + "_n" + std::to_string(order);
  f.boundary = [pole, order](double e) { return std::pow(Complex(e, 0.0) - pole, -order); };
  f.analytic = [pole, order](Complex z) { return std::pow(z - pole, -order); };
  f.features = {-1.0, 0.0, 1.0};
  return f;
}

/// Rational Hardy function dressed with the unimodular phase
/// (E + i a)/(E - i a) (lower class) or its mirror (upper class); the phase
/// factor keeps |f| unchanged on the axis and adds no pole in f's half plane.
inline HardyFunction phase_twisted_hardy(HalfPlane hp, int order, double a = 2.0) {
  if (order < 1) throw std::invalid_argument("phase_twisted_hardy: order must be >= 1");
  if (!(a > 0)) throw std::invalid_argument("phase_twisted_hardy: a must be > 0");
  const Complex pole = (hp == HalfPlane::lower) ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  const Complex ia = (hp == HalfPlane::lower) ? Complex(0.0, a) : Complex(0.0, -a);
  HardyFunction f;
  f.half_plane = hp;
  f.decay_order = order;
  f.label = std::string(hp == HalfPlane::lower ? "lower" : "upper") + "_phase_n" +
            std::to_string(order);
  f.boundary = [pole, ia, order](double e) {
    const Complex z(e, 0.0);
    return (z + ia) / (z - ia) * std::pow(z - pole, -order);
  };
  f.analytic = [pole, ia, order](Complex z) {
    return (z + ia) / (z - ia) * std::pow(z - pole, -order);
  };
  f.features = {-a, -1.0, 0.0, 1.0, a};
  return f;
}

/// c1*f1 + c2*f2 on a shared half plane.
inline HardyFunction combine(Complex c1, const HardyFunction& f1, Complex c2,
                             const HardyFunction& f2) {
  if (f1.half_plane != f2.half_plane)
    throw WrongHalfPlane("combine: operands live on different half planes");
  HardyFunction f;
  f.half_plane = f1.half_plane;
  f.decay_order = std::min(f1.decay_order, f2.decay_order);
  f.label = "combo(" + f1.label + "," + f2.label + ")";
  auto b1 = f1.boundary, b2 = f2.boundary;
  auto a1 = f1.analytic, a2 = f2.analytic;
  f.boundary = [=](double e) { return c1 * b1(e) + c2 * b2(e); };
  f.analytic = [=](Complex z) { return c1 * a1(z) + c2 * a2(z); };
  f.features = f1.features;
  f.features.insert(f.features.end(), f2.features.begin(), f2.features.end());
  return f;
}

/// The built-in test family used by the CLI and the acceptance suite.
inline std::vector<HardyFunction> builtin_hardy_family() {
  std::vector<HardyFunction> family;
  for (int n = 1; n <= 4; ++n) {
    family.push_back(rational_hardy(HalfPlane::lower, n));
    family.push_back(rational_hardy(HalfPlane::upper, n));
  }
  family.push_back(phase_twisted_hardy(HalfPlane::lower, 2));
  family.push_back(phase_twisted_hardy(HalfPlane::upper, 2));
  return family;
}

namespace detail {

inline bool in_half_plane(HalfPlane hp, Complex z) {
  return (hp == HalfPlane::upper) ? z.imag() > 0.0 : z.imag() < 0.0;
}

inline std::vector<double> cauchy_breakpoints(const HardyFunction& f, Complex z) {
  std::vector<double> breaks = f.features;
  const double w = std::abs(z.imag());
  breaks.push_back(z.real());
  breaks.push_back(z.real() - w);
  breaks.push_back(z.real() + w);
  breaks.push_back(z.real() - 10.0 * w);
  breaks.push_back(z.real() + 10.0 * w);
  return breaks;
}

}  // namespace detail

/// Recover f at an interior point of its half plane from boundary data:
/// (+-1/2pi i) integral f(E)/(E - z) dE, sign + for upper targets, - for
/// lower.  Agrees with f.analytic(z) to quadrature accuracy.
inline Complex cauchy_eval(const HardyFunction& f, Complex z, const QuadratureSpec& spec = {}) {
  if (std::abs(z.imag()) < 1e-12)
    throw OnAxisTarget("cauchy_eval: target lies on the real axis");
  if (!detail::in_half_plane(f.half_plane, z))
    throw WrongHalfPlane("cauchy_eval: target is outside the function's half plane");

  auto integrand = [&](double e) { return f.boundary(e) / (Complex(e, 0.0) - z); };
  IntegrationResult r = integrate_real_line(integrand, spec, detail::cauchy_breakpoints(f, z));
  const double sign = (f.half_plane == HalfPlane::upper) ? +1.0 : -1.0;
  return sign * r.value / Complex(0.0, 2.0 * std::numbers::pi);
}

/// The complementary contour: for z strictly on the side where f is NOT
/// analytic, integral f(E)/(E - z) dE closes around a pole-free region and
/// vanishes.  Returns the raw integral (expected ~ 0).
inline Complex opposite_halfplane_check(const HardyFunction& f, Complex z,
                                        const QuadratureSpec& spec = {}) {
  if (std::abs(z.imag()) < 1e-12)
    throw OnAxisTarget("opposite_halfplane_check: target lies on the real axis");
  if (detail::in_half_plane(f.half_plane, z))
    throw WrongHalfPlane("opposite_halfplane_check: target is inside the function's half plane");

  auto integrand = [&](double e) { return f.boundary(e) / (Complex(e, 0.0) - z); };
  return integrate_real_line(integrand, spec, detail::cauchy_breakpoints(f, z)).value;
}

/// The decaying-state functional applied to a lower-class test function:
/// the boundary integral -(1/2pi i) integral f(E)/(E - z_R) dE, which equals
/// f evaluated at the pole z_R = E_R - i Gamma/2.
inline Complex gamow_functional_value(const ResonancePole& pole, const HardyFunction& f,
                                      const QuadratureSpec& spec = {}) {
  if (f.half_plane != HalfPlane::lower)
    throw WrongHalfPlane("gamow_functional_value: needs a lower-class Hardy function");
  return cauchy_eval(f, pole.z(), spec);
}

/// |f.analytic just inside the half plane - f.boundary| at a sample point;
/// used to check the limit Im z -> 0 consistency of a HardyFunction.
inline double boundary_consistency_residual(const HardyFunction& f, double e,
                                            double offset = 1e-8) {
  const double side = (f.half_plane == HalfPlane::upper) ? +1.0 : -1.0;
  return std::abs(f.analytic(Complex(e, side * offset)) - f.boundary(e));
}

}  // namespace gamow
