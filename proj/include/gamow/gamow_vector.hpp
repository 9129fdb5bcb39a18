#pragma once

// Resonance poles z_R = E_R - i Gamma/2 and the normalized decaying/growing
// Lorentzian states
//
//     psi_D(E) = alpha / (E - z_R),   psi_G(E) = alpha / (E - z_R*),
//
// with alpha = sqrt(Gamma / 2pi), which makes the L2 norm exactly one for
// every width: the norm integral is alpha^2 * 2pi/Gamma.  (The frequently
// quoted constant alpha = 1/sqrt(pi) is this value at Gamma = 2.)  Decaying
// and growing states of one pole are mutually orthogonal: their overlap is
// the integral of (E - z_R)^{-2}, which vanishes.
//
// Time evolution multiplies the decaying state by e^{-i z_R t}, so the
// amplitude decays as e^{-Gamma t/2} and the probability as e^{-Gamma t}.
// The evolution is a semigroup: t >= 0 for the decaying state, t <= 0 for
// the growing one; requests outside the domain are errors, not
// extrapolations.
//
// Convention note: part of the literature attaches the conjugate pole z_R*
// to the decaying state and z_R to the growing one.  This library uses
// decaying <-> z_R everywhere, which keeps H psi_D = z_R psi_D and the
// e^{-Gamma t/2} amplitude decay consistent.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "gamow/errors.hpp"
#include "gamow/numerics.hpp"

namespace gamow {

class ResonancePole {
 public:
  ResonancePole(double resonance_energy, double width)
      : e_r_(resonance_energy), gamma_(width) {
    if (!(gamma_ > 0.0))
      throw NonPositiveWidth("ResonancePole: width must be > 0, got " + std::to_string(width));
  }

  double resonance_energy() const { return e_r_; }
  double width() const { return gamma_; }

  /// z_R = E_R - i Gamma/2 (lower half plane).
  Complex z() const { return {e_r_, -0.5 * gamma_}; }
  /// z_R* = E_R + i Gamma/2.
  Complex z_conjugate() const { return {e_r_, +0.5 * gamma_}; }

 private:
  double e_r_;
  double gamma_;
};

/// alpha such that the Lorentzian state has unit L2 norm on the real line.
inline double normalization(const ResonancePole& pole) {
  return std::sqrt(pole.width() / (2.0 * std::numbers::pi));
}

enum class GamowKind { decaying, growing };

class GamowVector {
 public:
  GamowVector(const ResonancePole& pole, GamowKind kind)
      : pole_(pole), kind_(kind), alpha_(gamow::normalization(pole)) {}

  const ResonancePole& pole() const { return pole_; }
  GamowKind kind() const { return kind_; }
  double normalization() const { return alpha_; }

  /// alpha/(E - z_R) for the decaying kind, alpha/(E - z_R*) for the growing.
  Complex eval(double e) const {
    const Complex p = (kind_ == GamowKind::decaying) ? pole_.z() : pole_.z_conjugate();
    return alpha_ / (Complex(e, 0.0) - p);
  }

  /// |psi(E)|^2 = (Gamma/2pi) / ((E - E_R)^2 + (Gamma/2)^2); unit weight on R.
  double breit_wigner_density(double e) const {
    const double de = e - pole_.resonance_energy();
    const double hw = 0.5 * pole_.width();
    return alpha_ * alpha_ / (de * de + hw * hw);
  }

  /// Panel edges for quadrature against this state.
  std::vector<double> features() const {
    const double e_r = pole_.resonance_energy();
    const double g = pole_.width();
    return {e_r - 5.0 * g, e_r - 0.5 * g, e_r, e_r + 0.5 * g, e_r + 5.0 * g};
  }

 private:
  ResonancePole pole_;
  GamowKind kind_;
  double alpha_;
};

/// <a|b> = integral of conj(a(E)) b(E) dE by quadrature.  Same-kind pairs of
/// one pole give 1, mixed decaying/growing pairs give 0.  Cross-pole
/// overlaps are computed the same way but carry no closed-form anchor.
inline Complex overlap(const GamowVector& a, const GamowVector& b,
                       const QuadratureSpec& spec = {}) {
  auto integrand = [&](double e) { return std::conj(a.eval(e)) * b.eval(e); };
  std::vector<double> breaks = a.features();
  const std::vector<double> fb = b.features();
  breaks.insert(breaks.end(), fb.begin(), fb.end());
  return integrate_real_line(integrand, spec, breaks).value;
}

/// e^{-i z_R t} for the decaying kind (t >= 0), e^{-i z_R* t} for the
/// growing kind (t <= 0).  Violating the semigroup restriction throws.
inline Complex time_evolution_factor(const GamowVector& g, double t) {
  if (g.kind() == GamowKind::decaying && t < 0.0)
    throw WrongTimeDomain("time_evolution_factor: decaying state is defined for t >= 0");
  if (g.kind() == GamowKind::growing && t > 0.0)
    throw WrongTimeDomain("time_evolution_factor: growing state is defined for t <= 0");
  const Complex p = (g.kind() == GamowKind::decaying) ? g.pole().z() : g.pole().z_conjugate();
  return std::exp(Complex(0.0, -1.0) * p * t);
}

}  // namespace gamow
