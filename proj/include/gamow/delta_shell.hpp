#pragma once

// s-wave delta-shell potential: a solvable scattering model whose Jost
// function is entire, so pole finding is honest numerics with an exact
// residual check.  For u'' + k^2 u = lambda delta(r - a) u the Jost solution
// is a plane wave outside the shell and matching across the shell gives the
// closed form
//
//     F(k) = 1 + lambda a (e^w - 1)/w,      w = 2 i k a,
//
// with F(0) = 1 + lambda a and the reflection property F(-k*) = F(k)*.
// Resonances are the zeros of F in the lower half k-plane with Re k > 0;
// each maps to the complex energy z = k^2/2m, a ResonancePole with
// E_R = Re z and Gamma = -2 Im z.  The S-matrix is the Jost ratio
// S(k) = F(-k)/F(k), unimodular on the real axis.  For strong coupling the
// zeros approach k_n = n pi / a, the infinite-shell limit.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "gamow/errors.hpp"
#include "gamow/gamow_vector.hpp"
#include "gamow/numerics.hpp"

namespace gamow {

struct DeltaShellModel {
  double strength = 10.0;  // lambda, inverse length
  double radius = 1.0;     // a
  double mass = 1.0;       // hbar = 1 units

  void validate() const {
    if (!(radius > 0)) throw std::invalid_argument("DeltaShellModel.radius must be > 0");
    if (!(mass > 0)) throw std::invalid_argument("DeltaShellModel.mass must be > 0");
    if (!std::isfinite(strength))
      throw std::invalid_argument("DeltaShellModel.strength must be finite");
  }
};

namespace detail {

// (e^w - 1)/w, stable near w = 0
inline Complex expm1_over(Complex w) {
  if (std::abs(w) < 1e-4)
    return 1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0)));
  return (std::exp(w) - 1.0) / w;
}

// e^w - (e^w - 1)/w = w/2 + w^2/3 + w^3/8 + w^4/30 + ..., stable near w = 0
inline Complex exp_minus_expm1_over(Complex w) {
  if (std::abs(w) < 1e-4)
    return w * (0.5 + w * (1.0 / 3.0 + w * (1.0 / 8.0 + w / 30.0)));
  return std::exp(w) - (std::exp(w) - 1.0) / w;
}

}  // namespace detail

/// F(k) = 1 + lambda a (e^{2ika} - 1)/(2ika); entire in k.
inline Complex jost_function(const DeltaShellModel& model, Complex k) {
  const Complex w = Complex(0.0, 2.0 * model.radius) * k;
  return 1.0 + model.strength * model.radius * detail::expm1_over(w);
}

/// dF/dk = (lambda a / k) [e^w - (e^w - 1)/w]; finite at k = 0 where it
/// equals i lambda a^2.
inline Complex jost_derivative(const DeltaShellModel& model, Complex k) {
  if (std::abs(k) < 1e-8 / model.radius) {
    const Complex w = Complex(0.0, 2.0 * model.radius) * k;
    // (lambda a / k) (w/2 + w^2/3 + ...) with w = 2ika
    return model.strength * model.radius *
           Complex(0.0, model.radius) * (1.0 + w * (2.0 / 3.0 + w * 0.25));
  }
  const Complex w = Complex(0.0, 2.0 * model.radius) * k;
  return model.strength * model.radius / k * detail::exp_minus_expm1_over(w);
}

/// S(k) = F(-k)/F(k); meromorphic, unimodular for real k.
inline Complex s_matrix(const DeltaShellModel& model, Complex k) {
  const Complex denom = jost_function(model, k);
  const double scale = 1.0 + std::abs(model.strength) * model.radius;
  if (std::abs(denom) < 1e-12 * scale)
    throw PoleHit("s_matrix: evaluation at a Jost zero, k = (" + std::to_string(k.real()) +
                  ", " + std::to_string(k.imag()) + ")");
  return jost_function(model, -k) / denom;
}

/// Rectangle in the lower half k-plane searched for resonance zeros.
struct KWindow {
  double re_min = 0.05;
  double re_max = 10.0;
  double im_min = -2.0;
  double im_max = -1e-6;

  void validate() const {
    if (!(re_min < re_max)) throw std::invalid_argument("KWindow: need re_min < re_max");
    if (!(im_min < im_max)) throw std::invalid_argument("KWindow: need im_min < im_max");
    if (!(im_max <= 0.0))
      throw std::invalid_argument("KWindow: window must lie in the lower half plane");
  }
  bool contains(Complex k) const {
    return k.real() > re_min && k.real() < re_max && k.imag() > im_min && k.imag() < im_max;
  }
};

/// A located Jost zero together with the pole it maps to.
struct FoundPole {
  ResonancePole pole;
  Complex k;
  double jost_residual = 0;  // |F(k)| at the returned zero
};

/// Scan a seed grid over the window, polish each seed by Newton iteration
/// with the analytic Jost derivative, deduplicate converged zeros (distance
/// below 1e-8 collapses to one), keep those inside the window with Re k > 0
/// that map to a positive width, and sort by resonance energy.
inline std::vector<FoundPole> find_resonances(const DeltaShellModel& model, const KWindow& window,
                                              int max_count = 16, int grid_nx = 50,
                                              int grid_ny = 25) {
  model.validate();
  window.validate();
  if (max_count < 1) throw std::invalid_argument("find_resonances: max_count must be >= 1");
  if (grid_nx < 1 || grid_ny < 1)
    throw std::invalid_argument("find_resonances: grid must be at least 1x1");

  const double residual_tol = 1e-12 * (1.0 + std::abs(model.strength) * model.radius);
  auto f = [&](Complex k) { return jost_function(model, k); };
  auto df = [&](Complex k) { return jost_derivative(model, k); };

  std::vector<Complex> zeros;
  for (int ix = 0; ix < grid_nx; ++ix) {
    for (int iy = 0; iy < grid_ny; ++iy) {
      const Complex seed(window.re_min + (window.re_max - window.re_min) * (ix + 0.5) / grid_nx,
                         window.im_min + (window.im_max - window.im_min) * (iy + 0.5) / grid_ny);
      Complex k;
      try {
        k = find_root_complex(f, df, seed, residual_tol, 60);
      } catch (const Error&) {
        continue;  // seed did not converge; the grid is dense enough without it
      }
      if (!window.contains(k) || k.real() <= 0.0) continue;
      bool duplicate = false;
      for (Complex known : zeros) {
        if (std::abs(known - k) < 1e-8) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) zeros.push_back(k);
    }
  }

  std::vector<FoundPole> found;
  for (Complex k : zeros) {
    const Complex z = k * k / (2.0 * model.mass);
    const double gamma = -2.0 * z.imag();
    if (!(gamma > 0.0)) continue;  // wrong energy sheet
    found.push_back({ResonancePole(z.real(), gamma), k, std::abs(jost_function(model, k))});
  }
  std::sort(found.begin(), found.end(), [](const FoundPole& x, const FoundPole& y) {
    return x.pole.resonance_energy() < y.pole.resonance_energy();
  });
  if (static_cast<int>(found.size()) > max_count)
    found.erase(found.begin() + max_count, found.end());

  if (found.empty())
    throw NoPolesInWindow("find_resonances: no resonance zeros in the requested window");
  return found;
}

/// Jost zeros come in (k, -k*) pairs; returns |F(-k0*)|, which vanishes when
/// k0 is a zero.
inline double pole_pair_symmetry_check(const DeltaShellModel& model, Complex k0) {
  return std::abs(jost_function(model, -std::conj(k0)));
}

}  // namespace gamow
