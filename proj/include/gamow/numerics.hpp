#pragma once

// Complex-valued quadrature on finite, half-infinite and infinite intervals,
// Cauchy principal values, oscillatory Fourier-type integrals, a damped
// complex Newton root finder, and a small least-squares line fit.  Every
// other header in the library is built on top of these routines.
//
// Infinite intervals are handled by rational variable transformations
// (R -> (-1,1) and [0,inf) -> (0,1)); the integrands of interest here are
// rational-times-smooth, which these maps turn into bounded functions.
// Refinement is globally adaptive Gauss-Kronrod (G7,K15): the panel with the
// largest error estimate is bisected until the accumulated estimate meets
// max(rel_tol*|I|, abs_tol).  Callers that know where their integrand is
// peaked pass those abscissae as breakpoints; they become panel edges.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamow/errors.hpp"

namespace gamow {

using Complex = std::complex<double>;

inline bool is_finite(Complex v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// Tolerances and budgets shared by all quadrature entry points.
struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_refinements = 30;   // bisection depth allowed per base panel
  double decay_cutoff = 1e6;  // energy beyond which oscillatory tails are truncated

  void validate() const {
    if (!(rel_tol > 0)) throw std::invalid_argument("QuadratureSpec.rel_tol must be > 0");
    if (!(abs_tol >= 0)) throw std::invalid_argument("QuadratureSpec.abs_tol must be >= 0");
    if (max_refinements < 1) throw std::invalid_argument("QuadratureSpec.max_refinements must be >= 1");
    if (!(decay_cutoff > 0)) throw std::invalid_argument("QuadratureSpec.decay_cutoff must be > 0");
  }
};

/// Value plus an absolute error estimate.  On success the estimate satisfies
/// error <= max(rel_tol*|value|, abs_tol).
struct IntegrationResult {
  Complex value{};
  double error = 0.0;
  long evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK qk15 abscissae).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a = 0, b = 0;
  Complex value{};
  double error = 0;
  double resabs = 0;
  int depth = 0;
};

struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

template <class F>
Panel eval_panel(F&& f, double a, double b, int depth, long& evaluations) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  auto sample = [&](double x) {
    Complex v = f(x);
    ++evaluations;
    if (!is_finite(v))
      throw NonFinite("integrand returned a non-finite value at x = " + std::to_string(x));
    return v;
  };

  Complex center = sample(mid);
  Complex kron = kKronrodWeights[7] * center;
  Complex gauss = kGaussWeights[3] * center;
  double resabs = kKronrodWeights[7] * std::abs(center);

  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    Complex lo = sample(mid - dx);
    Complex hi = sample(mid + dx);
    kron += kKronrodWeights[j] * (lo + hi);
    resabs += kKronrodWeights[j] * (std::abs(lo) + std::abs(hi));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (lo + hi);
  }

  Panel p;
  p.a = a;
  p.b = b;
  p.value = half * kron;
  p.error = half * std::abs(kron - gauss);
  p.resabs = half * resabs;
  p.depth = depth;
  return p;
}

/// Globally adaptive integration over the panels delimited by `edges`.
template <class F>
IntegrationResult adapt(F&& f, std::vector<double> edges, const QuadratureSpec& spec) {
  spec.validate();
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double x, double y) { return y - x < 1e-300; }),
              edges.end());
  if (edges.size() < 2) throw std::invalid_argument("adapt: need at least one panel");

  long evaluations = 0;
  std::vector<Panel> heap;
  heap.reserve(256);
  Complex total = 0;
  double total_error = 0;
  double total_resabs = 0;

  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = eval_panel(f, edges[i], edges[i + 1], 0, evaluations);
    total += p.value;
    total_error += p.error;
    total_resabs += p.resabs;
    heap.push_back(p);
  }
  std::make_heap(heap.begin(), heap.end(), PanelWorse{});

  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t max_panels = 200000;

  while (true) {
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (total_error <= tol) break;
    if (total_error <= 50.0 * eps * total_resabs) break;  // rounding floor reached
    if (heap.size() >= max_panels)
      throw NonConvergence("quadrature: panel budget exhausted (error estimate " +
                           std::to_string(total_error) + ", tolerance " + std::to_string(tol) + ")");

    std::pop_heap(heap.begin(), heap.end(), PanelWorse{});
    Panel worst = heap.back();
    heap.pop_back();

    if (worst.depth >= spec.max_refinements)
      throw NonConvergence("quadrature: refinement budget exhausted on [" +
                           std::to_string(worst.a) + ", " + std::to_string(worst.b) +
                           "] (error estimate " + std::to_string(total_error) + ")");
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b))
      throw NonConvergence("quadrature: panel no longer splittable at x = " + std::to_string(m));

    Panel left = eval_panel(f, worst.a, m, worst.depth + 1, evaluations);
    Panel right = eval_panel(f, m, worst.b, worst.depth + 1, evaluations);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_resabs += left.resabs + right.resabs - worst.resabs;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), PanelWorse{});
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), PanelWorse{});
  }

  return {total, total_error, evaluations};
}

// R -> (-1,1):  E = t / (1 - t^2)
inline double map_real_line(double t) { return t / ((1.0 - t) * (1.0 + t)); }
inline double map_real_line_jacobian(double t) {
  const double u = (1.0 - t) * (1.0 + t);
  return (1.0 + t * t) / (u * u);
}
inline double unmap_real_line(double e) {
  if (e == 0.0) return 0.0;
  return (std::sqrt(1.0 + 4.0 * e * e) - 1.0) / (2.0 * e);
}

// [0,inf) -> (0,1):  E = t / (1 - t)
inline double map_half_line(double t) { return t / (1.0 - t); }
inline double map_half_line_jacobian(double t) {
  const double u = 1.0 - t;
  return 1.0 / (u * u);
}
inline double unmap_half_line(double e) { return e / (1.0 + e); }

inline std::vector<double> merge_edges(double lo, double hi,
                                       std::vector<double> base,
                                       const std::vector<double>& extra) {
  for (double x : extra)
    if (std::isfinite(x) && x > lo && x < hi) base.push_back(x);
  base.push_back(lo);
  base.push_back(hi);
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  return base;
}

}  // namespace detail

/// Integrate a complex-valued f over the whole real line.  `breakpoints` are
/// abscissae where the integrand is structured (peaks, kinks); they become
/// panel edges so narrow features cannot slip between quadrature nodes.
template <class F>
IntegrationResult integrate_real_line(F&& f, const QuadratureSpec& spec = {},
                                      const std::vector<double>& breakpoints = {}) {
  auto g = [&f](double t) -> Complex {
    return Complex(f(detail::map_real_line(t))) * detail::map_real_line_jacobian(t);
  };
  // default edges at |E| = 1, 3, 10 on both sides
  std::vector<double> base = {-0.951248, -0.847127, -0.618034, 0.0,
                              0.618034,  0.847127,  0.951248};
  std::vector<double> mapped;
  mapped.reserve(breakpoints.size());
  for (double e : breakpoints)
    if (std::isfinite(e)) mapped.push_back(detail::unmap_real_line(e));
  return detail::adapt(g, detail::merge_edges(-1.0, 1.0, std::move(base), mapped), spec);
}

/// Integrate a complex-valued f over [0, inf).
template <class F>
IntegrationResult integrate_half_line(F&& f, const QuadratureSpec& spec = {},
                                      const std::vector<double>& breakpoints = {}) {
  auto g = [&f](double t) -> Complex {
    return Complex(f(detail::map_half_line(t))) * detail::map_half_line_jacobian(t);
  };
  // default edges at E = 1/3, 1, 3, 9
  std::vector<double> base = {0.25, 0.5, 0.75, 0.9};
  std::vector<double> mapped;
  mapped.reserve(breakpoints.size());
  for (double e : breakpoints)
    if (std::isfinite(e) && e > 0.0) mapped.push_back(detail::unmap_half_line(e));
  return detail::adapt(g, detail::merge_edges(0.0, 1.0, std::move(base), mapped), spec);
}

/// Integrate a complex-valued f over the finite interval [a, b].
template <class F>
IntegrationResult integrate_interval(F&& f, double a, double b, const QuadratureSpec& spec = {},
                                     const std::vector<double>& breakpoints = {}) {
  if (!(a < b)) throw std::invalid_argument("integrate_interval: need a < b");
  auto g = [&f](double x) -> Complex { return Complex(f(x)); };
  std::vector<double> base = {0.5 * (a + b)};
  return detail::adapt(g, detail::merge_edges(a, b, std::move(base), breakpoints), spec);
}

/// Cauchy principal value of integral f over R in the symmetric limit about
/// `center`:  lim_{R->inf} int_{center-R}^{center+R} f.  The value depends on
/// the symmetry point, so the center is always an explicit argument.  The
/// integrand must be (decaying) + (odd about the center with ~1/E tail); the
/// symmetric fold f(c+x) + f(c-x) is then absolutely integrable on [0, inf).
template <class F>
IntegrationResult principal_value(F&& f, double center, const QuadratureSpec& spec = {},
                                  const std::vector<double>& breakpoints = {}) {
  auto folded = [&f, center](double x) -> Complex {
    return Complex(f(center + x)) + Complex(f(center - x));
  };
  std::vector<double> folded_breaks;
  for (double e : breakpoints) {
    const double x = std::abs(e - center);
    if (std::isfinite(x) && x > 0.0) folded_breaks.push_back(x);
  }
  return integrate_half_line(folded, spec, folded_breaks);
}

/// Damped Newton iteration for a zero of an analytic g, with supplied
/// derivative.  Returns k with |g(k)| <= tol; that residual contract is hard.
template <class F, class DF>
Complex find_root_complex(F&& g, DF&& dg, Complex seed, double tol = 1e-12, int max_iter = 100) {
  if (!(tol > 0)) throw std::invalid_argument("find_root_complex: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("find_root_complex: max_iter must be >= 1");

  Complex k = seed;
  Complex gv = g(k);
  if (!is_finite(gv)) throw NonFinite("find_root_complex: g(seed) is not finite");

  for (int it = 0; it < max_iter; ++it) {
    const double r = std::abs(gv);
    if (r <= tol) return k;

    Complex d = dg(k);
    if (!is_finite(d) || std::abs(d) == 0.0)
      throw DerivativeVanished("find_root_complex: derivative vanished near k = (" +
                               std::to_string(k.real()) + ", " + std::to_string(k.imag()) + ")");
    const Complex step = gv / d;
    if (!is_finite(step))
      throw DerivativeVanished("find_root_complex: Newton step overflowed");

    double damp = 1.0;
    bool improved = false;
    Complex k_next{}, g_next{};
    for (int halving = 0; halving < 24; ++halving) {
      k_next = k - damp * step;
      g_next = g(k_next);
      if (is_finite(g_next) && std::abs(g_next) < r) {
        improved = true;
        break;
      }
      damp *= 0.5;
    }
    if (!improved)
      throw NoConvergence("find_root_complex: stalled with |g| = " + std::to_string(r));
    k = k_next;
    gv = g_next;
  }
  throw NoConvergence("find_root_complex: no convergence after " + std::to_string(max_iter) +
                      " iterations, |g| = " + std::to_string(std::abs(gv)));
}

/// As above, with the derivative estimated by a central step of size
/// 1e-6 * (1 + |k|); for analytic g the real-direction difference quotient
/// converges to the complex derivative.
template <class F>
Complex find_root_complex(F&& g, Complex seed, double tol = 1e-12, int max_iter = 100) {
  auto dg = [&g](Complex k) {
    const double h = 1e-6 * (1.0 + std::abs(k));
    return (g(k + h) - g(k - h)) / (2.0 * h);
  };
  return find_root_complex(g, dg, seed, tol, max_iter);
}

/// A simple pole of a density continued off the real axis.
struct PoleTerm {
  Complex location;
  Complex residue;
};

/// Analytic structure a density may expose to enable contour rotation of its
/// Fourier transform.  `eval` continues the density into the lower half
/// plane; `poles` lists its simple poles there.
struct AnalyticContinuation {
  bool available = false;
  std::function<Complex(Complex)> eval;
  std::vector<PoleTerm> poles;
};

template <typename D>
concept OscillatoryDensity = requires(const D& d, double e) {
  { d.value(e) } -> std::convertible_to<double>;
  { d.lower_bound() } -> std::convertible_to<double>;
  { d.features() } -> std::convertible_to<std::vector<double>>;
  { d.analytic() } -> std::convertible_to<AnalyticContinuation>;
};

namespace detail {

// Direct phase-resolved route: panels no wider than ~pi/t so each one holds
// at most half an oscillation.
template <OscillatoryDensity D>
IntegrationResult fourier_direct(const D& density, double t, const QuadratureSpec& spec) {
  const double lb = density.lower_bound();
  const std::vector<double> features = density.features();

  auto scan_limit = [&](double start, double direction) {
    double x = start;
    double step = 1.0;
    while (std::abs(x) < spec.decay_cutoff && density.value(x + direction * step) > 1e-18) {
      x += direction * step;
      step *= 1.5;
    }
    return x + direction * step;
  };

  double fmin = features.empty() ? 0.0 : *std::min_element(features.begin(), features.end());
  double fmax = features.empty() ? 0.0 : *std::max_element(features.begin(), features.end());
  double lo = std::isinf(lb) ? scan_limit(fmin, -1.0) : lb;
  double hi = scan_limit(fmax, +1.0);
  hi = std::min(hi, spec.decay_cutoff);
  if (!(hi > lo)) throw std::invalid_argument("oscillatory_integral: empty support");

  const double phase_budget = 1e4;  // refuse rather than silently degrade
  if (t * (hi - lo) > phase_budget) {
    throw NonConvergence("oscillatory_integral: phase span " + std::to_string(t * (hi - lo)) +
                         " exceeds budget " + std::to_string(phase_budget) +
                         "; largest reliable t = " + std::to_string(phase_budget / (hi - lo)));
  }

  std::vector<double> edges;
  const double width = std::min(hi - lo, std::numbers::pi / std::max(t, 1e-300));
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
  edges.reserve(static_cast<std::size_t>(n) + features.size() + 2);
  for (int i = 0; i <= n; ++i) edges.push_back(lo + (hi - lo) * i / n);
  for (double fpt : features)
    if (fpt > lo && fpt < hi) edges.push_back(fpt);

  auto f = [&](double e) -> Complex { return density.value(e) * std::polar(1.0, -e * t); };
  return adapt(f, std::move(edges), spec);
}

}  // namespace detail

/// A(t) = integral over the density's support of rho(E) e^{-iEt} dE.
///
/// For t = 0 this is a plain integral of the density.  For t > 0, densities
/// exposing an analytic continuation are handled by closing the contour in
/// the lower half plane: full-line rational densities reduce to a residue
/// sum, half-line ones to residues plus a numerically integrated rotated
/// edge running from the support endpoint down the imaginary direction,
/// where the oscillation e^{-iEt} has become the damping e^{-st}.  Densities
/// without a continuation (e.g. truncated Gaussians) fall back to direct
/// phase-resolved panels and refuse phase spans beyond ~1e4 radians.
template <OscillatoryDensity D>
IntegrationResult oscillatory_integral(const D& density, double t, const QuadratureSpec& spec = {}) {
  if (!std::isfinite(t)) throw std::invalid_argument("oscillatory_integral: t must be finite");
  if (t < 0) {
    IntegrationResult r = oscillatory_integral(density, -t, spec);
    r.value = std::conj(r.value);  // densities are real on the axis
    return r;
  }
  const double lb = density.lower_bound();

  if (t == 0.0) {
    if (std::isinf(lb))
      return integrate_real_line([&](double e) { return Complex(density.value(e)); }, spec,
                                 density.features());
    std::vector<double> shifted;
    for (double fpt : density.features())
      if (fpt > lb) shifted.push_back(fpt - lb);
    return integrate_half_line([&](double x) { return Complex(density.value(lb + x)); }, spec,
                               shifted);
  }

  const AnalyticContinuation cont = density.analytic();
  if (cont.available) {
    Complex residue_sum = 0;
    double scale = 0;
    for (const PoleTerm& p : cont.poles) {
      if (p.location.imag() >= 0.0) continue;                     // not enclosed
      if (!std::isinf(lb) && p.location.real() <= lb) continue;   // outside the quadrant
      const Complex term = p.residue * std::exp(Complex(0.0, -1.0) * p.location * t);
      residue_sum += term;
      scale += std::abs(term);
    }
    Complex value = Complex(0.0, -2.0 * std::numbers::pi) * residue_sum;
    double error = 1e2 * std::numeric_limits<double>::epsilon() * scale;
    long evaluations = 0;

    if (!std::isinf(lb)) {
      auto edge = [&](double s) { return cont.eval(Complex(lb, -s)) * std::exp(-s * t); };
      const std::vector<double> sbreaks = {0.5 / t, 2.0 / t, 8.0 / t, 32.0 / t};
      IntegrationResult e = integrate_half_line(edge, spec, sbreaks);
      value += Complex(0.0, -1.0) * std::polar(1.0, -lb * t) * e.value;
      error += e.error;
      evaluations = e.evaluations;
    }
    return {value, error, evaluations};
  }

  return detail::fourier_direct(density, t, spec);
}

/// Least-squares straight line through (x_i, y_i).
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double rms_residual = 0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need at least two matched points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace gamow
