#pragma once

// The four candidate definitions of the mean value of a diagonal observable
// g(E) on a resonant state with pole z_R = E_R - i Gamma/2:
//
//   nakanishi  -- identically zero; a convention, since the norm bracket it
//                 rests on is undefined.
//   complex    -- g(z_R) by analytic continuation, using the dual pairing
//                 normalized to one (a residue/distribution convention, not
//                 an L2 integral: the L2 mixed overlap vanishes).
//   bohm       -- the Lorentzian-weighted real average
//                 integral g(E) |psi_D(E)|^2 dE; for g(E) = E the 1/E tail
//                 is handled as a Cauchy principal value centered at E_R,
//                 giving exactly E_R.
//   berggren   -- Re g(z_R), the real part of the complex average.
//
// The scaling experiment measures |bohm - berggren| as a function of Gamma.
// Writing the Lorentzian weight as the Poisson kernel at height Gamma/2,
//
//   bohm     = g(E_R) - (Gamma/2) (Hg)'(E_R) - (Gamma/2)^2 g''(E_R)/2 + ...
//   berggren = g(E_R)                        - (Gamma/2)^2 g''(E_R)/2 + ...
//
// with H the Hilbert transform: every even order cancels identically and the
// measured log-log slope is 1 for generic bounded observables (3 when
// (Hg)'(E_R) happens to vanish).  See docs/averages-scaling.md.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gamow/errors.hpp"
#include "gamow/gamow_vector.hpp"
#include "gamow/numerics.hpp"

namespace gamow {

enum class GrowthClass { bounded_decaying, linear, superlinear };

/// A diagonal observable g(E) together with a closed-form analytic
/// continuation g(z).  `growth` gates which averages are defined: linear is
/// reserved for g(E) = E, and superlinear observables are rejected by the
/// Lorentzian average (the state has no finite second moment).
struct ObservableSpec {
  std::string name;
  GrowthClass growth = GrowthClass::bounded_decaying;
  std::function<double(double)> real;
  std::function<Complex(Complex)> analytic;
  std::vector<double> features;  // abscissae where g is structured
};

namespace observables {

inline ObservableSpec hamiltonian() {
  ObservableSpec o;
  o.name = "hamiltonian";
  o.growth = GrowthClass::linear;
  o.real = [](double e) { return e; };
  o.analytic = [](Complex z) { return z; };
  return o;
}

inline ObservableSpec constant(double c = 1.0) {
  ObservableSpec o;
  o.name = "constant";
  o.growth = GrowthClass::bounded_decaying;
  o.real = [c](double) { return c; };
  o.analytic = [c](Complex) { return Complex(c, 0.0); };
  return o;
}

/// g(E) = 1 / ((E - center)^2 + width^2), continued as 1/((z-c)^2 + b^2).
inline ObservableSpec lorentzian_kernel(double center, double width) {
  if (!(width > 0)) throw std::invalid_argument("lorentzian_kernel: width must be > 0");
  char label[64];
  std::snprintf(label, sizeof label, "lorentzian:c=%g:b=%g", center, width);
  ObservableSpec o;
  o.name = label;
  o.growth = GrowthClass::bounded_decaying;
  o.real = [center, width](double e) {
    return 1.0 / ((e - center) * (e - center) + width * width);
  };
  o.analytic = [center, width](Complex z) {
    return 1.0 / ((z - center) * (z - center) + width * width);
  };
  o.features = {center - width, center, center + width};
  return o;
}

/// g(E) = E^2: superlinear, present to exercise the domain failure.
inline ObservableSpec energy_squared() {
  ObservableSpec o;
  o.name = "energy_squared";
  o.growth = GrowthClass::superlinear;
  o.real = [](double e) { return e * e; };
  o.analytic = [](Complex z) { return z * z; };
  return o;
}

}  // namespace observables

/// |g_analytic(E) - g_real(E)| at a sample point; the continuation must
/// restrict to the real observable on the axis.
inline double observable_consistency_residual(const ObservableSpec& obs, double e) {
  return std::abs(obs.analytic(Complex(e, 0.0)) - Complex(obs.real(e), 0.0));
}

/// The zero-average convention.  The value carries a caveat: the bracket it
/// would normalize by is not defined, so this is a convention, not a result.
struct NakanishiAverage {
  double value = 0.0;
  std::string caveat;
};

inline NakanishiAverage average_nakanishi(const ResonancePole&) {
  return {0.0, "zero-average convention; the underlying norm bracket is undefined"};
}

/// g(z_R) by analytic continuation, with the dual pairing taken as one.
inline Complex average_complex(const ResonancePole& pole, const ObservableSpec& obs) {
  const Complex v = obs.analytic(pole.z());
  if (!is_finite(v))
    throw ContinuationUndefined("average_complex: observable '" + obs.name +
                                "' is singular at the pole");
  return v;
}

/// Lorentzian-weighted real average integral g(E) |psi(E)|^2 dE.  Linear
/// observables are integrated as a principal value centered at E_R;
/// superlinear ones are rejected.  The result must be real: an imaginary
/// part above 1e-9 is an error, below it is dropped.
inline double average_bohm(const GamowVector& state, const ObservableSpec& obs,
                           const QuadratureSpec& spec = {}) {
  if (obs.growth == GrowthClass::superlinear)
    throw DivergentObservable("average_bohm: observable '" + obs.name +
                              "' grows faster than E; the state has no finite second moment");

  std::vector<double> breaks = state.features();
  breaks.insert(breaks.end(), obs.features.begin(), obs.features.end());
  auto integrand = [&](double e) -> Complex {
    return Complex(obs.real(e) * state.breit_wigner_density(e));
  };

  IntegrationResult r;
  if (obs.growth == GrowthClass::linear) {
    r = principal_value(integrand, state.pole().resonance_energy(), spec, breaks);
  } else {
    r = integrate_real_line(integrand, spec, breaks);
  }
  if (std::abs(r.value.imag()) > 1e-9)
    throw Error("average_bohm: imaginary part " + std::to_string(r.value.imag()) +
                " exceeds the reality tolerance");
  return r.value.real();
}

/// Re g(z_R): literally the real part of average_complex, so the two agree
/// bit for bit by construction.
inline double average_berggren(const ResonancePole& pole, const ObservableSpec& obs) {
  return average_complex(pole, obs).real();
}

/// One row of the comparison table produced by the CLI.
struct AverageReport {
  ResonancePole pole;
  std::string observable;
  NakanishiAverage nakanishi;
  Complex complex_avg{};
  std::optional<double> bohm;      // empty when the observable is divergent
  std::string bohm_error;          // marker, e.g. "DivergentObservable"
  double berggren = 0.0;
  std::optional<double> bohm_minus_berggren;
};

inline AverageReport make_average_report(const ResonancePole& pole, const ObservableSpec& obs,
                                         const QuadratureSpec& spec = {}) {
  AverageReport row{pole, obs.name, average_nakanishi(pole), average_complex(pole, obs),
                    std::nullopt, "", 0.0, std::nullopt};
  row.berggren = row.complex_avg.real();
  try {
    row.bohm = average_bohm(GamowVector(pole, GamowKind::decaying), obs, spec);
    row.bohm_minus_berggren = *row.bohm - row.berggren;
  } catch (const DivergentObservable&) {
    row.bohm_error = "DivergentObservable";
  }
  return row;
}

struct ScalingPoint {
  double gamma = 0;
  double bohm = 0;
  double berggren = 0;
  double diff = 0;
};

/// Result of the width-scaling experiment: D(Gamma) = |bohm - berggren| per
/// width, plus the least-squares slope of log10 D against log10 Gamma.  When
/// every difference sits at the numerical floor the fit is degenerate and
/// the report says so instead (agreement exact to machine precision).
struct ScalingReport {
  std::vector<ScalingPoint> points;
  bool exact_agreement = false;
  LineFit fit{};
};

inline std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > lo)) throw std::invalid_argument("geometric_grid: need 0 < lo < hi");
  if (n < 2) throw std::invalid_argument("geometric_grid: need n >= 2");
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(step * i);
  return g;
}

inline ScalingReport gamma_scaling_experiment(const ObservableSpec& obs, double e_r,
                                              const std::vector<double>& gammas,
                                              const QuadratureSpec& spec = {}) {
  if (obs.growth != GrowthClass::bounded_decaying && obs.growth != GrowthClass::linear)
    throw DivergentObservable("gamma_scaling_experiment: observable '" + obs.name +
                              "' is not usable in the Lorentzian average");
  if (gammas.size() < 4)
    throw std::invalid_argument("gamma_scaling_experiment: the fit needs >= 4 widths");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 0))
      throw std::invalid_argument("gamma_scaling_experiment: widths must be > 0");
    if (i > 0 && !(gammas[i] > gammas[i - 1]))
      throw std::invalid_argument("gamma_scaling_experiment: widths must be strictly increasing");
  }
  if (gammas.back() / gammas.front() < 99.999)
    throw std::invalid_argument("gamma_scaling_experiment: widths must span >= 2 decades");

  ScalingReport report;
  report.points.reserve(gammas.size());
  double scale = 0.0;
  for (double gamma : gammas) {
    ResonancePole pole(e_r, gamma);
    ScalingPoint p;
    p.gamma = gamma;
    p.bohm = average_bohm(GamowVector(pole, GamowKind::decaying), obs, spec);
    p.berggren = average_berggren(pole, obs);
    p.diff = std::abs(p.bohm - p.berggren);
    scale = std::max({scale, std::abs(p.bohm), std::abs(p.berggren)});
    report.points.push_back(p);
  }

  const double floor = std::max(1e-11, 1e-10 * scale);
  std::vector<double> lx, ly;
  for (const ScalingPoint& p : report.points) {
    if (p.diff > floor) {
      lx.push_back(std::log10(p.gamma));
      ly.push_back(std::log10(p.diff));
    }
  }
  if (lx.size() < 2) {
    report.exact_agreement = true;
    return report;
  }
  report.fit = fit_line(lx, ly);
  return report;
}

struct MomentumCheckResult {
  double k_space_value = 0;
  double energy_space_value = 0;
  double residual = 0;  // |k_space_value - energy_space_value|
};

/// Evaluate the diagonal momentum-representation average with E(k) = k^2/2m,
///
///   (Gamma/2pi) integral_0^inf (k/m) g(k^2/2m) / |k^2/2m - z_R|^2 dk,
///
/// and compare it against the energy-representation average on [0, inf);
/// the change of variables makes the two integrals identical, so the
/// residual is pure quadrature error.  For the linear observable g(E) = E
/// both sides use the symmetric energy window [0, 2 E_R] about the peak
/// (the half-line analog of the principal-value rule; the unwindowed
/// half-line first moment of a Lorentzian diverges logarithmically).
inline MomentumCheckResult berggren_momentum_check(const ResonancePole& pole, double mass,
                                                   const ObservableSpec& obs,
                                                   const QuadratureSpec& spec = {}) {
  if (!(pole.resonance_energy() > 0))
    throw NegativeResonanceEnergy(
        "berggren_momentum_check: the momentum representation needs E_R > 0");
  if (!(mass > 0)) throw std::invalid_argument("berggren_momentum_check: mass must be > 0");
  if (obs.growth == GrowthClass::superlinear)
    throw DivergentObservable("berggren_momentum_check: observable '" + obs.name +
                              "' diverges in the half-line average");

  const double e_r = pole.resonance_energy();
  const double gamma = pole.width();
  const double alpha2 = gamma / (2.0 * std::numbers::pi);
  const Complex z_r = pole.z();

  auto k_integrand = [&](double k) -> Complex {
    const double e = k * k / (2.0 * mass);
    return Complex((k / mass) * obs.real(e) * alpha2 / std::norm(Complex(e, 0.0) - z_r));
  };
  auto e_integrand = [&](double e) -> Complex {
    return Complex(obs.real(e) * alpha2 / std::norm(Complex(e, 0.0) - z_r));
  };

  const double k_r = std::sqrt(2.0 * mass * e_r);
  const double dk = 0.5 * gamma * mass / k_r;  // half width mapped to momentum
  std::vector<double> k_breaks = {k_r - 5 * dk, k_r - dk, k_r, k_r + dk, k_r + 5 * dk};
  std::vector<double> e_breaks = {e_r - 2.5 * gamma, e_r - 0.5 * gamma, e_r,
                                  e_r + 0.5 * gamma, e_r + 2.5 * gamma};
  for (double f : obs.features) e_breaks.push_back(f);

  MomentumCheckResult result;
  if (obs.growth == GrowthClass::linear) {
    const double k_hi = std::sqrt(4.0 * mass * e_r);  // E = 2 E_R
    result.k_space_value =
        integrate_interval(k_integrand, 0.0, k_hi, spec, k_breaks).value.real();
    result.energy_space_value =
        integrate_interval(e_integrand, 0.0, 2.0 * e_r, spec, e_breaks).value.real();
  } else {
    result.k_space_value = integrate_half_line(k_integrand, spec, k_breaks).value.real();
    result.energy_space_value = integrate_half_line(e_integrand, spec, e_breaks).value.real();
  }
  result.residual = std::abs(result.k_space_value - result.energy_space_value);
  return result;
}

}  // namespace gamow
