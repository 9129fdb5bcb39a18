#pragma once

// Non-decay amplitude A(t) = integral rho(E) e^{-iEt} dE and probability
// P(t) = |A(t)|^2 for concrete spectral densities.
//
// A Breit-Wigner density on the whole line gives the pure exponential
// A(t) = e^{-i z_R t}.  Truncating the support to [0, inf) (a lower-bounded
// spectrum) adds the rotated-edge contribution at E = 0, which decays only
// like 1/t: the probability leaves the exponential and settles onto a
// power law with log-log slope -2.  A truncated Gaussian has finite energy
// moments, so P(t) = 1 - (dH)^2 t^2 + ... starts flat: the short-time decay
// rate vanishes.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "gamow/errors.hpp"
#include "gamow/numerics.hpp"

namespace gamow {

enum class DensityKind { bw_full_line, bw_truncated, gaussian_truncated };

inline std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::bw_full_line: return "bw_full_line";
    case DensityKind::bw_truncated: return "bw_truncated";
    case DensityKind::gaussian_truncated: return "gaussian_truncated";
  }
  return "?";
}

/// An energy distribution normalized to unit weight over its support:
/// a Breit-Wigner on the whole line, a Breit-Wigner truncated to [0, inf),
/// or a Gaussian truncated to [0, inf).
class SpectralDensity {
 public:
  static SpectralDensity breit_wigner_full_line(double e_r, double gamma) {
    require_width(gamma);
    return SpectralDensity(DensityKind::bw_full_line, e_r, gamma, 1.0);
  }

  static SpectralDensity breit_wigner_truncated(double e_r, double gamma) {
    require_width(gamma);
    if (!(e_r > 0))
      throw std::invalid_argument("SpectralDensity: truncated Breit-Wigner needs E_R > 0");
    const double weight = 0.5 + std::atan(2.0 * e_r / gamma) / std::numbers::pi;
    return SpectralDensity(DensityKind::bw_truncated, e_r, gamma, 1.0 / weight);
  }

  static SpectralDensity gaussian_truncated(double e_r, double sigma) {
    require_width(sigma);
    const double weight = sigma * std::sqrt(2.0 * std::numbers::pi) * 0.5 *
                          (1.0 + std::erf(e_r / (sigma * std::sqrt(2.0))));
    return SpectralDensity(DensityKind::gaussian_truncated, e_r, sigma, 1.0 / weight);
  }

  DensityKind kind() const { return kind_; }
  double resonance_energy() const { return e_r_; }
  double width() const { return width_; }  // Gamma for BW, sigma for Gaussian
  double norm_constant() const { return norm_; }

  double lower_bound() const {
    return kind_ == DensityKind::bw_full_line ? -std::numeric_limits<double>::infinity() : 0.0;
  }

  double value(double e) const {
    if (kind_ != DensityKind::bw_full_line && e < 0.0) return 0.0;
    if (kind_ == DensityKind::gaussian_truncated) {
      const double u = (e - e_r_) / width_;
      return norm_ * std::exp(-0.5 * u * u);
    }
    const double hw = 0.5 * width_;
    return norm_ * (width_ / (2.0 * std::numbers::pi)) /
           ((e - e_r_) * (e - e_r_) + hw * hw);
  }

  std::vector<double> features() const {
    return {e_r_ - 5.0 * width_, e_r_ - width_, e_r_, e_r_ + width_, e_r_ + 5.0 * width_};
  }

  /// The BW kinds are rational with one pole in the lower half plane; the
  /// Gaussian grows off the axis and exposes no continuation.
  AnalyticContinuation analytic() const {
    AnalyticContinuation c;
    if (kind_ == DensityKind::gaussian_truncated) return c;
    c.available = true;
    const Complex z_r(e_r_, -0.5 * width_);
    const Complex z_c(e_r_, +0.5 * width_);
    const double a = norm_ * width_ / (2.0 * std::numbers::pi);
    c.eval = [a, z_r, z_c](Complex z) { return a / ((z - z_r) * (z - z_c)); };
    c.poles = {{z_r, a / (z_r - z_c)}};
    return c;
  }

  /// Finite second energy moment? Only the truncated Gaussian has one.
  bool has_finite_variance() const { return kind_ == DensityKind::gaussian_truncated; }

 private:
  SpectralDensity(DensityKind kind, double e_r, double width, double norm)
      : kind_(kind), e_r_(e_r), width_(width), norm_(norm) {}

  static void require_width(double w) {
    if (!(w > 0)) throw std::invalid_argument("SpectralDensity: width must be > 0");
  }

  DensityKind kind_;
  double e_r_;
  double width_;
  double norm_;
};

/// A(t) for t >= 0.  |A| <= 1 and A(0) = 1 up to quadrature error.
inline Complex amplitude(const SpectralDensity& d, double t, const QuadratureSpec& spec = {}) {
  if (t < 0) throw std::invalid_argument("amplitude: t must be >= 0");
  return oscillatory_integral(d, t, spec).value;
}

/// P(t) = |A(t)|^2.
inline double nondecay_probability(const SpectralDensity& d, double t,
                                   const QuadratureSpec& spec = {}) {
  return std::norm(amplitude(d, t, spec));
}

/// Reference decay law of the resonance pole, e^{-Gamma t}.  A Gaussian
/// profile has no pole, so its reference is zero and the whole probability
/// counts as background.
inline double exponential_reference(const SpectralDensity& d, double t) {
  if (d.kind() == DensityKind::gaussian_truncated) return 0.0;
  return std::exp(-d.width() * t);
}

struct LongtimeFit {
  double t_min = 0;
  double t_max = 0;
  LineFit fit{};  // slope/intercept/rms of log10 P against log10 t
};

/// Least-squares slope of log P(t) vs log t over [t_min, t_max] for the
/// truncated Breit-Wigner.  The expected value is -2 (the endpoint at E = 0
/// makes |A| ~ 1/t).  If the exponential still dominates inside the window
/// the points are curved, the fit residual blows past 0.05 and the call
/// refuses with WindowTooEarly.
inline LongtimeFit longtime_exponent(const SpectralDensity& d, double t_min, double t_max,
                                     int samples = 24, const QuadratureSpec& spec = {}) {
  if (d.kind() != DensityKind::bw_truncated)
    throw std::invalid_argument(
        "longtime_exponent: only the truncated Breit-Wigner has a power-law regime");
  if (!(t_min > 0) || !(t_max > t_min))
    throw std::invalid_argument("longtime_exponent: need 0 < t_min < t_max");
  if (samples < 4) throw std::invalid_argument("longtime_exponent: need >= 4 samples");

  std::vector<double> lx(samples), ly(samples);
  const double step = std::log(t_max / t_min) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double t = t_min * std::exp(step * i);
    lx[i] = std::log10(t);
    ly[i] = std::log10(nondecay_probability(d, t, spec));
  }
  LongtimeFit result{t_min, t_max, fit_line(lx, ly)};
  if (result.fit.rms_residual > 0.05)
    throw WindowTooEarly("longtime_exponent: fit residual " +
                         std::to_string(result.fit.rms_residual) +
                         " - the exponential still dominates in [" + std::to_string(t_min) +
                         ", " + std::to_string(t_max) + "]");
  return result;
}

/// Find the earliest start where a power law models log P better than an
/// exponential does on the short probe window [t, 3t] (equal parameter
/// count, so the information criterion reduces to comparing residuals),
/// then fit from twice that start to keep the crossover region out.
inline LongtimeFit longtime_exponent_auto(const SpectralDensity& d, double t_max,
                                          int samples = 24, const QuadratureSpec& spec = {}) {
  if (d.kind() != DensityKind::bw_truncated)
    throw std::invalid_argument(
        "longtime_exponent: only the truncated Breit-Wigner has a power-law regime");
  for (double t = t_max / 256.0; t <= 0.25 * t_max; t *= 1.5) {
    std::vector<double> ts(8), lt(8), lp(8);
    for (int i = 0; i < 8; ++i) {
      ts[i] = t * std::exp(std::log(3.0) * i / 7.0);
      lt[i] = std::log10(ts[i]);
      lp[i] = std::log10(nondecay_probability(d, ts[i], spec));
    }
    const double power_rms = fit_line(lt, lp).rms_residual;
    const double exp_rms = fit_line(ts, lp).rms_residual;
    // require a clear win and a clean fit; near the crossover the resonance
    // and background terms beat against each other and neither model fits
    if (power_rms < 0.5 * exp_rms && power_rms < 0.02)
      return longtime_exponent(d, 2.0 * t, t_max, samples, spec);
  }
  throw WindowTooEarly("longtime_exponent: no power-law regime below t = " +
                       std::to_string(t_max));
}

/// One-sided estimate of dP/dt at t = 0 (P is only defined for t >= 0):
/// (P(h) - P(0))/h.  For a density with finite variance this is
/// -(dH)^2 h + O(h^3), so it vanishes linearly in h; densities without a
/// second moment are rejected.
inline double zeno_check(const SpectralDensity& d, double h, const QuadratureSpec& spec = {}) {
  if (!d.has_finite_variance())
    throw InfiniteMoment("zeno_check: '" + to_string(d.kind()) +
                         "' has no finite second energy moment");
  if (!(h > 0)) throw std::invalid_argument("zeno_check: h must be > 0");
  return (nondecay_probability(d, h, spec) - nondecay_probability(d, 0.0, spec)) / h;
}

}  // namespace gamow
