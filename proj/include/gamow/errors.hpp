#pragma once

#include <stdexcept>
#include <string>

namespace gamow {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// quadrature
struct NonConvergence : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };

// complex root finding
struct NoConvergence : Error { using Error::Error; };
struct DerivativeVanished : Error { using Error::Error; };

// Hardy-function boundary integrals
struct OnAxisTarget : Error { using Error::Error; };
struct WrongHalfPlane : Error { using Error::Error; };

// Gamow states
struct NonPositiveWidth : Error { using Error::Error; };
struct WrongTimeDomain : Error { using Error::Error; };

// averages
struct ContinuationUndefined : Error { using Error::Error; };
struct DivergentObservable : Error { using Error::Error; };
struct NegativeResonanceEnergy : Error { using Error::Error; };

// scattering model
struct PoleHit : Error { using Error::Error; };
struct NoPolesInWindow : Error { using Error::Error; };

// survival curves
struct InfiniteMoment : Error { using Error::Error; };
struct WindowTooEarly : Error { using Error::Error; };

// CLI configuration
struct ConfigError : Error { using Error::Error; };

}  // namespace gamow
