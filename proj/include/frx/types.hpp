#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "frx/errors.hpp"

namespace frx {

/// Pressure law P = -A / rho^alpha and Coulomb-like friction beta.
/// A == 0 selects the pressureless system.
struct GasParams {
  double A = 0.0;
  double alpha = 0.5;
  double beta = 0.0;

  bool pressureless() const { return A == 0.0; }

  /// A / rho^alpha, the magnitude of the (negative) pressure.
  double pressure_term(double rho) const {
    return pressureless() ? 0.0 : A / std::pow(rho, alpha);
  }
};

/// Density and time-shifted velocity v = u - beta t.
struct PrimState {
  double rho = 1.0;
  double v = 0.0;

  friend bool operator==(const PrimState&, const PrimState&) = default;
};

/// Riemann data: left/right states at t = 0 (where v == u) and the gas.
struct RiemannProblem {
  PrimState left;
  PrimState right;
  GasParams params;
};

enum class Region { I, II, III, OnJ, OnSdelta };

constexpr std::string_view to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::OnJ: return "OnJ";
    case Region::OnSdelta: return "OnSdelta";
  }
  return "?";
}

inline void require_positive_density(const PrimState& s) {
  if (!(s.rho > 0.0)) {
    throw Error(ErrorCode::NonPositiveDensity,
                "density must be positive, got " + std::to_string(s.rho));
  }
}

inline RiemannProblem validate_problem(const RiemannProblem& p) {
  const double values[] = {p.left.rho, p.left.v,      p.right.rho,
                           p.right.v,  p.params.A,    p.params.alpha,
                           p.params.beta};
  for (double x : values) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::NonFiniteInput, "all problem inputs must be finite");
    }
  }
  require_positive_density(p.left);
  require_positive_density(p.right);
  if (p.params.A < 0.0) {
    throw Error(ErrorCode::InvalidConfig, "A must be non-negative");
  }
  if (p.params.A > 0.0 && !(p.params.alpha > 0.0 && p.params.alpha < 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange,
                "alpha must lie in (0,1) when A > 0, got " +
                    std::to_string(p.params.alpha));
  }
  return p;
}

/// max(1, |rho+-|, |u+-|, A, |beta|), the reference magnitude for
/// relative tolerances.
inline double problem_scale(const RiemannProblem& p) {
  return std::max({1.0, p.left.rho, p.right.rho, std::abs(p.left.v),
                   std::abs(p.right.v), p.params.A, std::abs(p.params.beta)});
}

/// Position of a wave emanating from the origin: c t + beta t^2 / 2.
inline double parabola(double coefficient, double beta, double t) {
  return coefficient * t + 0.5 * beta * t * t;
}

}  // namespace frx
