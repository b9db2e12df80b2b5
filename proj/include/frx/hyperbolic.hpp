#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "frx/errors.hpp"
#include "frx/types.hpp"

namespace frx {

struct Eigenvalues {
  double lambda1;
  double lambda2;
};

/// Characteristic speeds of the conservative system at time t:
/// lambda1 = v + beta t - A alpha / rho^alpha, lambda2 = v + beta t.
inline Eigenvalues eigenvalues(const PrimState& s, double t, const GasParams& g) {
  require_positive_density(s);
  const double advect = s.v + g.beta * t;
  return {advect - g.alpha * g.pressure_term(s.rho), advect};
}

/// lambda1 with the beta t shift removed. Waves of the first family start at
/// the origin and travel along c t + beta t^2 / 2 with c equal to this speed.
inline double frame_speed1(const PrimState& s, const GasParams& g) {
  return s.v - g.alpha * g.pressure_term(s.rho);
}

struct RiemannInvariants {
  double w;  // v - A / rho^alpha, constant across first-family waves
  double z;  // v, constant across the contact
};

inline RiemannInvariants riemann_invariants(const PrimState& s, const GasParams& g) {
  require_positive_density(s);
  return {s.v - g.pressure_term(s.rho), s.v};
}

/// Position of the right state in the phase plane of the left state. The
/// boundary tags fire on exact equality only; OnJ takes priority over I.
inline Region classify_region(const RiemannProblem& p) {
  const GasParams& g = p.params;
  if (g.pressureless()) {
    throw Error(ErrorCode::PressurelessNotApplicable,
                "region classification needs A > 0");
  }
  const double u_minus = p.left.v;
  const double u_plus = p.right.v;
  if (u_plus == u_minus) return Region::OnJ;
  if (u_plus > u_minus) return Region::I;
  const double s_delta = u_minus - g.pressure_term(p.left.rho);
  if (u_plus == s_delta) return Region::OnSdelta;
  if (u_plus > s_delta) return Region::II;
  return Region::III;
}

/// State between the first-family wave and the contact:
/// rho* = (A / (u+ - u- + A / rho-^alpha))^(1/alpha), v* = u+.
inline PrimState intermediate_state(const RiemannProblem& p) {
  const GasParams& g = p.params;
  if (g.pressureless()) {
    throw Error(ErrorCode::PressurelessNotApplicable,
                "the pressureless system has no intermediate state");
  }
  require_positive_density(p.left);
  if (p.right.v == p.left.v) return {p.left.rho, p.left.v};
  const double denom = p.right.v - p.left.v + g.pressure_term(p.left.rho);
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::RegionMismatch,
                "intermediate state exists only in regions I and II");
  }
  return {std::pow(g.A / denom, 1.0 / g.alpha), p.right.v};
}

namespace detail {

// Interior of the first-family fan in the frame y = (x - beta t^2 / 2) / t,
// where the solution is self-similar.
inline PrimState rarefaction_in_frame(double y, const PrimState& left,
                                      const GasParams& g,
                                      const std::optional<PrimState>& head) {
  const double w_minus = left.v - g.pressure_term(left.rho);
  const double tail = frame_speed1(left, g);
  const double slack = 1e-12 * std::max(1.0, std::abs(tail));
  if (y < tail - slack) {
    throw Error(ErrorCode::OutsideFan, "point lies left of the rarefaction tail");
  }
  if (head) {
    const double head_speed = frame_speed1(*head, g);
    if (y > head_speed + slack * std::max(1.0, std::abs(head_speed))) {
      throw Error(ErrorCode::OutsideFan, "point lies right of the rarefaction head");
    }
    if (y >= head_speed) return *head;
  }
  if (y <= tail) return left;
  const double rho = std::pow(g.A * (1.0 - g.alpha) / (y - w_minus), 1.0 / g.alpha);
  const double v = (y - g.alpha * w_minus) / (1.0 - g.alpha);
  return {rho, v};
}

}  // namespace detail

/// State inside the first-family rarefaction at (x, t), given xi = x / t.
/// Characteristics bend with the friction, so the self-similar variable is
/// xi - beta t / 2. Passing the intermediate state as `head` also checks the
/// right edge of the fan.
inline PrimState rarefaction_state(double xi, double t, const PrimState& left,
                                   const GasParams& g,
                                   const std::optional<PrimState>& head = std::nullopt) {
  if (g.pressureless()) {
    throw Error(ErrorCode::PressurelessNotApplicable,
                "the pressureless system has no rarefaction waves");
  }
  require_positive_density(left);
  return detail::rarefaction_in_frame(xi - 0.5 * g.beta * t, left, g, head);
}

}  // namespace frx
