#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "frx/errors.hpp"
#include "frx/hyperbolic.hpp"
#include "frx/types.hpp"

namespace frx {

/// A weighted Dirac measure travelling along x(t) = v_delta t + beta t^2 / 2
/// with weight w(t) = w0 t and assigned velocity u_delta(t) = v_delta + beta t.
struct DeltaShockWave {
  double v_delta = 0.0;
  double w0 = 0.0;
  double beta = 0.0;

  double position(double t) const { return parabola(v_delta, beta, t); }
  double speed(double t) const { return v_delta + beta * t; }
  double u_delta(double t) const { return v_delta + beta * t; }
  double weight(double t) const { return w0 * t; }
};

namespace detail {

inline void require_delta_data(const RiemannProblem& p) {
  const GasParams& g = p.params;
  if (g.pressureless()) {
    if (p.left.v < p.right.v) {
      throw Error(ErrorCode::RegionMismatch,
                  "pressureless delta shocks need u- >= u+");
    }
    return;
  }
  const Region r = classify_region(p);
  if (r != Region::III && r != Region::OnSdelta) {
    throw Error(ErrorCode::RegionMismatch,
                "delta shock needs the right state in region III or on S_delta");
  }
}

struct DeltaParameters {
  double v_delta;
  double w0;
};

inline DeltaParameters pressureless_delta(const RiemannProblem& p) {
  const double sl = std::sqrt(p.left.rho);
  const double sr = std::sqrt(p.right.rho);
  return {(sl * p.left.v + sr * p.right.v) / (sl + sr),
          sl * sr * (p.left.v - p.right.v)};
}

inline DeltaParameters chaplygin_delta(const RiemannProblem& p) {
  const GasParams& g = p.params;
  const double rm = p.left.rho, rp = p.right.rho;
  const double um = p.left.v, up = p.right.v;

  if (classify_region(p) == Region::OnSdelta) {
    // Limit of the shock/contact pair as the two waves merge.
    return {up, rm * (um - up)};
  }
  if (rp == rm) {
    return {0.5 * (up + um - g.pressure_term(rm)), rm * um - rp * up};
  }

  // rho A / rho^alpha, i.e. A rho^(1 - alpha)
  const double qm = rm * g.pressure_term(rm);
  const double qp = rp * g.pressure_term(rp);
  const double jump_q = qp - qm;
  const double jump_w = (up - g.pressure_term(rp)) - (um - g.pressure_term(rm));
  const double x = rp * rm * (up - um) * jump_w;
  const double half_root = std::sqrt(x + 0.25 * jump_q * jump_q);

  // Conjugate form when the subtraction would cancel.
  const double w0 = jump_q > 0.0 ? x / (half_root + 0.5 * jump_q)
                                 : half_root - 0.5 * jump_q;

  // v_delta is the root of
  //   a v^2 - b v + c = 0,  a = [rho], b = 2 [rho u] - [q], c = [rho u^2] - [q u]
  // selected by the entropy condition; pick the cancellation-free form.
  const double a = rp - rm;
  const double b = 2.0 * (rp * up - rm * um) - jump_q;
  const double c = (rp * up * up - rm * um * um) - (qp * up - qm * um);
  const double s = 2.0 * half_root;
  const double v_delta = b >= 0.0 ? (b + s) / (2.0 * a) : 2.0 * c / (b - s);
  return {v_delta, w0};
}

inline DeltaParameters delta_parameters(const RiemannProblem& p) {
  validate_problem(p);
  require_delta_data(p);
  return p.params.pressureless() ? pressureless_delta(p) : chaplygin_delta(p);
}

}  // namespace detail

/// Constant frame velocity of the delta shock.
inline double delta_speed(const RiemannProblem& p) {
  return detail::delta_parameters(p).v_delta;
}

/// Weight growth rate w0 with w(t) = w0 t.
inline double delta_weight_rate(const RiemannProblem& p) {
  return detail::delta_parameters(p).w0;
}

inline DeltaShockWave make_delta_shock(const RiemannProblem& p) {
  const auto params = detail::delta_parameters(p);
  return {params.v_delta, params.w0, p.params.beta};
}

/// A residual together with the summed magnitude of the terms it came from.
struct ScaledResidual {
  double value = 0.0;
  double scale = 0.0;

  double relative() const { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

/// Left-hand side of the quadratic whose entropy root is v_delta.
inline ScaledResidual delta_quadratic_residual(const RiemannProblem& p, double v) {
  const GasParams& g = p.params;
  const double rm = p.left.rho, rp = p.right.rho;
  const double um = p.left.v, up = p.right.v;
  const double qm = rm * g.pressure_term(rm);
  const double qp = rp * g.pressure_term(rp);
  const double t2 = (rp - rm) * v * v;
  const double t1 = -(2.0 * (rp * up - rm * um) - (qp - qm)) * v;
  const double t0 = (rp * up * up - rm * um * um) - (qp * up - qm * um);
  const double scale = std::abs(rp * v * v) + std::abs(rm * v * v) +
                       2.0 * (std::abs(rp * up) + std::abs(rm * um)) * std::abs(v) +
                       (qp + qm) * std::abs(v) + rp * up * up + rm * um * um +
                       std::abs(qp * up) + std::abs(qm * um);
  return {t2 + t1 + t0, scale};
}

/// Residuals of the generalized Rankine-Hugoniot conditions in the original
/// variables at time t:
///   dx/dt - sigma,
///   dw/dt - (sigma [rho] - [rho u]),
///   d(w u_delta)/dt - (sigma [rho (u + P)] - [rho u (u + P)] + beta w).
struct GrhResidual {
  std::array<double, 3> value{};
  std::array<double, 3> scale{};

  double max_relative() const {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double s = scale[i] > 0.0 ? scale[i] : 1.0;
      worst = std::max(worst, std::abs(value[i]) / s);
    }
    return worst;
  }
};

inline GrhResidual grh_residual(const RiemannProblem& p, const DeltaShockWave& d,
                                double t) {
  const GasParams& g = p.params;
  const double rm = p.left.rho, rp = p.right.rho;
  const double um = p.left.v + g.beta * t;
  const double up = p.right.v + g.beta * t;
  const double pm = g.pressure_term(rm), pp = g.pressure_term(rp);

  const double sigma = d.u_delta(t);
  const double dxdt = d.v_delta + d.beta * t;
  const double dwdt = d.w0;
  const double dwudt = d.w0 * (d.v_delta + 2.0 * d.beta * t);

  GrhResidual r;
  r.value[0] = dxdt - sigma;
  r.scale[0] = std::abs(dxdt) + std::abs(sigma);

  const double mass_rhs = sigma * (rp - rm) - (rp * up - rm * um);
  r.value[1] = dwdt - mass_rhs;
  r.scale[1] = std::abs(dwdt) + std::abs(sigma) * (rp + rm) + std::abs(rp * up) +
               std::abs(rm * um);

  const double mp = rp * (up - pp), mm = rm * (um - pm);
  const double mom_rhs = sigma * (mp - mm) - (mp * up - mm * um) + g.beta * d.weight(t);
  r.value[2] = dwudt - mom_rhs;
  r.scale[2] = std::abs(dwudt) + std::abs(sigma) * (std::abs(mp) + std::abs(mm)) +
               std::abs(mp * up) + std::abs(mm * um) + std::abs(g.beta * d.weight(t));
  return r;
}

/// Overcompressive entropy condition u+ + beta t < u_delta(t) < u- - A/rho-^alpha + beta t.
/// The beta t shift cancels, so the bracket is checked on v_delta directly and
/// the answer does not depend on t. Equality is accepted only when the bracket
/// has collapsed to a point (the S_delta boundary).
inline bool entropy_check(const RiemannProblem& p, const DeltaShockWave& d,
                          [[maybe_unused]] double t) {
  const double lower = p.right.v;
  const double upper = p.left.v - p.params.pressure_term(p.left.rho);
  if (lower < upper) return lower < d.v_delta && d.v_delta < upper;
  if (lower == upper) return d.v_delta == lower;
  return false;
}

/// All t >= 0 with x(t) == x, ascending. For beta < 0 the trajectory turns
/// around at t = -v_delta / beta and a position may be visited twice.
inline std::vector<double> trajectory_inverse(const DeltaShockWave& d, double x) {
  const double v = d.v_delta;
  const double b = d.beta;
  std::vector<double> times;

  if (b == 0.0) {
    if (v == 0.0) {
      if (x == 0.0) return {0.0};
      throw Error(ErrorCode::Unreachable, "stationary delta shock never leaves x = 0");
    }
    const double t = x / v;
    if (t < 0.0) throw Error(ErrorCode::Unreachable, "position is behind the trajectory");
    return {t};
  }

  // beta t^2 / 2 + v t - x = 0
  double disc = v * v + 2.0 * b * x;
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                       (v * v + std::abs(2.0 * b * x));
  if (disc < 0.0) {
    if (disc < -slack) {
      throw Error(ErrorCode::Unreachable, "position lies beyond the turning point");
    }
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  if (root == 0.0) {
    times.push_back(-v / b);
  } else {
    const double q = -0.5 * (v + std::copysign(root, v == 0.0 ? 1.0 : v));
    times.push_back(q / (0.5 * b));
    times.push_back(q != 0.0 ? -x / q : -times.back());
  }
  std::vector<double> result;
  for (double t : times) {
    if (t >= 0.0) result.push_back(t);
    // -0.0 and tiny negative roots of x == 0 collapse onto the origin
    else if (x == 0.0) result.push_back(0.0);
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  if (result.empty()) {
    throw Error(ErrorCode::Unreachable, "trajectory reaches x only for t < 0");
  }
  return result;
}

/// C(t) + beta w(t), where C(t) collects the delta-curve terms left after
/// integrating the momentum weak form by parts. It vanishes identically for
/// a correctly constructed delta shock.
inline ScaledResidual c_identity_residual(const RiemannProblem& p, const DeltaShockWave& d,
                                          double t) {
  const GasParams& g = p.params;
  const double rm = p.left.rho, rp = p.right.rho;
  const double um = p.left.v + g.beta * t;
  const double up = p.right.v + g.beta * t;
  const double pm = g.pressure_term(rm), pp = g.pressure_term(rp);

  const double jump_m = rp * (up - pp) - rm * (um - pm);
  const double term1 = jump_m * (d.v_delta + g.beta * t);
  const double term2 = rm * um * (um - pm) - rp * up * (up - pp);
  const double term3 = -d.w0 * (d.v_delta + 2.0 * g.beta * t);
  const double friction = g.beta * d.weight(t);

  ScaledResidual r;
  r.value = term1 + term2 + term3 + friction;
  r.scale = (rp * std::abs(up - pp) + rm * std::abs(um - pm)) * std::abs(d.v_delta + g.beta * t) +
            rm * std::abs(um * (um - pm)) + rp * std::abs(up * (up - pp)) +
            std::abs(term3) + std::abs(friction);
  return r;
}

}  // namespace frx
