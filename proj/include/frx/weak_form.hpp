#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "frx/delta_shock.hpp"
#include "frx/errors.hpp"
#include "frx/quadrature.hpp"
#include "frx/types.hpp"
#include "frx/wave_fan.hpp"

namespace frx {

/// Smooth bump exp(-1/(1-s^2)) exp(-1/(1-r^2)) with s = (x-x0)/rx and
/// r = (t-t0)/rt, zero outside the rectangle. The rectangle must sit in t > 0.
struct TestFunction {
  double x0 = 0.0;
  double t0 = 1.0;
  double rx = 0.5;
  double rt = 0.5;

  struct Value {
    double psi = 0.0;
    double psi_x = 0.0;
    double psi_t = 0.0;
  };

  Value at(double x, double t) const {
    const double s = (x - x0) / rx;
    const double r = (t - t0) / rt;
    if (std::abs(s) >= 1.0 || std::abs(r) >= 1.0) return {};
    const double ds = 1.0 - s * s;
    const double dr = 1.0 - r * r;
    const double bx = std::exp(-1.0 / ds);
    const double bt = std::exp(-1.0 / dr);
    return {bx * bt, bt * bx * (-2.0 * s / (ds * ds)) / rx,
            bx * bt * (-2.0 * r / (dr * dr)) / rt};
  }
};

/// Weak-form residuals for mass (R1) and momentum (R2), each with the
/// integral of the absolute integrand so they can be read relatively.
struct WeakResidual {
  double r1 = 0.0;
  double r2 = 0.0;
  double magnitude1 = 0.0;
  double magnitude2 = 0.0;

  double max_relative() const {
    const double a = magnitude1 > 0.0 ? std::abs(r1) / magnitude1 : std::abs(r1);
    const double b = magnitude2 > 0.0 ? std::abs(r2) / magnitude2 : std::abs(r2);
    return std::max(a, b);
  }
};

constexpr int kMinQuadOrder = 8;
constexpr int kMaxQuadOrder = 1024;

/// Distributional residuals of the candidate `fan` against the equations of
/// `p`:
///   R1 = <rho, psi_t> + <rho u, psi_x>
///   R2 = <rho (u + P), psi_t> + <rho u (u + P), psi_x> + <beta rho, psi>
/// On a delta shock P is taken as 0 and the measure contributes the line
/// integral of w(t) (...)(x(t), t) dt. Tensor Gauss-Legendre quadrature with
/// quad_n nodes per axis is applied on every cell between wave curves, so both
/// residuals tend to zero as quad_n grows when the fan is a weak solution.
inline WeakResidual weak_residual(const RiemannProblem& p, const WaveFan& fan,
                                  const TestFunction& psi, int quad_n) {
  if (quad_n < kMinQuadOrder || quad_n > kMaxQuadOrder) {
    throw Error(ErrorCode::UnsupportedQuadOrder,
                "quad_n must lie in [8, 1024], got " + std::to_string(quad_n));
  }
  if (!(psi.t0 - psi.rt > 0.0) || !(psi.rx > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "test function support must lie in t > 0");
  }
  const GasParams& g = p.params;
  const double beta = g.beta;
  const GaussLegendre rule(quad_n);

  CompensatedSum r1, r2, m1, m2;
  auto accumulate = [&](double f1, double f2, double weight) {
    r1.add(weight * f1);
    r2.add(weight * f2);
    m1.add(std::abs(weight * f1));
    m2.add(std::abs(weight * f2));
  };

  // Integrates `body(t, weight)` over [a, b].
  auto integrate_t = [&](double a, double b, auto&& body) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      body(mid + half * rule.nodes[i], half * rule.weights[i]);
    }
  };

  const double x_lo = psi.x0 - psi.rx, x_hi = psi.x0 + psi.rx;
  const double t_lo = psi.t0 - psi.rt, t_hi = psi.t0 + psi.rt;

  // Times at which waves enter or leave the support; the x-integral is only
  // piecewise smooth in t across them.
  std::vector<double> t_cuts{t_lo, t_hi};
  const bool trivial = detail::breakpoints(fan, psi.t0).empty();
  for (const auto& wp : trivial ? std::vector<LabeledPosition>{} : wave_positions(fan, psi.t0)) {
    const DeltaShockWave curve{wp.coefficient, 0.0, beta};
    for (double xe : {x_lo, x_hi}) {
      try {
        for (double tc : trajectory_inverse(curve, xe)) {
          if (tc > t_lo && tc < t_hi) t_cuts.push_back(tc);
        }
      } catch (const Error&) {
        // edge never reached
      }
    }
  }
  std::sort(t_cuts.begin(), t_cuts.end());

  // piecewise-smooth part
  auto slab = [&](double t, double wt) {
    std::vector<double> cuts{x_lo};
    for (double xb : detail::breakpoints(fan, t)) {
      if (xb > x_lo && xb < x_hi) cuts.push_back(xb);
    }
    cuts.push_back(x_hi);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k], b = cuts[k + 1];
      if (!(b > a)) continue;
      const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
      for (std::size_t j = 0; j < rule.size(); ++j) {
        const double x = mid + half * rule.nodes[j];
        const double w = wt * half * rule.weights[j];
        const auto state = detail::frame_state(fan, (x - 0.5 * beta * t * t) / t);
        if (!state) continue;  // vacuum
        const auto v = psi.at(x, t);
        const double rho = state->rho;
        const double u = state->v + beta * t;
        const double up = u - g.pressure_term(rho);
        accumulate(rho * v.psi_t + rho * u * v.psi_x,
                   rho * up * v.psi_t + rho * u * up * v.psi_x + beta * rho * v.psi, w);
      }
    }
  };
  for (std::size_t k = 0; k + 1 < t_cuts.size(); ++k) {
    integrate_t(t_cuts[k], t_cuts[k + 1], slab);
  }

  // delta line integral; the trajectory is one of the waves, so the same cuts
  // separate its stretches inside and outside the support
  if (const auto* ds = std::get_if<DeltaShock>(&fan.waves)) {
    const DeltaShockWave& d = ds->delta;
    for (std::size_t k = 0; k + 1 < t_cuts.size(); ++k) {
      integrate_t(t_cuts[k], t_cuts[k + 1], [&](double t, double wt) {
        const auto v = psi.at(d.position(t), t);
        const double weight = d.weight(t);
        const double ud = d.u_delta(t);
        accumulate(weight * (v.psi_t + ud * v.psi_x),
                   weight * (ud * v.psi_t + ud * ud * v.psi_x + beta * v.psi), wt);
      });
    }
  }

  return {r1.value(), r2.value(), m1.value(), m2.value()};
}

/// Five bumps straddling the waves of `fan`, with varied centers and radii.
inline std::vector<TestFunction> default_bump_battery(const WaveFan& fan) {
  struct Shape {
    double t0, rt, rx, offset;
  };
  static constexpr std::array<Shape, 5> shapes{{
      {1.0, 0.5, 0.6, 0.0},
      {1.3, 0.4, 0.35, 0.05},
      {0.9, 0.5, 0.9, -0.1},
      {1.6, 0.6, 0.5, 0.02},
      {1.2, 0.7, 1.2, 0.15},
  }};
  std::vector<TestFunction> battery;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const Shape& s = shapes[i];
    const auto waves = wave_positions(fan, s.t0);
    const double center = waves[i % waves.size()].position + s.offset;
    battery.push_back({center, s.t0, s.rx, s.rt});
  }
  return battery;
}

}  // namespace frx
