#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "frx/errors.hpp"
#include "frx/hyperbolic.hpp"
#include "frx/types.hpp"
#include "frx/wave_fan.hpp"

namespace frx {

constexpr double kDensityFloor = 1e-12;

/// Finite-volume run settings. The grid covers [x_lo, x_hi] in coordinates
/// moving with the constant `frame_speed`; lab position is x + frame_speed t.
struct FvConfig {
  RiemannProblem problem;
  double x_lo = -1.0;
  double x_hi = 1.0;
  int cells = 2000;
  double cfl = 0.45;
  double t_end = 1.0;
  double frame_speed = 0.0;

  double dx() const { return (x_hi - x_lo) / cells; }
};

struct FvState {
  FvConfig config;
  std::vector<double> rho;
  std::vector<double> m;  // rho v - A rho^(1 - alpha)
  double t = 0.0;
  int steps = 0;
  long clamp_count = 0;
  // Net amount of rho and m that has left through the boundaries.
  double rho_outflow = 0.0;
  double m_outflow = 0.0;

  std::size_t size() const { return rho.size(); }
  double dx() const { return config.dx(); }
  /// Lab-frame center of cell i at the current time.
  double center(std::size_t i) const {
    return config.x_lo + (static_cast<double>(i) + 0.5) * dx() + config.frame_speed * t;
  }
  double total_rho() const;
  double total_m() const;
};

inline double conserved_m(const PrimState& s, const GasParams& g) {
  return s.rho * s.v - s.rho * g.pressure_term(s.rho);
}

inline double primitive_recover(double rho, double m, const GasParams& g) {
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::NonPositiveDensity,
                "density must be positive, got " + std::to_string(rho));
  }
  return (m + rho * g.pressure_term(rho)) / rho;
}

namespace detail {

inline double neumaier_total(const std::vector<double>& xs, double dx) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return (sum + comp) * dx;
}

}  // namespace detail

inline double FvState::total_rho() const { return detail::neumaier_total(rho, dx()); }
inline double FvState::total_m() const { return detail::neumaier_total(m, dx()); }

/// Extreme lab positions reached by the waves of `fan` over [0, t_end],
/// expressed in grid coordinates.
inline std::pair<double, double> wave_extent(const WaveFan& fan, double t_end,
                                            double frame_speed) {
  const double beta = fan.problem.params.beta;
  double lo = 0.0, hi = 0.0;
  for (const auto& wp : wave_positions(fan, t_end)) {
    std::vector<double> ts{t_end};
    // turning point of c t + beta t^2 / 2 - s t
    if (beta != 0.0) {
      const double tv = -(wp.coefficient - frame_speed) / beta;
      if (tv > 0.0 && tv < t_end) ts.push_back(tv);
    }
    for (double t : ts) {
      const double x = parabola(wp.coefficient, beta, t) - frame_speed * t;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  return {lo, hi};
}

inline void validate_config(const FvConfig& cfg) {
  validate_problem(cfg.problem);
  if (cfg.cells < 100) {
    throw Error(ErrorCode::InvalidConfig, "need at least 100 cells, got " + std::to_string(cfg.cells));
  }
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.5)) {
    throw Error(ErrorCode::InvalidConfig, "CFL number must lie in (0, 0.5]");
  }
  if (!std::isfinite(cfg.t_end) || !(cfg.t_end > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "end time must be positive and finite");
  }
  if (!std::isfinite(cfg.frame_speed)) {
    throw Error(ErrorCode::NonFiniteInput, "frame speed must be finite");
  }
  if (!(std::isfinite(cfg.x_lo) && std::isfinite(cfg.x_hi) && cfg.x_lo < 0.0 && 0.0 < cfg.x_hi)) {
    throw Error(ErrorCode::InvalidConfig, "domain must be finite and contain x = 0 in its interior");
  }
  const double k = -cfg.x_lo / cfg.dx();
  if (std::abs(k - std::round(k)) > 1e-9) {
    throw Error(ErrorCode::InvalidConfig, "x = 0 must fall on a cell interface");
  }
  const auto [lo, hi] = wave_extent(solve(cfg.problem), cfg.t_end, cfg.frame_speed);
  const double margin = 0.1 * (cfg.x_hi - cfg.x_lo);
  if (lo < cfg.x_lo + margin || hi > cfg.x_hi - margin) {
    throw Error(ErrorCode::InvalidConfig,
                "waves come within 10% of the domain boundary before the end time");
  }
}

/// Settings whose grid moves with the middle of the fan and is only as wide
/// as the waves need (10% margin kept), with half-width at least
/// `min_half_width`. Narrow fans such as thin shock/contact plateaus are
/// resolved far better this way than on a fixed lab-frame grid.
inline FvConfig fitted_config(const RiemannProblem& p, int cells, double t_end,
                              double min_half_width = 0.0) {
  const WaveFan fan = solve(p);
  double c_min = 0.0, c_max = 0.0;
  bool first = true;
  for (const auto& wp : wave_positions(fan, t_end)) {
    c_min = first ? wp.coefficient : std::min(c_min, wp.coefficient);
    c_max = first ? wp.coefficient : std::max(c_max, wp.coefficient);
    first = false;
  }
  const double speed = 0.5 * (c_min + c_max) + 0.5 * p.params.beta * t_end;
  const auto [lo, hi] = wave_extent(fan, t_end, speed);
  double half = std::max({-lo, hi, 0.0}) / 0.79;
  half = std::max(half, min_half_width);
  if (!(half > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "fan has zero extent; give a minimum half-width");
  }
  if (cells % 2 != 0) ++cells;  // keeps x = 0 on an interface
  return {p, -half, half, cells, 0.5, t_end, speed};
}

inline FvState initial_state(const FvConfig& cfg) {
  validate_config(cfg);
  const GasParams& g = cfg.problem.params;
  const auto n = static_cast<std::size_t>(cfg.cells);
  const auto split = static_cast<std::size_t>(std::llround(-cfg.x_lo / cfg.dx()));
  FvState s{cfg, std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const PrimState& side = i < split ? cfg.problem.left : cfg.problem.right;
    s.rho[i] = side.rho;
    s.m[i] = conserved_m(side, g);
  }
  return s;
}

namespace detail {

struct CellFlux {
  double f_rho;
  double f_m;
  double speed;  // largest |lambda - frame_speed|
};

inline CellFlux cell_flux(double rho, double m, double t, const FvConfig& cfg) {
  const GasParams& g = cfg.problem.params;
  const double v = (m + rho * g.pressure_term(rho)) / rho;
  const double lam2 = v + g.beta * t - cfg.frame_speed;
  const double lam1 = lam2 - g.alpha * g.pressure_term(rho);
  return {lam2 * rho, lam2 * m, std::max(std::abs(lam1), std::abs(lam2))};
}

}  // namespace detail

/// One forward-Euler local Lax-Friedrichs step of
///   rho_t + ((v + beta t - s) rho)_x = 0,  m_t + ((v + beta t - s) m)_x = 0
/// with zero-gradient boundaries. The step is shortened to land on t_end.
inline void step(FvState& s) {
  const FvConfig& cfg = s.config;
  if (!(s.t < cfg.t_end)) {
    throw Error(ErrorCode::InvalidConfig, "state has already reached the end time");
  }
  const std::size_t n = s.size();
  const double dx = cfg.dx();

  std::vector<detail::CellFlux> f(n);
  double max_speed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = detail::cell_flux(s.rho[i], s.m[i], s.t, cfg);
    max_speed = std::max(max_speed, f[i].speed);
    if (!std::isfinite(f[i].speed)) {
      throw Error(ErrorCode::CflViolation,
                  "non-finite wave speed in cell " + std::to_string(i) + " at t = " +
                      std::to_string(s.t));
    }
  }
  const double remaining = cfg.t_end - s.t;
  double dt = remaining;
  if (max_speed > 0.0) dt = std::min(dt, cfg.cfl * dx / max_speed);
  const double ratio = dt / dx;

  // Interface fluxes; ghost cells copy the boundary cells.
  std::vector<double> g_rho(n + 1), g_m(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t l = k == 0 ? 0 : k - 1;
    const std::size_t r = k == n ? n - 1 : k;
    const double a = std::max(f[l].speed, f[r].speed);
    g_rho[k] = 0.5 * (f[l].f_rho + f[r].f_rho) - 0.5 * a * (s.rho[r] - s.rho[l]);
    g_m[k] = 0.5 * (f[l].f_m + f[r].f_m) - 0.5 * a * (s.m[r] - s.m[l]);
  }

  const GasParams& g = cfg.problem.params;
  for (std::size_t i = 0; i < n; ++i) {
    const double rho_new = s.rho[i] - ratio * (g_rho[i + 1] - g_rho[i]);
    const double m_new = s.m[i] - ratio * (g_m[i + 1] - g_m[i]);
    if (rho_new < kDensityFloor || !std::isfinite(rho_new)) {
      // keep the old velocity on the clamped cell
      const double v_old = f[i].f_rho / s.rho[i] + cfg.frame_speed - g.beta * s.t;
      s.rho[i] = kDensityFloor;
      s.m[i] = conserved_m({kDensityFloor, v_old}, g);
      ++s.clamp_count;
    } else {
      s.rho[i] = rho_new;
      s.m[i] = m_new;
    }
  }
  s.rho_outflow += dt * (g_rho[n] - g_rho[0]);
  s.m_outflow += dt * (g_m[n] - g_m[0]);
  s.t = dt == remaining ? cfg.t_end : s.t + dt;
  ++s.steps;
}

inline FvState run(const FvConfig& cfg) {
  FvState s = initial_state(cfg);
  while (s.t < cfg.t_end) step(s);
  return s;
}

/// Mass in the lab-frame window [center - halfwidth, center + halfwidth]
/// minus the background that the cells adjacent to the window would have
/// put there.
inline double measure_delta_mass(const FvState& s, double center, double halfwidth) {
  if (!(halfwidth > 0.0) || !std::isfinite(center) || !std::isfinite(halfwidth)) {
    throw Error(ErrorCode::InvalidConfig, "window needs a finite center and positive halfwidth");
  }
  const double dx = s.dx();
  const double origin = s.center(0) - 0.5 * dx;
  const double first = std::ceil((center - halfwidth - origin) / dx - 0.5);
  const double last = std::floor((center + halfwidth - origin) / dx - 0.5);
  if (first < 1.0 || last > static_cast<double>(s.size()) - 2.0 || last < first) {
    throw Error(ErrorCode::WindowOutOfDomain, "delta window must lie strictly inside the domain");
  }
  const auto i0 = static_cast<std::size_t>(first);
  const auto i1 = static_cast<std::size_t>(last);
  const double bg_left = s.rho[i0 - 1];
  const double bg_right = s.rho[i1 + 1];
  double mass = 0.0;
  for (std::size_t i = i0; i <= i1; ++i) {
    mass += (s.rho[i] - (s.center(i) < center ? bg_left : bg_right)) * dx;
  }
  return mass;
}

/// L1 distance in rho between the run and the exact fan at the run's time,
/// over cells whose centers lie farther than `exclusion` from every wave.
inline double compare_to_exact(const FvState& s, const WaveFan& fan, double exclusion) {
  if (s.t != s.config.t_end) {
    throw Error(ErrorCode::TimeMismatch, "run has not reached its end time");
  }
  const RiemannProblem& a = s.config.problem;
  const RiemannProblem& b = fan.problem;
  if (!(a.left == b.left && a.right == b.right && a.params.A == b.params.A &&
        a.params.alpha == b.params.alpha && a.params.beta == b.params.beta)) {
    throw Error(ErrorCode::CaseMismatch, "fan was solved for a different problem");
  }
  const auto waves = wave_positions(fan, s.t);
  double err = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s.center(i);
    const bool near = std::any_of(waves.begin(), waves.end(), [&](const LabeledPosition& w) {
      return std::abs(x - w.position) <= exclusion;
    });
    if (near) continue;
    const auto exact = evaluate(fan, x, s.t, 0.0);
    const double rho = exact.kind == SampleKind::Regular ? exact.rho : 0.0;
    err += std::abs(s.rho[i] - rho) * s.dx();
  }
  return err;
}

/// Lab position of the interface with the largest density jump among cells
/// whose centers lie within `radius` of `guess`.
inline double locate_steepest_gradient(const FvState& s, double guess, double radius) {
  std::optional<std::size_t> best;
  double best_jump = -1.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double xf = 0.5 * (s.center(i) + s.center(i + 1));
    if (std::abs(xf - guess) > radius) continue;
    const double jump = std::abs(s.rho[i + 1] - s.rho[i]);
    if (jump > best_jump) {
      best_jump = jump;
      best = i;
    }
  }
  if (!best) throw Error(ErrorCode::WindowOutOfDomain, "search window holds no interfaces");
  return 0.5 * (s.center(*best) + s.center(*best + 1));
}

/// Lab center of the densest cell within `radius` of `guess`.
inline double locate_density_peak(const FvState& s, double guess, double radius) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s.center(i) - guess) > radius) continue;
    if (!best || s.rho[i] > s.rho[*best]) best = i;
  }
  if (!best) throw Error(ErrorCode::WindowOutOfDomain, "search window holds no cells");
  return s.center(*best);
}

struct WaveOffset {
  std::string label;
  double exact;
  double found;
  double cells;  // (found - exact) / dx
};

/// Locates every jump and delta of `fan` in the run: deltas by their density
/// peak, jumps by the steepest density gradient. Rarefaction edges are kinks
/// and are skipped. The search radius is `max_cells` cells, cut to half the
/// distance to the nearest other wave.
inline std::vector<WaveOffset> wave_offsets(const FvState& s, const WaveFan& fan,
                                            double max_cells = 20.0) {
  const double dx = s.dx();
  std::vector<WaveOffset> out;
  if (detail::breakpoints(fan, s.t).empty()) return out;
  const auto waves = wave_positions(fan, s.t);
  for (std::size_t k = 0; k < waves.size(); ++k) {
    const auto& w = waves[k];
    if (std::holds_alternative<RarefactionContact>(fan.waves) && (w.label == "x1m" || w.label == "x1p")) {
      continue;
    }
    double radius = max_cells * dx;
    for (std::size_t j = 0; j < waves.size(); ++j) {
      if (j != k) radius = std::min(radius, 0.5 * std::abs(waves[j].position - w.position));
    }
    const double found = std::holds_alternative<DeltaShock>(fan.waves)
                             ? locate_density_peak(s, w.position, radius)
                             : locate_steepest_gradient(s, w.position, radius);
    out.push_back({w.label, w.position, found, (found - w.position) / dx});
  }
  return out;
}

/// Density of the cell nearest the middle of a region-II plateau.
inline std::optional<double> plateau_density(const FvState& s, const WaveFan& fan) {
  if (!std::holds_alternative<ShockContact>(fan.waves)) return std::nullopt;
  const auto pos = wave_positions(fan, s.t);
  const double mid = 0.5 * (pos[0].position + pos[1].position);
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (std::abs(s.center(i) - mid) < std::abs(s.center(best) - mid)) best = i;
  }
  return s.rho[best];
}

}  // namespace frx
