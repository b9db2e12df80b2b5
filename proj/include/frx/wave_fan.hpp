#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frx/delta_shock.hpp"
#include "frx/errors.hpp"
#include "frx/hyperbolic.hpp"
#include "frx/types.hpp"

namespace frx {

// Every wave starts at the origin and follows c t + beta t^2 / 2; the structs
// below store the coefficients c.

/// Pressureless, u- < u+: two contacts with vacuum between them.
struct TwoContactsVacuum {
  double c_left;
  double c_right;
};

/// u- == u+: a single contact discontinuity.
struct SingleContact {
  double c;
};

/// Region I: first-family rarefaction, intermediate state, contact.
struct RarefactionContact {
  double c_tail;  // x1-(t)
  double c_head;  // x1+(t)
  PrimState star;
  double c_contact;  // x2(t)
};

/// Region II: first-family shock, intermediate state, contact.
struct ShockContact {
  double c_shock;  // x1(t)
  PrimState star;
  double c_contact;  // x2(t)
};

struct DeltaShock {
  DeltaShockWave delta;
};

using WaveStructure =
    std::variant<TwoContactsVacuum, SingleContact, RarefactionContact, ShockContact, DeltaShock>;

struct WaveFan {
  RiemannProblem problem;
  std::optional<Region> region;  // empty for the pressureless system
  WaveStructure waves;
};

inline std::string variant_name(const WaveFan& fan) {
  struct Namer {
    std::string operator()(const TwoContactsVacuum&) const { return "two_contacts_vacuum"; }
    std::string operator()(const SingleContact&) const { return "single_contact"; }
    std::string operator()(const RarefactionContact&) const { return "rarefaction_contact"; }
    std::string operator()(const ShockContact&) const { return "shock_contact"; }
    std::string operator()(const DeltaShock&) const { return "delta_shock"; }
  };
  return std::visit(Namer{}, fan.waves);
}

inline WaveFan solve(const RiemannProblem& input) {
  const RiemannProblem p = validate_problem(input);
  const GasParams& g = p.params;
  const double um = p.left.v, up = p.right.v;

  if (g.pressureless()) {
    if (um < up) return {p, std::nullopt, TwoContactsVacuum{um, up}};
    if (um == up) return {p, std::nullopt, SingleContact{um}};
    return {p, std::nullopt, DeltaShock{make_delta_shock(p)}};
  }

  const Region region = classify_region(p);
  switch (region) {
    case Region::OnJ:
      return {p, region, SingleContact{um}};
    case Region::I: {
      const PrimState star = intermediate_state(p);
      return {p, region,
              RarefactionContact{frame_speed1(p.left, g), frame_speed1(star, g), star, up}};
    }
    case Region::II: {
      const PrimState star = intermediate_state(p);
      // (rho* u+ - rho- u-) / (rho* - rho-), rearranged so the jump in u is
      // the only difference taken
      const double c_shock = up + p.left.rho * (up - um) / (star.rho - p.left.rho);
      return {p, region, ShockContact{c_shock, star, up}};
    }
    case Region::III:
    case Region::OnSdelta:
      return {p, region, DeltaShock{make_delta_shock(p)}};
  }
  throw Error(ErrorCode::RegionMismatch, "unclassified region");
}

struct LabeledPosition {
  std::string label;
  double coefficient;
  double position;
};

/// Wave positions at time t in spatial order.
inline std::vector<LabeledPosition> wave_positions(const WaveFan& fan, double t) {
  const double beta = fan.problem.params.beta;
  auto at = [&](const char* label, double c) {
    return LabeledPosition{label, c, parabola(c, beta, t)};
  };
  struct Lister {
    decltype(at)& make;
    std::vector<LabeledPosition> operator()(const TwoContactsVacuum& w) const {
      return {make("x_left", w.c_left), make("x_right", w.c_right)};
    }
    std::vector<LabeledPosition> operator()(const SingleContact& w) const {
      return {make("x_c", w.c)};
    }
    std::vector<LabeledPosition> operator()(const RarefactionContact& w) const {
      return {make("x1m", w.c_tail), make("x1p", w.c_head), make("x2", w.c_contact)};
    }
    std::vector<LabeledPosition> operator()(const ShockContact& w) const {
      return {make("x1", w.c_shock), make("x2", w.c_contact)};
    }
    std::vector<LabeledPosition> operator()(const DeltaShock& w) const {
      return {make("x_delta", w.delta.v_delta)};
    }
  };
  return std::visit(Lister{at}, fan.waves);
}

namespace detail {

// Positions at time t of the waves that separate different states.
inline std::vector<double> breakpoints(const WaveFan& fan, double t) {
  if (std::holds_alternative<SingleContact>(fan.waves) &&
      fan.problem.left == fan.problem.right) {
    return {};
  }
  std::vector<double> xs;
  for (const auto& wp : wave_positions(fan, t)) xs.push_back(wp.position);
  return xs;
}

}  // namespace detail

/// Largest relative Rankine-Hugoniot residual of the conservative system for
/// a jump from `a` to `b` travelling at lab speed `sigma` at time t.
inline double jump_residual(const PrimState& a, const PrimState& b, double sigma, double t,
                            const GasParams& g) {
  const double ua = a.v + g.beta * t, ub = b.v + g.beta * t;
  const double ma = a.rho * (a.v - g.pressure_term(a.rho));
  const double mb = b.rho * (b.v - g.pressure_term(b.rho));
  const double mass = sigma * (b.rho - a.rho) - (b.rho * ub - a.rho * ua);
  const double mom = sigma * (mb - ma) - (mb * ub - ma * ua);
  const double mass_scale =
      std::abs(sigma) * (a.rho + b.rho) + std::abs(a.rho * ua) + std::abs(b.rho * ub);
  const double mom_scale = std::abs(sigma) * (std::abs(ma) + std::abs(mb)) +
                           std::abs(ma * ua) + std::abs(mb * ub);
  return std::max(mass_scale > 0.0 ? std::abs(mass) / mass_scale : std::abs(mass),
                  mom_scale > 0.0 ? std::abs(mom) / mom_scale : std::abs(mom));
}

enum class SampleKind { Regular, Vacuum, OnDelta };

constexpr std::string_view to_string(SampleKind k) {
  switch (k) {
    case SampleKind::Regular: return "regular";
    case SampleKind::Vacuum: return "vacuum";
    case SampleKind::OnDelta: return "delta";
  }
  return "?";
}

/// Pointwise value of the solution. `u` is the original velocity v + beta t.
/// For OnDelta, `weight` and `u_delta` describe the measure; rho/u are unset.
struct SolutionSample {
  SampleKind kind = SampleKind::Regular;
  double rho = 0.0;
  double u = 0.0;
  double weight = 0.0;
  double u_delta = 0.0;

  static SolutionSample regular(const PrimState& s, double beta, double t) {
    return {SampleKind::Regular, s.rho, s.v + beta * t, 0.0, 0.0};
  }
  static SolutionSample vacuum() { return {SampleKind::Vacuum, 0.0, 0.0, 0.0, 0.0}; }
};

inline double default_location_tolerance(double x) {
  return 1e-9 * std::max(1.0, std::abs(x));
}

namespace detail {

// State of the piecewise-smooth part at frame coordinate y = (x - beta t^2/2)/t.
// A point exactly on a discontinuity takes the right-hand state.
inline std::optional<PrimState> frame_state(const WaveFan& fan, double y) {
  const RiemannProblem& p = fan.problem;
  struct Picker {
    const RiemannProblem& p;
    double y;
    std::optional<PrimState> operator()(const TwoContactsVacuum& w) const {
      if (y < w.c_left) return p.left;
      if (y < w.c_right) return std::nullopt;
      return p.right;
    }
    std::optional<PrimState> operator()(const SingleContact& w) const {
      return y < w.c ? p.left : p.right;
    }
    std::optional<PrimState> operator()(const RarefactionContact& w) const {
      if (y < w.c_tail) return p.left;
      if (y < w.c_head) return rarefaction_in_frame(y, p.left, p.params, w.star);
      if (y < w.c_contact) return w.star;
      return p.right;
    }
    std::optional<PrimState> operator()(const ShockContact& w) const {
      if (y < w.c_shock) return p.left;
      if (y < w.c_contact) return w.star;
      return p.right;
    }
    std::optional<PrimState> operator()(const DeltaShock& w) const {
      return y < w.delta.v_delta ? p.left : p.right;
    }
  };
  return std::visit(Picker{p, y}, fan.waves);
}

}  // namespace detail

/// Solution at (x, t). Within loc_tol of a delta trajectory the measure is
/// reported instead of the background state.
inline SolutionSample evaluate(const WaveFan& fan, double x, double t,
                               std::optional<double> loc_tol = std::nullopt) {
  if (t < 0.0) throw Error(ErrorCode::NegativeTime, "evaluation time must be >= 0");
  const RiemannProblem& p = fan.problem;
  const double beta = p.params.beta;
  if (t == 0.0) {
    return SolutionSample::regular(x < 0.0 ? p.left : p.right, beta, 0.0);
  }
  if (const auto* d = std::get_if<DeltaShock>(&fan.waves)) {
    const double tol = loc_tol.value_or(default_location_tolerance(x));
    if (std::abs(x - d->delta.position(t)) <= tol) {
      SolutionSample s;
      s.kind = SampleKind::OnDelta;
      s.weight = d->delta.weight(t);
      s.u_delta = d->delta.u_delta(t);
      return s;
    }
  }
  const double y = (x - 0.5 * beta * t * t) / t;
  const auto state = detail::frame_state(fan, y);
  return state ? SolutionSample::regular(*state, beta, t) : SolutionSample::vacuum();
}

}  // namespace frx
