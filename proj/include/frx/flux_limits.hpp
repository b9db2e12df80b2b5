#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frx/delta_shock.hpp"
#include "frx/errors.hpp"
#include "frx/hyperbolic.hpp"
#include "frx/types.hpp"
#include "frx/wave_fan.hpp"

namespace frx {

/// Flux-perturbation thresholds for u- > u+: the right state lies in region
/// III for A <= A0 and in region II for A > A0. A1 = rho-^alpha u- is the
/// upper bound that also keeps u- - A/rho-^alpha positive; it exceeds A0 only
/// when u+ > 0, otherwise it is informational.
struct Thresholds {
  double A0;
  double A1;
  bool a1_applicable;
};

inline Thresholds thresholds(const RiemannProblem& p) {
  if (!(p.left.v > p.right.v)) {
    throw Error(ErrorCode::CaseMismatch, "thresholds need u- > u+");
  }
  const double scale = std::pow(p.left.rho, p.params.alpha);
  return {scale * (p.left.v - p.right.v), scale * p.left.v, p.right.v > 0.0};
}

inline RiemannProblem with_A(RiemannProblem p, double A) {
  p.params.A = A;
  return p;
}

struct Concentration {
  double mass;
  double momentum;
};

/// Mass and momentum held between the shock and the contact of a region-II
/// fan at time t, for pressure magnitude A.
inline Concentration concentration_integrals(const RiemannProblem& p, double A, double t) {
  const RiemannProblem q = validate_problem(with_A(p, A));
  if (q.params.pressureless() || classify_region(q) != Region::II) {
    throw Error(ErrorCode::RegionMismatch, "concentration integrals need a region-II fan");
  }
  const PrimState star = intermediate_state(q);
  const double rm = q.left.rho;
  // rho* (x2 - x1) with x2 - x1 = rho- (u- - u+) t / (rho* - rho-)
  const double mass = star.rho * rm * (q.left.v - q.right.v) / (star.rho - rm) * t;
  return {mass, mass * (q.right.v + q.params.beta * t)};
}

enum class LimitCase { VacuumFormation, Contact, Concentration };

constexpr std::string_view to_string(LimitCase c) {
  switch (c) {
    case LimitCase::VacuumFormation: return "vacuum_formation";
    case LimitCase::Contact: return "contact";
    case LimitCase::Concentration: return "concentration";
  }
  return "?";
}

inline LimitCase limit_case(const RiemannProblem& p) {
  if (p.left.v < p.right.v) return LimitCase::VacuumFormation;
  if (p.left.v == p.right.v) return LimitCase::Contact;
  return LimitCase::Concentration;
}

/// One sweep entry. Quantities that do not apply to the entry's wave
/// structure are NaN. Speeds are the coefficients c of c t + beta t^2 / 2.
struct LimitEntry {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  double A = kNaN;
  std::string variant;
  std::optional<Region> region;
  double rho_star = kNaN;
  double c_first = kNaN;   // rarefaction tail, shock, or delta
  double c_second = kNaN;  // contact
  double v_delta = kNaN;
  double w0 = kNaN;
  double mass = kNaN;      // concentration integrals at t = 1
  double momentum = kNaN;
  double error = kNaN;     // distance of the case's primary quantity to its A -> 0 / A -> A0 target
};

struct LimitReport {
  RiemannProblem problem;
  LimitCase which;
  std::optional<Thresholds> limits;
  std::vector<LimitEntry> entries;
  std::map<std::string, double> targets;
  std::map<std::string, double> rates;
};

/// Least-squares slope of log(err) against log(dist) over the last `tail`
/// points with both positive. NaN when fewer than two points qualify.
inline double loglog_slope(const std::vector<double>& dist, const std::vector<double>& err,
                           std::size_t tail = 4) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] > 0.0 && err[i] > 0.0 && std::isfinite(err[i])) {
      pts.emplace_back(std::log(dist[i]), std::log(err[i]));
    }
  }
  if (pts.size() > tail) pts.erase(pts.begin(), pts.end() - static_cast<long>(tail));
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

/// Twelve A values halving from 0.9 A0 (u- > u+) or from 1.0 otherwise.
inline std::vector<double> default_sweep(const RiemannProblem& p, int count = 12) {
  double start = 1.0;
  if (limit_case(p) == LimitCase::Concentration) start = 0.9 * thresholds(p).A0;
  std::vector<double> sweep;
  for (int k = 0; k < count; ++k) sweep.push_back(std::ldexp(start, -k));
  return sweep;
}

/// A0 (1 + 2^-k), k = 1..count: region-II fans approaching the S_delta boundary.
inline std::vector<double> approach_sweep(const RiemannProblem& p, int count = 12) {
  const double a0 = thresholds(p).A0;
  std::vector<double> sweep;
  for (int k = 1; k <= count; ++k) sweep.push_back(a0 * (1.0 + std::ldexp(1.0, -k)));
  return sweep;
}

inline LimitReport limit_study(const RiemannProblem& input, const std::vector<double>& sweep) {
  if (sweep.empty()) throw Error(ErrorCode::InvalidConfig, "sweep is empty");
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (!(sweep[i] > 0.0) || !std::isfinite(sweep[i])) {
      throw Error(ErrorCode::InvalidConfig, "sweep values must be positive and finite");
    }
    if (i > 0 && !(sweep[i] < sweep[i - 1])) {
      throw Error(ErrorCode::InvalidConfig, "sweep must be strictly decreasing");
    }
  }
  const RiemannProblem p = validate_problem(with_A(input, sweep.front()));

  LimitReport report{p, limit_case(p), std::nullopt, {}, {}, {}};
  const double rm = p.left.rho, rp = p.right.rho, um = p.left.v, up = p.right.v;
  const double sigma0 = (std::sqrt(rm) * um + std::sqrt(rp) * up) / (std::sqrt(rm) + std::sqrt(rp));
  const double w_limit = std::sqrt(rm * rp) * (um - up);
  const double mass_limit = rm * (um - up);

  switch (report.which) {
    case LimitCase::VacuumFormation:
      report.targets = {{"rho_star", 0.0}, {"c_first", um}, {"c_second", up}};
      break;
    case LimitCase::Contact:
      report.targets = {{"c_first", um}};
      break;
    case LimitCase::Concentration:
      report.limits = thresholds(p);
      report.targets = {{"v_delta", sigma0}, {"w0", w_limit}, {"mass", mass_limit},
                        {"momentum", mass_limit * (up + p.params.beta)},
                        {"c_shock", up}};
      break;
  }

  std::vector<double> dist_rho, dist_delta, dist_seam, err_rho, err_vdelta, err_w0, err_mass, err_shock;
  for (double A : sweep) {
    const RiemannProblem q = with_A(p, A);
    const WaveFan fan = solve(q);
    LimitEntry e;
    e.A = A;
    e.variant = variant_name(fan);
    e.region = fan.region;
    if (const auto* rc = std::get_if<RarefactionContact>(&fan.waves)) {
      e.rho_star = rc->star.rho;
      e.c_first = rc->c_tail;
      e.c_second = rc->c_contact;
      e.error = rc->star.rho;
    } else if (const auto* sc = std::get_if<ShockContact>(&fan.waves)) {
      e.rho_star = sc->star.rho;
      e.c_first = sc->c_shock;
      e.c_second = sc->c_contact;
      const auto conc = concentration_integrals(p, A, 1.0);
      e.mass = conc.mass;
      e.momentum = conc.momentum;
      e.error = std::abs(conc.mass - mass_limit) / mass_limit;
    } else if (const auto* ds = std::get_if<DeltaShock>(&fan.waves)) {
      e.c_first = ds->delta.v_delta;
      e.v_delta = ds->delta.v_delta;
      e.w0 = ds->delta.w0;
      e.error = std::abs(ds->delta.v_delta - sigma0);
    } else if (const auto* c = std::get_if<SingleContact>(&fan.waves)) {
      e.c_first = c->c;
      e.error = std::abs(c->c - um);
    }
    report.entries.push_back(e);

    const double seam = report.limits ? A - report.limits->A0 : 0.0;
    if (std::holds_alternative<ShockContact>(fan.waves)) {
      dist_seam.push_back(seam);
      err_mass.push_back(e.error);
      err_shock.push_back(std::abs(e.c_first - up));
    } else if (std::holds_alternative<DeltaShock>(fan.waves)) {
      dist_delta.push_back(A);
      err_vdelta.push_back(e.error);
      err_w0.push_back(std::abs(e.w0 - w_limit));
    } else if (std::holds_alternative<RarefactionContact>(fan.waves)) {
      dist_rho.push_back(A);
      err_rho.push_back(e.rho_star);
    }
  }

  auto put_rate = [&](const char* name, const std::vector<double>& d, const std::vector<double>& e) {
    if (e.size() >= 2) report.rates[name] = loglog_slope(d, e);
  };
  put_rate("rho_star", dist_rho, err_rho);
  put_rate("v_delta", dist_delta, err_vdelta);
  put_rate("w0", dist_delta, err_w0);
  put_rate("mass", dist_seam, err_mass);
  put_rate("c_shock", dist_seam, err_shock);
  return report;
}

}  // namespace frx
