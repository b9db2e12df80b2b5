#include <gtest/gtest.h>

#include <cmath>

#include "frx/frx.hpp"
#include "generators.hpp"

using namespace frx;
using frx::testing::error_code_of;

namespace {

FvConfig lab_config(const RiemannProblem& p, int cells, double half_width = 2.0) {
  FvConfig cfg;
  cfg.problem = p;
  cfg.x_lo = -half_width;
  cfg.x_hi = half_width;
  cfg.cells = cells;
  return cfg;
}

}  // namespace

TEST(PrimitiveRecover, RoundTrips) {
  const GasParams g{0.25, 0.5, 0};
  EXPECT_DOUBLE_EQ(conserved_m({1, 1}, g), 0.75);
  EXPECT_DOUBLE_EQ(primitive_recover(1, 0.75, g), 1.0);
  EXPECT_DOUBLE_EQ(conserved_m({25, 0.8}, g), 18.75);
  EXPECT_DOUBLE_EQ(primitive_recover(25, 18.75, g), 0.8);
  EXPECT_DOUBLE_EQ(primitive_recover(4, 3, {0, 0.5, 0}), 0.75);

  frx::testing::ProblemGenerator gen(61);
  for (int i = 0; i < 1000; ++i) {
    const RiemannProblem p = gen.any_problem();
    const double m = conserved_m(p.left, p.params);
    EXPECT_NEAR(primitive_recover(p.left.rho, m, p.params), p.left.v,
                1e-13 * std::max(1.0, p.params.pressure_term(p.left.rho) + std::abs(p.left.v)));
  }
}

TEST(PrimitiveRecover, NonPositiveDensity) {
  const GasParams g{0.25, 0.5, 0};
  EXPECT_EQ(error_code_of([&] { primitive_recover(0.0, 1.0, g); }), ErrorCode::NonPositiveDensity);
  EXPECT_EQ(error_code_of([&] { primitive_recover(-1.0, 1.0, g); }), ErrorCode::NonPositiveDensity);
}

TEST(FvConfig, Validation) {
  const RiemannProblem p{{1, 1}, {2, 0.5}, {1, 0.5, 0.5}};
  auto code = [&](auto mutate) {
    FvConfig cfg = lab_config(p, 400);
    mutate(cfg);
    return error_code_of([&] { validate_config(cfg); });
  };
  EXPECT_EQ(code([](FvConfig&) {}), std::nullopt);
  EXPECT_EQ(code([](FvConfig& c) { c.cells = 99; }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code([](FvConfig& c) { c.cfl = 0.6; }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code([](FvConfig& c) { c.cfl = 0.0; }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code([](FvConfig& c) { c.t_end = 0.0; }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code([](FvConfig& c) { c.x_lo = 0.5; }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code([](FvConfig& c) { c.x_hi = 2.01; }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code([](FvConfig& c) { c.t_end = 3.0; }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code([](FvConfig& c) { c.frame_speed = NAN; }), ErrorCode::NonFiniteInput);
  EXPECT_EQ(code([](FvConfig& c) { c.problem.params.alpha = 1.0; }), ErrorCode::AlphaOutOfRange);
}

TEST(FittedConfig, KeepsWavesInsideTheMargin) {
  frx::testing::ProblemGenerator gen(62);
  for (int i = 0; i < 200; ++i) {
    const RiemannProblem p = gen.any_problem();
    const FvConfig cfg = fitted_config(p, 501, 1.0, 0.1);
    EXPECT_EQ(cfg.cells % 2, 0);
    EXPECT_EQ(error_code_of([&] { validate_config(cfg); }), std::nullopt);
  }
  const RiemannProblem still{{1, 0}, {1, 0}, {0.25, 0.5, 0}};
  EXPECT_EQ(error_code_of([&] { fitted_config(still, 200, 1.0); }), ErrorCode::InvalidConfig);
}

TEST(FvStep, UniformStateIsPreserved) {
  const RiemannProblem p{{1.7, 0.3}, {1.7, 0.3}, {0.25, 0.5, -1.0}};
  FvState s = initial_state(lab_config(p, 200));
  const auto rho0 = s.rho;
  const auto m0 = s.m;
  for (int k = 0; k < 50 && s.t < s.config.t_end; ++k) step(s);
  EXPECT_EQ(s.rho, rho0);
  EXPECT_EQ(s.m, m0);
  EXPECT_EQ(s.clamp_count, 0);
}

TEST(FvStep, ConservationBookkeeping) {
  for (const RiemannProblem& p : {RiemannProblem{{1, 1}, {2, 0.5}, {1, 0.5, 0.5}},
                                  RiemannProblem{{4, 1}, {1, 0}, {0, 0.5, 2.0}},
                                  RiemannProblem{{1, -1}, {1, 1}, {0.1, 0.3, -1.0}}}) {
    const FvConfig cfg = fitted_config(p, 400, 1.0, 0.5);
    FvState s = initial_state(cfg);
    const double rho0 = s.total_rho(), m0 = s.total_m();
    while (s.t < cfg.t_end) {
      step(s);
      EXPECT_NEAR(s.total_rho() + s.rho_outflow, rho0, 1e-12 * std::abs(rho0));
      EXPECT_NEAR(s.total_m() + s.m_outflow, m0, 1e-12 * std::max(1.0, std::abs(m0)));
    }
    EXPECT_EQ(s.t, cfg.t_end);
  }
}

TEST(FvStep, NoClampingAwayFromVacuum) {
  frx::testing::ProblemGenerator gen(63);
  for (Region r : {Region::II, Region::III}) {
    for (int i = 0; i < 3; ++i) {
      const FvState s = run(fitted_config(gen.in_region(r), 300, 1.0, 0.1));
      EXPECT_EQ(s.clamp_count, 0) << to_string(r);
      for (double rho : s.rho) EXPECT_GE(rho, kDensityFloor);
    }
  }
}

TEST(FvStep, DensityStaysAboveFloorInVacuum) {
  const FvState s = run(lab_config({{1, -1}, {1, 1}, {0, 0.5, 0}}, 400));
  for (double rho : s.rho) EXPECT_GE(rho, kDensityFloor);
  EXPECT_LT(*std::min_element(s.rho.begin(), s.rho.end()), 1e-3);
}

TEST(FvStep, PressurelessSpikeGrowsWithResolution) {
  const RiemannProblem p{{4, 1}, {1, 0}, {0, 0.5, 0}};
  double prev = 0;
  for (int n : {250, 500, 1000, 2000}) {
    const FvState s = run(lab_config(p, n));
    const double peak = *std::max_element(s.rho.begin(), s.rho.end());
    EXPECT_GT(peak, prev);
    prev = peak;
  }
}

TEST(FvStep, RegionTwoPlateauOnFittedGrid) {
  const RiemannProblem p{{1, 1}, {2, 0.5}, {1, 0.5, 0.5}};
  const FvState s = run(fitted_config(p, 2000, 1.0));
  const WaveFan fan = solve(p);
  const double star = std::get<ShockContact>(fan.waves).star.rho;
  const auto pos = wave_positions(fan, 1.0);
  const double mid = 0.5 * (pos[0].position + pos[1].position);
  std::size_t best = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s.center(i) - mid) < std::abs(s.center(best) - mid)) best = i;
  }
  EXPECT_NEAR(s.rho[best], star, 0.02 * star);
}

TEST(DeltaMass, StartsAtZero) {
  const FvState s = initial_state(lab_config({{4, 1}, {1, 0}, {0, 0.5, 0}}, 400));
  EXPECT_EQ(measure_delta_mass(s, 0.0, 0.1), 0.0);
}

TEST(DeltaMass, MatchesWeightForPressurelessAndChaplygin) {
  for (const RiemannProblem& p : {RiemannProblem{{4, 1}, {1, 0}, {0, 0.5, 0}},
                                  RiemannProblem{{1, 1}, {1, -1}, {0.25, 0.5, 0}}}) {
    const FvState s = run(lab_config(p, 2000));
    const DeltaShockWave d = make_delta_shock(p);
    EXPECT_NEAR(measure_delta_mass(s, d.position(1.0), 0.1), d.weight(1.0), 0.15 * d.weight(1.0));
  }
}

TEST(DeltaMass, WindowOutOfDomain) {
  const FvState s = initial_state(lab_config({{4, 1}, {1, 0}, {0, 0.5, 0}}, 400));
  EXPECT_EQ(error_code_of([&] { measure_delta_mass(s, 1.95, 0.1); }), ErrorCode::WindowOutOfDomain);
  EXPECT_EQ(error_code_of([&] { measure_delta_mass(s, -5, 0.1); }), ErrorCode::WindowOutOfDomain);
  EXPECT_EQ(error_code_of([&] { measure_delta_mass(s, 0, 0); }), ErrorCode::InvalidConfig);
}

TEST(CompareToExact, ConstantDataHasZeroError) {
  const RiemannProblem p{{1.3, 0.4}, {1.3, 0.4}, {0.25, 0.5, 1.0}};
  const FvState s = run(lab_config(p, 200, 3.0));
  EXPECT_LE(compare_to_exact(s, solve(p), 0.0), 1e-14);
}

TEST(CompareToExact, RegionOneConvergesUnderRefinement) {
  // A fixed exclusion band: one proportional to dx leaves the contact's
  // sqrt(dx)-wide smear inside the measured set.
  const RiemannProblem p{{1, 0}, {1, 1}, {0.25, 0.5, 0}};
  const WaveFan fan = solve(p);
  double prev = 0;
  for (int n : {500, 1000, 2000}) {
    const double err = compare_to_exact(run(lab_config(p, n)), fan, 0.1);
    if (prev > 0) {
      EXPECT_GE(prev / err, 1.5) << n;
    }
    prev = err;
  }
}

TEST(CompareToExact, ErrorsOnMismatch) {
  const RiemannProblem p{{1, 0}, {1, 1}, {0.25, 0.5, 0}};
  const FvState s0 = initial_state(lab_config(p, 200));
  EXPECT_EQ(error_code_of([&] { compare_to_exact(s0, solve(p), 0.1); }), ErrorCode::TimeMismatch);
  const FvState s1 = run(lab_config(p, 200));
  const RiemannProblem other{{1, 0}, {1, 1}, {0.3, 0.5, 0}};
  EXPECT_EQ(error_code_of([&] { compare_to_exact(s1, solve(other), 0.1); }), ErrorCode::CaseMismatch);
}

TEST(Locators, FindTheWaves) {
  const RiemannProblem p{{1, 1}, {2, 0.5}, {1, 0.5, 0.5}};
  const FvState s = run(lab_config(p, 2000));
  const double dx = s.dx();
  for (const auto& w : wave_positions(solve(p), 1.0)) {
    EXPECT_NEAR(locate_steepest_gradient(s, w.position, 20 * dx), w.position, 3 * dx) << w.label;
  }
  const FvState d = run(lab_config({{4, 1}, {1, 0}, {0, 0.5, 0}}, 2000));
  EXPECT_NEAR(locate_density_peak(d, 2.0 / 3.0, 20 * dx), 2.0 / 3.0, 3 * dx);
  EXPECT_EQ(error_code_of([&] { locate_density_peak(d, 10, dx); }), ErrorCode::WindowOutOfDomain);
}
