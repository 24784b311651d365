#include <doctest.h>

#include <cmath>
#include <random>

#include "degenpde/solver.hpp"

using namespace degenpde;

namespace {

ProblemParams benchmark() { return ProblemParams{0.5, 1.0, 1.0, 0.25, 1.0, 1.0}; }

SolverConfig small_config() {
  SolverConfig cfg;
  cfg.x_left = -1.0;
  cfg.x_right = 1.0;
  cfg.dx = 5e-3;
  cfg.t_end = 1e-3;
  cfg.floor_scale = 1e-6;
  return cfg;
}

}  // namespace

TEST_CASE("init lays down the power-law data") {
  const ProblemParams prm = benchmark();
  SolverConfig cfg = small_config();
  const SolutionField f = init(prm, cfg);
  CHECK(f.u.size() == 401);
  // u(0) = 0 before flooring, u(x_left) = C(-x_left)^alpha
  const std::size_t i0 = 200;
  CHECK(f.x_at(i0) == doctest::Approx(0.0));
  CHECK(f.u[i0] == 0.0);
  CHECK(f.u[0] == doctest::Approx(prm.coeff * std::pow(-cfg.x_left, prm.alpha)));
  for (double v : f.u) CHECK(v >= 0.0);

  SolverConfig coarse = cfg;
  coarse.dx = 0.2;  // 10 cells across the whole domain
  CHECK_THROWS_AS(init(prm, coarse), error);
}

TEST_CASE("exact absorption sub-step matches the closed form") {
  // beta = 1/2, b = 1, u0 = 1: u(t) = (1 - t/2)^2, so u(1/2) = 0.5625
  CHECK(absorption_exact(1.0, 1.0, 0.5, 0.5) == doctest::Approx(0.5625).epsilon(1e-15));
  // extinction in finite time
  CHECK(absorption_exact(1.0, 1.0, 0.5, 2.1) == 0.0);
  // linear absorption decays exponentially
  CHECK(absorption_exact(2.0, 3.0, 1.0, 0.25) == doctest::Approx(2.0 * std::exp(-0.75)));
  // beta > 1 with b < 0 blows up in finite time
  CHECK_THROWS_AS(absorption_exact(1.0, -1.0, 2.0, 2.0), error);

  // flow property: absorb(h1) then absorb(h2) equals absorb(h1+h2)
  for (double beta : {0.25, 0.5, 0.75, 0.9, 1.0, 1.5}) {
    const double one = absorption_exact(0.8, 1.3, beta, 0.05);
    const double two = absorption_exact(absorption_exact(0.8, 1.3, beta, 0.02), 1.3, beta, 0.03);
    CHECK(two == doctest::Approx(one).epsilon(1e-14));
  }
}

TEST_CASE("absorption-only stepping reproduces the closed-form field") {
  // diffusion disabled: every cell follows u' = -b u^beta exactly, so the
  // field equals [C^{1-beta}(-x)_+^{a(1-beta)} - b(1-beta) t]_+^{1/(1-beta)}
  const ProblemParams prm = benchmark();
  SolverConfig cfg = small_config();
  cfg.disable_diffusion = true;
  cfg.t_end = 0.2;
  cfg.sample_times = {0.2};
  const SimResult res = run(prm, cfg);
  const SolutionField& f = res.snapshots.back();
  const double ob = 1.0 - prm.beta;
  for (std::size_t i = 1; i < f.size(); i += 7) {
    const double x = f.x_at(i);
    const double inner =
        std::pow(prm.coeff, ob) * std::pow(std::max(-x, 0.0), prm.alpha * ob) - prm.b * ob * f.t;
    const double exact = inner > 0.0 ? std::pow(inner, 1.0 / ob) : 0.0;
    CHECK(f.u[i] == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("constant field with b = 0 does not move") {
  ProblemParams prm = benchmark();
  prm.b = 0.0;
  SolverConfig cfg = small_config();
  cfg.left_bc = LeftBc::reflecting;
  cfg.right_bc = RightBc::reflecting;
  SolutionField f = init(prm, cfg);
  std::fill(f.u.begin(), f.u.end(), 0.7);
  const double t0 = f.t;
  step(f, prm, cfg);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f.u[i] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(f.t > t0);
}

TEST_CASE("discrete comparison principle on randomized ordered pairs") {
  std::mt19937_64 rng(987654321);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 64; ++trial) {
    ProblemParams prm;
    prm.m = 0.3 + 1.2 * U(rng);
    const double mp = 0.15 + 0.7 * U(rng);
    prm.p = mp / prm.m;
    prm.b = (trial % 3 == 0) ? 0.0 : 0.2 + 2.0 * U(rng);
    prm.beta = prm.b > 0.0 ? 0.2 + 1.0 * U(rng) : 1.0;
    prm.alpha = 0.5 + 2.0 * U(rng);
    prm.coeff = 1.0;

    SolverConfig cfg;
    cfg.x_left = -1.0;
    cfg.x_right = 1.0;
    cfg.dx = 0.02;
    cfg.t_end = 1.0;
    cfg.cfl_safety = 0.4;
    cfg.floor = 1e-8;
    cfg.threshold = 1e-7;
    cfg.left_bc = LeftBc::reflecting;
    cfg.right_bc = RightBc::reflecting;

    SolutionField lo = init(prm, cfg);
    SolutionField hi = lo;
    // smooth ordered data in a range where the frozen-coefficient bound is solid
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const double x = lo.x_at(i);
      lo.u[i] = 0.05 + 0.4 * U(rng) * (1.0 + std::sin(3.0 * x));
      hi.u[i] = lo.u[i] + 0.05 + 0.3 * U(rng);
    }
    // identical boundary data
    hi.u.front() = lo.u.front();
    hi.u.back() = lo.u.back();

    const double dt_lo = step(lo, prm, cfg);
    SolverConfig cfg_hi = cfg;
    cfg_hi.dt_max = dt_lo;  // advance both by the same dt
    step(hi, prm, cfg_hi);
    for (std::size_t i = 1; i + 1 < lo.size(); ++i)
      if (lo.u[i] > hi.u[i] + 1e-13) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("mass is conserved with b = 0 and reflecting boundaries") {
  ProblemParams prm = benchmark();
  prm.b = 0.0;
  SolverConfig cfg;
  cfg.x_left = -1.0;
  cfg.x_right = 1.0;
  cfg.dx = 5e-3;
  cfg.t_end = 5e-3;
  cfg.left_bc = LeftBc::reflecting;
  cfg.right_bc = RightBc::reflecting;
  cfg.floor_scale = 1e-6;
  cfg.sample_times = {5e-3};
  SolutionField f0 = init(prm, cfg);
  const double mass0 = f0.mass();
  const SimResult res = run(prm, cfg);
  const double mass1 = res.snapshots.back().mass();
  const double drift = std::abs(mass1 - mass0) / mass0;
  CHECK(drift <= 1e-6 * cfg.t_end + res.clipped_mass / mass0 + 1e-12);
}

TEST_CASE("b = 0 positivity spreads through the whole domain") {
  ProblemParams prm = benchmark();
  prm.b = 0.0;
  SolverConfig cfg;
  cfg.x_left = -1.0;
  cfg.x_right = 0.5;
  cfg.dx = 5e-3;
  cfg.t_end = 2e-3;
  cfg.floor_scale = 1e-7;
  cfg.right_bc = RightBc::floor_value;
  cfg.sample_times = {2e-3};

  SolutionField f = init(prm, cfg);
  const std::size_t first_zeroish = 200;  // the x = 0 node, u0 = 0 there
  CHECK(f.u[first_zeroish] <= f.floor);
  step(f, prm, cfg);
  // one step lifts the first cell beyond the old support edge
  CHECK(f.u[first_zeroish] > f.floor);

  // and by a finite time every cell is live (numerical infinite speed)
  const SimResult res = run(prm, cfg);
  const SolutionField& last = res.snapshots.back();
  for (std::size_t i = 0; i + 1 < last.size(); ++i) CHECK(last.u[i] > last.floor * 0.999);
}

TEST_CASE("case-I front expands, case-III front shrinks") {
  ProblemParams expanding = benchmark();
  SolverConfig cfg;
  cfg.x_left = -1.5;
  cfg.x_right = 2.2;
  cfg.dx = 4e-3;
  cfg.t_end = 4e-3;
  cfg.floor_scale = 2e-6;
  cfg.sample_times = {1e-3, 2e-3, 4e-3};
  const SimResult grow = run(expanding, cfg);
  REQUIRE(grow.trace.samples.size() == 3);
  CHECK(grow.trace.samples.front().second > 0.0);
  CHECK(grow.trace.samples.back().second > grow.trace.samples.front().second);

  ProblemParams shrinking = benchmark();
  shrinking.alpha = 12.0;
  SolverConfig cfg3;
  cfg3.x_left = -1.3;
  cfg3.x_right = 0.5;
  cfg3.dx = 2e-3;
  cfg3.t_end = 4e-3;
  cfg3.floor_scale = 2e-6;
  cfg3.sample_times = {1e-3, 2e-3, 4e-3};
  const SimResult shrink = run(shrinking, cfg3);
  REQUIRE(shrink.trace.samples.size() == 3);
  CHECK(shrink.trace.samples.front().second < 0.0);
  CHECK(shrink.trace.samples.back().second < shrink.trace.samples.front().second);
}

TEST_CASE("interface position converges under grid refinement") {
  const ProblemParams prm = benchmark();
  auto eta_at = [&](double dx) {
    SolverConfig cfg;
    cfg.x_left = -1.5;
    cfg.x_right = 2.3;
    cfg.dx = dx;
    cfg.t_end = 5e-3;
    cfg.floor_scale = 2e-6;
    cfg.sample_times = {5e-3};
    return run(prm, cfg).trace.samples.back().second;
  };
  const double e1 = eta_at(8e-3);
  const double e2 = eta_at(4e-3);
  CHECK(std::abs(e1 - e2) < std::max(2.0 * 8e-3, 0.02 * std::abs(e2)));
}
