#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "degenpde/regimes.hpp"
#include "degenpde/selfsim.hpp"

using namespace degenpde;

namespace {

ProblemParams scaling_point() { return ProblemParams{0.5, 1.0, 0.0, 1.0, 1.0, 1.0}; }

ProblemParams balance_point(double c_over_cstar) {
  ProblemParams prm{0.5, 1.0, 1.0, 0.25, 8.0, 1.0};
  prm.alpha = (1.0 + prm.p) / (prm.mp() - prm.beta);  // = 8
  prm.coeff = c_over_cstar * c_star(prm);
  return prm;
}

// finite-difference residual of the balance operator on the tabulated shape
double f1_fd_residual(const SelfSimResult& res, const ProblemParams& prm, double zeta) {
  const auto& xs = res.shape.abscissa();
  const auto& fs = res.shape.values();
  auto it = std::lower_bound(xs.begin(), xs.end(), zeta);
  std::size_t j = static_cast<std::size_t>(it - xs.begin());
  if (j < 2 || j + 2 >= xs.size()) return 0.0;
  const double m = prm.m, p = prm.p;
  auto v = [&](std::size_t i) { return std::pow(fs[i], m); };
  auto flux = [&](std::size_t i) {
    const double g = (v(i + 1) - v(i)) / (xs[i + 1] - xs[i]);
    return std::copysign(std::pow(std::abs(g), p), g);
  };
  const double div = (flux(j) - flux(j - 1)) / (0.5 * (xs[j + 1] - xs[j - 1]));
  const double fp = (fs[j + 1] - fs[j - 1]) / (xs[j + 1] - xs[j - 1]);
  const double E = (prm.mp() - prm.beta) / ((1.0 + p) * (1.0 - prm.beta));
  return div + E * xs[j] * fp - fs[j] / (1.0 - prm.beta) - prm.b * std::pow(fs[j], prm.beta);
}

}  // namespace

TEST_CASE("b = 0 scaling shape: positivity, far field, decaying tail") {
  const ProblemParams prm = scaling_point();
  const SelfSimResult res = solve_f(prm);
  CHECK(res.value_at_zero > 0.0);  // A0 = f(0) > 0
  CHECK(!res.front.has_value());
  for (double v : res.shape.values()) CHECK(v > 0.0);  // infinite speed: no zero

  // imposed far-field boundary
  const double xi_l = res.shape.x_min();
  CHECK(res.shape.eval(xi_l) / (prm.coeff * std::pow(-xi_l, prm.alpha)) ==
        doctest::Approx(1.0).epsilon(1e-3));

  // right tail approaches the exact power amplitude D xi^{(1+p)/(mp-1)}
  const double D = big_d(prm);
  const double a = (1.0 + prm.p) / (1.0 - prm.mp());
  const double xi_probe = 0.75 * res.shape.x_max();
  const double tail_ratio = res.shape.eval(xi_probe) / (D * std::pow(xi_probe, -a));
  CHECK(tail_ratio == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("coefficient scaling identity collapses shapes onto one curve") {
  // the invariance u -> lambda u(mu x, t) with lambda^{mp-1} mu^{1+p} = 1 and
  // lambda mu^alpha = C maps the C = 1 shape onto any other amplitude:
  //   f(rho) = C^{(1+p)/E} f0(C^{(1-mp)/E} rho),  E = 1+p+alpha(1-mp)
  ProblemParams p1 = scaling_point();
  ProblemParams p2 = scaling_point();
  p2.coeff = 2.0;
  const SelfSimResult f1 = solve_f(p1);
  const SelfSimResult f2 = solve_f(p2);
  const double expo = 1.0 + p1.p + p1.alpha * (1.0 - p1.mp());
  const double amp = std::pow(2.0, (1.0 + p1.p) / expo);
  const double arg = std::pow(2.0, (1.0 - p1.mp()) / expo);
  double worst = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double rho = -2.0 + 4.0 * k / 200.0;
    const double lhs = f2.shape.eval(rho);
    const double rhs = amp * f1.shape.eval(arg * rho);
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("doubling the far-field window moves A0 by less than 0.1%") {
  ShootingConfig near_cfg, far_cfg;
  near_cfg.xi_left = -20.0;
  near_cfg.xi_right = 12.0;
  far_cfg.xi_left = -40.0;
  far_cfg.xi_right = 12.0;
  const double a_near = solve_f(scaling_point(), near_cfg).value_at_zero;
  const double a_far = solve_f(scaling_point(), far_cfg).value_at_zero;
  CHECK(std::abs(a_near - a_far) / a_far < 1e-3);
}

TEST_CASE("critical coefficient: the stationary power profile comes back exactly") {
  ProblemParams prm = balance_point(1.0);
  const SelfSimResult res = solve_f1(prm);
  REQUIRE(res.front.has_value());
  CHECK(*res.front == doctest::Approx(0.0));
  const double cs = c_star(prm);
  const double A = (1.0 + prm.p) / (prm.mp() - prm.beta);
  CHECK(res.shape.eval(-1.0) == doctest::Approx(cs).epsilon(1e-8));

  // closed-form residual of the balance operator on C*(-z)^A vanishes:
  // diffusion production exactly balances absorption, scaling terms cancel
  const double m = prm.m, p = prm.p;
  const double Am = A * m;
  for (double z : {-0.5, -1.0, -2.0}) {
    const double diffusion = p * std::pow(Am, p) * (Am - 1.0) * std::pow(cs, prm.mp()) *
                             std::pow(-z, A * prm.beta);
    const double absorption = prm.b * std::pow(cs, prm.beta) * std::pow(-z, A * prm.beta);
    const double E = (prm.mp() - prm.beta) / ((1.0 + p) * (1.0 - prm.beta));
    const double scaling = E * z * (-A * cs * std::pow(-z, A - 1.0)) -
                           cs * std::pow(-z, A) / (1.0 - prm.beta);
    const double resid = (diffusion + scaling - absorption) / absorption;
    CHECK(std::abs(resid) < 1e-8);
  }
  (void)A;
}

TEST_CASE("front sign flips across the critical coefficient") {
  const SelfSimResult super = solve_f1(balance_point(1.5));
  REQUIRE(super.front.has_value());
  CHECK(*super.front > 0.0);
  CHECK(super.value_at_zero > 0.0);  // A1 > 0 when C > C*

  const SelfSimResult sub = solve_f1(balance_point(0.5));
  REQUIRE(sub.front.has_value());
  CHECK(*sub.front < 0.0);
  CHECK(sub.value_at_zero == 0.0);
}

TEST_CASE("super-critical shape sits inside the closed-form sandwich") {
  ProblemParams prm = balance_point(1.5);
  const SelfSimResult res = solve_f1(prm);
  const double a1 = res.value_at_zero;
  REQUIRE(a1 > 0.0);
  ConstantsRequest req{prm, 0.1, {}, a1, {}, {}};
  PredictionReport c = appendix_constants(req);
  const double cs = c.named_constants.at("C_star");
  const double c2 = c.named_constants.at("C_2");
  const double z3 = c.named_constants.at("zeta_3");
  const double z4 = c.named_constants.at("zeta_4");
  const double zs = *res.front;
  CHECK(z3 <= zs + 1e-3 * std::abs(zs));
  CHECK(zs <= z4 + 1e-3 * std::abs(zs));

  const double A = (1.0 + prm.p) / (prm.mp() - prm.beta);
  for (int k = 0; k <= 100; ++k) {
    const double z = (zs - 1e-3) * k / 100.0;
    const double f = value_or_zero(res, z);
    const double lower = z < z3 ? c2 * std::pow(z3 - z, A) : 0.0;
    const double upper = cs * std::pow(z4 - z, A);
    CHECK(f >= lower * (1.0 - 2e-3) - 1e-12);
    CHECK(f <= upper * (1.0 + 2e-3) + 1e-12);
  }
}

TEST_CASE("sub-critical front is bracketed by the lambda-curve constants") {
  ProblemParams prm = balance_point(0.5);
  SelfSimResult res = solve_f1(prm);
  const double zs = *res.front;
  REQUIRE(zs < 0.0);

  const double cs = c_star(prm);
  const double q = std::pow(prm.coeff / cs, (prm.mp() - prm.beta) / (1.0 + prm.p));
  const double ell1 = 1.5 * std::abs(zs) / (1.0 - q);
  if (-ell1 < res.shape.x_min()) {  // widen the window to reach the lambda curve
    ShootingConfig wide;
    wide.xi_left = -1.3 * ell1;
    res = solve_f1(prm, wide);
  }
  const double lambda = res.shape.eval(-ell1);
  REQUIRE(lambda > 0.0);

  ConstantsRequest req{prm, 0.1, {}, {}, lambda, ell1};
  PredictionReport c = appendix_constants(req);
  const double z5 = c.named_constants.at("zeta_5");
  const double z6 = c.named_constants.at("zeta_6");
  CHECK(-z5 <= zs + 1e-3 * std::abs(zs));
  CHECK(zs <= -z6 + 1e-3 * std::abs(zs));
}

TEST_CASE("tabulated f1 satisfies the balance operator under refinement") {
  ProblemParams prm = balance_point(1.5);
  ShootingConfig coarse, fine;
  coarse.output_nodes = 1001;
  fine.output_nodes = 2001;
  const SelfSimResult rc = solve_f1(prm, coarse);
  const SelfSimResult rf = solve_f1(prm, fine);
  const double zs = *rf.front;
  double worst_c = 0.0, worst_f = 0.0;
  for (double frac : {0.3, 0.5, 0.7}) {
    const double z = rc.shape.x_min() * (1.0 - frac) + (zs - 0.05) * frac;
    worst_c = std::max(worst_c, std::abs(f1_fd_residual(rc, prm, z)));
    worst_f = std::max(worst_f, std::abs(f1_fd_residual(rf, prm, z)));
  }
  CHECK(worst_f < worst_c);
  CHECK(worst_f / worst_c < 0.6);  // conservative stencil: expect ~ 1/4
}

TEST_CASE("solve_f1 rejects non-balance regimes") {
  ProblemParams prm{0.5, 1.0, 0.0, 1.0, 1.0, 1.0};  // b = 0
  CHECK_THROWS_AS(solve_f1(prm), error);
}
