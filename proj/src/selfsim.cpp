#include "degenpde/selfsim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "degenpde/numerics.hpp"
#include "degenpde/regimes.hpp"

namespace degenpde {

namespace {

// State is (f, s) with s = |(f^m)'|^{p-1} (f^m)' : carrying the flux keeps the
// |.|^{p-1} kink out of the integrated variables.
//
// Shooting direction matters here.  Integrating away from the far-field
// power C(-x)^alpha is violently unstable (the fast mode grows like
// exp(c |x|^{...}) toward the front), so both profiles are integrated
// LEFTWARD, starting from the right-hand asymptote: the exact power tail
// D x^{(1+p)/(mp-1)} for f, and the degenerate front contact
// C*(zeta* - zeta)^{(1+p)/(mp-beta)} for f1.  Leftward, the left region is
// attracting and the shooting function (the far-field amplitude mismatch)
// is smooth and monotone in the parameter.
double slope_from_flux(double f, double s, double m, double p) {
  if (f <= 0.0) return 0.0;
  const double vprime = std::copysign(std::pow(std::abs(s), 1.0 / p), s);
  return vprime * std::pow(f, 1.0 - m) / m;
}

struct ProfileOde {
  double m, p;
  std::function<double(double, double, double)> source;  // (x, f, f') -> s'

  State2 operator()(double x, const State2& y) const {
    const double f = std::max(y[0], 0.0);
    const double fp = slope_from_flux(f, y[1], m, p);
    return State2{fp, source(x, f, fp)};
  }
};

// flux of the pure power K (x0 - x)^A on its support (decreasing toward x0)
double power_flux(double K, double A, double m, double p, double span) {
  const double Am = A * m;
  return -std::pow(Am, p) * std::pow(K, m * p) * std::pow(span, (Am - 1.0) * p);
}

// left-end amplitude mismatch after integrating leftward from (x0, y0)
double left_mismatch(const ProfileOde& ode, double x0, const State2& y0, double x_left,
                     double target, const Rk45Options& opt) {
  bool blew_up = false, died = false;
  auto stop = [&](double, const State2& y) {
    if (y[0] <= 0.0) {
      died = true;
      return true;
    }
    if (y[0] > 50.0 * target) {
      blew_up = true;
      return true;
    }
    return false;
  };
  auto [xe, ye] = integrate_rk45(ode, x0, y0, x_left, opt, nullptr, stop);
  (void)xe;
  if (died) return -1.0;
  if (blew_up) return 49.0;
  return ye[0] / target - 1.0;
}

std::vector<double> output_grid(double a, double b, int n) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n) + 2);
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) xs.push_back(a + i * h);
  if (a < 0.0 && b > 0.0) {
    xs.push_back(0.0);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [&](double u, double v) { return std::abs(u - v) < 1e-12 * h; }),
             xs.end());
  }
  return xs;
}

// integrate leftward from the last grid node, filling values right-to-left
void tabulate_leftward(const ProfileOde& ode, const std::vector<double>& xs, const State2& y0,
                       const Rk45Options& opt, std::vector<double>& values) {
  values.assign(xs.size(), 0.0);
  State2 y = y0;
  values.back() = y[0];
  for (std::size_t k = xs.size() - 1; k > 0; --k) {
    auto [xe, ye] = integrate_rk45(ode, xs[k], y, xs[k - 1], opt, nullptr, nullptr);
    (void)xe;
    y = ye;
    values[k - 1] = std::max(y[0], 0.0);
  }
}

// expanding bracket + bisection on a monotone-increasing mismatch
double solve_mismatch(const std::function<double(double)>& g, double lo, double hi,
                      double rel_tol, int max_iter, const char* what) {
  double glo = g(lo), ghi = g(hi);
  double span = hi - lo;
  int guard = 0;
  while (glo > 0.0) {  // root lies below lo
    hi = lo;
    ghi = glo;
    lo -= span;
    span *= 2.0;
    glo = g(lo);
    if (++guard > 24)
      fail(errc::shooting_diverged, std::string(what) + ": no lower bracket found");
  }
  guard = 0;
  while (ghi < 0.0) {  // root lies above hi
    lo = hi;
    glo = ghi;
    hi += span;
    span *= 2.0;
    ghi = g(hi);
    if (++guard > 24)
      fail(errc::shooting_diverged, std::string(what) + ": no upper bracket found");
  }
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= rel_tol * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SelfSimResult solve_f(const ProblemParams& prm_in, const ShootingConfig& cfg) {
  ProblemParams prm = prm_in;
  prm.b = 0.0;  // scaling profile of the unperturbed equation
  validate(prm);
  const double m = prm.m, p = prm.p, alpha = prm.alpha, C = prm.coeff;
  const double mp = prm.mp();
  const double tau = 1.0 / (1.0 + p + alpha * (1.0 - mp));
  const double a = (1.0 + p) / (1.0 - mp);
  const double D = big_d(prm);

  const double xi_left = std::isnan(cfg.xi_left) ? -20.0 : cfg.xi_left;
  const double xi_right = std::isnan(cfg.xi_right) ? std::max(8.0, 0.6 * -xi_left) : cfg.xi_right;
  if (!(xi_left < 0.0 && xi_right > 0.0))
    fail(errc::invalid_argument, "shooting window must straddle 0");

  ProfileOde ode{m, p,
                 [tau, alpha](double x, double f, double fp) { return tau * (alpha * f - x * fp); }};

  // two-term far-field target C(-xi)^alpha + V (-xi)^{(alpha m - 1)p - 1}
  const double q = (alpha * m - 1.0) * p - 1.0;
  const double V = p * std::pow(alpha * m, p) * (alpha * m - 1.0) * std::pow(C, mp);
  const double target = C * std::pow(-xi_left, alpha) + V * std::pow(-xi_left, q);

  Rk45Options opt;
  opt.rel_tol = cfg.ode_rel_tol;
  opt.initial_step = cfg.ode_step;

  // tail family: amplitude-perturbed exact power D xi^{-a}
  auto start_state = [&](double theta) {
    const double K = D * (1.0 + theta);
    const double f0 = K * std::pow(xi_right, -a);
    const double Am = a * m;
    const double s0 = -std::pow(Am, p) * std::pow(K, mp) * std::pow(xi_right, (-Am - 1.0) * p);
    return State2{f0, s0};
  };
  auto g = [&](double theta) {
    if (theta <= -0.95) return -1.0;  // tail amplitude must stay positive
    return left_mismatch(ode, xi_right, start_state(theta), xi_left, target, opt);
  };
  const double theta = solve_mismatch(g, -0.4, 0.4, cfg.tolerance, cfg.max_iter, "solve_f");

  std::vector<double> xs = output_grid(xi_left, xi_right, cfg.output_nodes);
  std::vector<double> fs;
  tabulate_leftward(ode, xs, start_state(theta), opt, fs);
  for (double v : fs)
    if (!(v > 0.0))
      fail(errc::shooting_diverged, "solve_f: profile lost positivity (no decaying branch)");

  SelfSimResult out;
  out.shape = ShapeFunction(std::move(xs), std::move(fs), ShapeKind::f_selfsim);
  out.value_at_zero = out.shape.value_at_zero();
  out.theta = theta;
  return out;
}

SelfSimResult solve_f1(const ProblemParams& prm, const ShootingConfig& cfg) {
  validate(prm);
  const double m = prm.m, p = prm.p, b = prm.b, beta = prm.beta, C = prm.coeff;
  const double mp = prm.mp();
  if (!(b > 0.0 && beta > 0.0 && beta < mp))
    fail(errc::wrong_regime, "solve_f1 requires b > 0 and 0 < beta < m*p");
  const double A = (1.0 + p) / (mp - beta);
  const double E = (mp - beta) / ((1.0 + p) * (1.0 - beta));
  const double cs = c_star(prm);

  if (std::abs(C - cs) <= 1e-12 * std::max(C, cs)) {
    // critical coefficient: the initial profile itself is stationary
    const double zl = std::isnan(cfg.xi_left) ? -std::pow(3.0 / cs, 1.0 / A) : cfg.xi_left;
    std::vector<double> xs = output_grid(zl, 0.25 * -zl, cfg.output_nodes);
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      fs[i] = xs[i] < 0.0 ? cs * std::pow(-xs[i], A) : 0.0;
    SelfSimResult out;
    out.shape = ShapeFunction(std::move(xs), std::move(fs), ShapeKind::f1_balance);
    out.shape.set_front(0.0);
    out.value_at_zero = 0.0;
    out.front = 0.0;
    return out;
  }

  // amplitude-normalized left edge: keep C(-zeta_l)^A moderate and the
  // far-field correction small
  double zeta_l;
  const double Vrel = std::abs(std::pow(C / cs, mp - beta) - 1.0) * b * std::pow(C, beta - 1.0);
  if (std::isnan(cfg.xi_left)) {
    zeta_l = -std::max(2.0, std::pow(3.0 / C, 1.0 / A));
    for (int i = 0; i < 6 && Vrel * std::pow(-zeta_l, A * (beta - 1.0)) > 0.03; ++i)
      zeta_l *= 1.3;
  } else {
    zeta_l = cfg.xi_left;
  }
  const double zeta_r = std::isnan(cfg.xi_right) ? std::max(2.0, 0.75 * -zeta_l) : cfg.xi_right;

  ProfileOde ode{m, p, [E, b, beta](double x, double f, double fp) {
                   return f / (1.0 - beta) + b * std::pow(f, beta) - E * x * fp;
                 }};

  const double V = b * std::pow(C, beta) * (std::pow(C / cs, mp - beta) - 1.0);
  const double target = C * std::pow(-zeta_l, A) + V * std::pow(-zeta_l, A * beta);

  Rk45Options opt;
  opt.rel_tol = cfg.ode_rel_tol;

  // front contact: f1 ~ C*(zeta* - zeta)^A just behind the support edge
  const double front_offset = 1e-3;
  auto start_state = [&](double zstar) {
    const double f0 = cs * std::pow(front_offset, A);
    const double s0 = power_flux(cs, A, m, p, front_offset);
    (void)zstar;
    return State2{f0, s0};
  };
  auto g = [&](double zstar) {
    if (zstar - front_offset <= zeta_l + 1e-6) return -1.0;  // front out of window
    Rk45Options o = opt;
    o.initial_step = front_offset / 8.0;
    return left_mismatch(ode, zstar - front_offset, start_state(zstar), zeta_l, target, o);
  };
  const double zstar = solve_mismatch(g, 0.75 * zeta_l, 0.9 * zeta_r, cfg.tolerance, cfg.max_iter,
                                      "solve_f1");

  std::vector<double> xs = output_grid(zeta_l, zstar - front_offset, cfg.output_nodes);
  std::vector<double> fs;
  {
    Rk45Options o = opt;
    o.initial_step = front_offset / 8.0;
    tabulate_leftward(ode, xs, start_state(zstar), o, fs);
  }
  if (xs.size() < 8) fail(errc::shooting_diverged, "solve_f1: window collapsed");

  SelfSimResult out;
  out.shape = ShapeFunction(std::move(xs), std::move(fs), ShapeKind::f1_balance);
  out.shape.set_front(zstar);
  out.front = zstar;
  out.theta = zstar;
  out.value_at_zero =
      (zstar > front_offset && out.shape.x_max() >= 0.0) ? out.shape.value_at_zero() : 0.0;
  return out;
}

double value_or_zero(const SelfSimResult& res, double x) {
  if (x < res.shape.x_min()) fail(errc::out_of_range, "value_or_zero: left of tabulated range");
  if (x <= res.shape.x_max()) return res.shape.eval(x);
  return 0.0;
}

}  // namespace degenpde
