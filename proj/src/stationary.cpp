#include "degenpde/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "degenpde/numerics.hpp"
#include "degenpde/regimes.hpp"

namespace degenpde {

namespace {

ProblemParams balance_params(const ProblemParams& prm) {
  ProblemParams out = prm;
  out.beta = prm.m * prm.p;  // phi lives on the beta = mp line
  validate(out);
  if (!(out.b > 0.0)) fail(errc::wrong_regime, "stationary profile requires b > 0");
  return out;
}

// Integrand of F after s = exp(-tau): bounded, monotone in tau, with
// horizontal asymptote m (b/p)^{-1/(1+p)} = 1/gamma.
double tau_integrand(double tau, const ProblemParams& prm) {
  const double mp = prm.mp();
  const double K = prm.m * (1.0 + prm.p) / (prm.p * (1.0 - mp) * (1.0 + prm.m));
  const double s_pow = std::exp(-tau * (1.0 - mp));  // s^{1-mp}
  return prm.m * std::pow(prm.b / prm.p + K * s_pow, -1.0 / (1.0 + prm.p));
}

}  // namespace

double f_integral(double z, const ProblemParams& prm_in, double rel_tol) {
  const ProblemParams prm = balance_params(prm_in);
  if (!(z > 0.0 && z <= 1.0)) {
    std::ostringstream os;
    os << "F(z) requires z in (0, 1], got z = " << z;
    fail(errc::domain_error, os.str());
  }
  if (z == 1.0) return 0.0;
  const double T = -std::log(z);
  return integrate_gk([&](double tau) { return tau_integrand(tau, prm); }, 0.0, T, rel_tol);
}

double neg_log_phi(double x, const ProblemParams& prm_in, double rel_tol) {
  const ProblemParams prm = balance_params(prm_in);
  if (x < 0.0) fail(errc::domain_error, "neg_log_phi requires x >= 0");
  if (x == 0.0) return 0.0;
  // F_log(L) = int_0^L integrand dtau is strictly increasing with slope in
  // [integrand(inf), 1/gamma]; bracket L by the tail slope and invert.
  const double g = gamma_decay(prm);
  double hi = std::max(1.0, 1.1 * g * x);
  auto F_log = [&](double L) {
    return integrate_gk([&](double tau) { return tau_integrand(tau, prm); }, 0.0, L, rel_tol);
  };
  while (F_log(hi) < x) {
    hi *= 2.0;
    if (hi > 1e8) fail(errc::convergence_failure, "neg_log_phi: bracket expansion failed");
  }
  return bisect([&](double L) { return F_log(L) - x; }, 0.0, hi, 1e-13);
}

double phi(double x, const ProblemParams& prm_in, double z_min) {
  const ProblemParams prm = balance_params(prm_in);
  if (x < 0.0) fail(errc::domain_error, "phi requires x >= 0");
  if (x == 0.0) return 1.0;
  const double x_max = f_integral(z_min, prm);
  if (x > x_max) {
    std::ostringstream os;
    os << "phi(x) out of range: x = " << x << " beyond F(z_min) = " << x_max;
    fail(errc::out_of_range, os.str());
  }
  return std::exp(-neg_log_phi(x, prm));
}

StationaryProfile tabulate_stationary(const ProblemParams& prm_in, const StationaryOptions& opt) {
  const ProblemParams prm = balance_params(prm_in);
  if (opt.nodes < 8) fail(errc::invalid_argument, "tabulation needs at least 8 nodes");
  const int n = opt.nodes;
  std::vector<double> xs(n), zs(n);
  const double dL = -std::log(opt.z_min) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double L = i * dL;  // Lambda value at node i
    zs[i] = std::exp(-L);
    xs[i] = (i == 0) ? 0.0
                     : integrate_gk([&](double tau) { return tau_integrand(tau, prm); }, 0.0, L,
                                    opt.quad_rel_tol);
  }
  StationaryProfile out;
  out.params = prm;
  out.gamma = gamma_decay(prm);
  out.z_min = opt.z_min;
  out.shape = ShapeFunction(std::move(xs), std::move(zs), ShapeKind::phi_stationary);
  return out;
}

StationaryProfile tabulate_stationary_on_grid(const ProblemParams& prm_in,
                                              const std::vector<double>& xs) {
  const ProblemParams prm = balance_params(prm_in);
  if (xs.size() < 8) fail(errc::invalid_argument, "grid tabulation needs at least 8 nodes");
  std::vector<double> phis(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    phis[i] = (xs[i] == 0.0) ? 1.0 : std::exp(-neg_log_phi(xs[i], prm));
  StationaryProfile out;
  out.params = prm;
  out.gamma = gamma_decay(prm);
  out.z_min = phis.back();
  out.shape = ShapeFunction(std::vector<double>(xs), std::move(phis), ShapeKind::phi_stationary);
  return out;
}

double ode_residual(const StationaryProfile& profile, double x) {
  const auto& xs = profile.shape.abscissa();
  const auto& ph = profile.shape.values();
  const ProblemParams& prm = profile.params;
  if (xs.size() < 5) fail(errc::insufficient_range, "residual needs at least 5 nodes");
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  std::size_t j = static_cast<std::size_t>(it - xs.begin());
  if (j > 0 && (j == xs.size() || std::abs(xs[j - 1] - x) < std::abs(xs[j] - x))) --j;
  if (j < 2 || j + 2 >= xs.size())
    fail(errc::out_of_range, "residual point must sit at least 2 cells from the ends");

  auto v = [&](std::size_t i) { return std::pow(ph[i], prm.m); };
  auto flux = [&](std::size_t i) {  // at the midpoint between node i and i+1
    const double grad = (v(i + 1) - v(i)) / (xs[i + 1] - xs[i]);
    return std::pow(std::abs(grad), prm.p - 1.0) * grad;
  };
  const double div = (flux(j) - flux(j - 1)) / (0.5 * (xs[j + 1] - xs[j - 1]));
  const double mp = prm.mp();
  return div - ph[j] / (1.0 - mp) - prm.b * std::pow(ph[j], mp);
}

PredictionReport decay_check(const StationaryProfile& profile, double gamma_prime_factor,
                             double slope_tol) {
  const auto& xs = profile.shape.abscissa();
  const auto& ph = profile.shape.values();
  const double x_max = xs.back();
  if (!(x_max > 0.0) || ph.back() <= 0.0 || ph.back() > 1e-2)
    fail(errc::insufficient_range, "decay_check: profile not tabulated deep enough");

  PredictionReport rep;
  rep.add_constant("gamma", profile.gamma);
  rep.add_constant("phi_at_x_max", ph.back());
  rep.add_flag("tail_depth", ph.back() <= 1e-6);

  // slope of ln phi over the last decade of x
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] >= 0.1 * x_max && ph[i] > 0.0) {
      fx.push_back(xs[i]);
      fy.push_back(std::log(ph[i]));
    }
  }
  if (fx.size() < 5) fail(errc::insufficient_range, "decay_check: too few tail nodes");
  const LineFit fit = fit_line(fx, fy);
  rep.add_check("tail_log_slope", -profile.gamma, fit.slope, slope_tol);

  // phi(x) e^{gamma' x} must increase along the tail when gamma' > gamma
  const double gp = gamma_prime_factor * profile.gamma;
  bool increasing = true;
  for (std::size_t i = 1; i < fx.size(); ++i) {
    const double prev = gp * fx[i - 1] + fy[i - 1];
    const double cur = gp * fx[i] + fy[i];
    if (cur <= prev) increasing = false;
  }
  rep.add_flag("gamma_prime_tail_ratio_increasing", increasing);
  return rep;
}

PredictionReport rescaled_limit_check(const ProblemParams& prm_in,
                                      const std::vector<double>& epsilons, double x_lo,
                                      double x_hi, int n_points) {
  const ProblemParams prm = balance_params(prm_in);
  const double g = gamma_decay(prm);
  PredictionReport rep;
  rep.add_constant("gamma", g);
  double prev_err = -1.0;
  bool decreasing = true;
  for (double eps : epsilons) {
    double worst = 0.0;
    for (int i = 0; i < n_points; ++i) {
      const double x = x_lo + (x_hi - x_lo) * i / (n_points - 1);
      const double val = eps * neg_log_phi(x / eps, prm);
      worst = std::max(worst, std::abs(val - g * x) / (g * x));
    }
    std::ostringstream key;
    key << "sup_rel_error_eps_" << eps;
    rep.add_constant(key.str(), worst);
    if (prev_err >= 0.0 && worst >= prev_err) decreasing = false;
    prev_err = worst;
  }
  rep.add_flag("error_decreases_with_eps", decreasing);
  return rep;
}

}  // namespace degenpde
