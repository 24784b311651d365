#pragma once

#include <vector>

#include "degenpde/params.hpp"
#include "degenpde/report.hpp"
#include "degenpde/shape_function.hpp"

namespace degenpde {

/// Stationary profile phi of the beta = m*p balance: the decreasing solution
/// of  (|(phi^m)'|^{p-1}(phi^m)')' = phi/(1-mp) + b phi^{mp},
/// phi(0) = 1, phi(+inf) = 0, obtained by inverting the explicit integral
///   F(z) = int_z^1 (m/s) [ b/p + m(1+p)/(p(1-mp)(1+m)) s^{1-mp} ]^{-1/(1+p)} ds.
struct StationaryProfile {
  ShapeFunction shape;     // kind = phi_stationary, phi(0) = 1
  double gamma = 0.0;      // tail rate (1/m)(b/p)^{1/(1+p)}
  ProblemParams params;    // with beta = m*p enforced
  double z_min = 1e-12;    // smallest tabulated phi value
};

struct StationaryOptions {
  double z_min = 1e-12;    // phi values below this are out of range
  int nodes = 400;         // tabulation nodes, geometric in phi
  double quad_rel_tol = 1e-12;
};

/// F(z) for z in (0, 1]; adaptive quadrature after the substitution
/// s = exp(-tau), which removes the logarithmic blow-up as z -> 0.
double f_integral(double z, const ProblemParams& prm, double rel_tol = 1e-12);

/// Lambda(x) = -ln phi(x), solved from F(exp(-Lambda)) = x by bisection.
/// Works in the log domain, so it stays usable far beyond the underflow
/// point of phi itself.
double neg_log_phi(double x, const ProblemParams& prm, double rel_tol = 1e-12);

/// phi(x) = F^{-1}(x); phi(0) = 1 exactly.  x beyond F(z_min) is out of range.
double phi(double x, const ProblemParams& prm, double z_min = 1e-12);

/// Tabulates phi geometrically in z (uniform in ln z) from 1 down to z_min.
StationaryProfile tabulate_stationary(const ProblemParams& prm,
                                      const StationaryOptions& opt = {});

/// Tabulates phi on a caller-supplied increasing x grid (used by the
/// finite-difference residual checks, which want uniform spacing).
StationaryProfile tabulate_stationary_on_grid(const ProblemParams& prm,
                                              const std::vector<double>& xs);

/// Conservative second-order residual of the stationary balance at the
/// tabulated node nearest x (at least two cells from either end):
///   r = (|(phi^m)'|^{p-1}(phi^m)')' - phi/(1-mp) - b phi^{mp}.
double ode_residual(const StationaryProfile& profile, double x);

/// Tail diagnostics: fitted slope of ln phi over the last decade of x
/// against -gamma, and growth of phi e^{gamma' x} for gamma' > gamma.
/// Adds a failing "tail_depth" flag (rather than throwing) when
/// phi(x_max) > 1e-6, since the slope estimate then degrades.
PredictionReport decay_check(const StationaryProfile& profile, double gamma_prime_factor = 1.2,
                             double slope_tol = 0.03);

/// Checks the rescaled limit eps * (-ln phi(x/eps)) -> gamma x on [x_lo, x_hi]
/// for each eps in the list, requiring the sup error to decrease along the
/// list (callers pass decreasing eps).
PredictionReport rescaled_limit_check(const ProblemParams& prm, const std::vector<double>& epsilons,
                                      double x_lo = 0.5, double x_hi = 3.0, int n_points = 26);

}  // namespace degenpde
