#pragma once

#include <limits>
#include <optional>

#include "degenpde/params.hpp"
#include "degenpde/shape_function.hpp"

namespace degenpde {

/// Shooting controls for the self-similar profile solves.  xi_left / xi_right
/// left as NaN pick sensible defaults: -20 for f, and an amplitude-normalized
/// window for f1 (whose far field C(-zeta)^{(1+p)/(mp-beta)} grows too fast
/// for a fixed window to serve every C).
struct ShootingConfig {
  double xi_left = std::numeric_limits<double>::quiet_NaN();
  double xi_right = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 1e-13;  // relative bisection width on the shooting parameter
  int max_iter = 200;
  double ode_step = 1e-4;
  double ode_rel_tol = 1e-10;
  double f_stop = 1e-10;  // termination level ahead of a degenerate front
  int output_nodes = 2001;
};

struct SelfSimResult {
  ShapeFunction shape;
  double value_at_zero = 0.0;   // A0 = f(0) or A1 = f1(0); 0 if the front sits left of 0
  std::optional<double> front;  // zeta_star for f1 (none for f: infinite speed)
  double theta = 0.0;           // converged shooting parameter, diagnostic only
};

/// Shape f of the b = 0 scaling u = t^{alpha/(1+p+alpha(1-mp))} f(x t^{-1/(1+p+alpha(1-mp))}):
/// solves (|(f^m)'|^{p-1}(f^m)')' + (xi f' - alpha f)/(1+p+alpha(1-mp)) = 0 by shooting on
/// the far-field flux, with f ~ C(-xi)^alpha as xi -> -inf and the decaying
/// power tail D xi^{(1+p)/(mp-1)} selected on the right.  b in prm is ignored.
SelfSimResult solve_f(const ProblemParams& prm, const ShootingConfig& cfg = {});

/// Balance-case shape f1 of u = t^{1/(1-beta)} f1(x t^{-(mp-beta)/((1+p)(1-beta))}):
/// solves (|(f1^m)'|^{p-1}(f1^m)')' + E zeta f1' - f1/(1-beta) - b f1^beta = 0,
/// E = (mp-beta)/((1+p)(1-beta)), with f1 ~ C(-zeta)^{(1+p)/(mp-beta)} on the left and a
/// degenerate front zeta_star on the right (positive iff C > C*).  For C = C*
/// the initial profile is stationary and is returned in closed form.
SelfSimResult solve_f1(const ProblemParams& prm, const ShootingConfig& cfg = {});

/// f1 extended by zero beyond its front; inside the tabulated range this is
/// plain interpolation.
double value_or_zero(const SelfSimResult& res, double x);

}  // namespace degenpde
