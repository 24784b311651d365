#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "degenpde/params.hpp"
#include "degenpde/regimes.hpp"
#include "degenpde/report.hpp"
#include "degenpde/selfsim.hpp"
#include "degenpde/solver.hpp"
#include "degenpde/stationary.hpp"

namespace degenpde {

struct FitResult {
  double exponent = 0.0;
  double coefficient = 0.0;  // sign follows eta's sign
  std::pair<double, double> window{0.0, 0.0};
  double rms_log_residual = 0.0;
  int n_points = 0;
};

/// Least-squares line in (ln t, ln |eta|) over the window; needs at least
/// five samples with |eta| > min_abs_eta and a consistent sign.
FitResult fit_power_law(const InterfaceTrace& trace, std::pair<double, double> window,
                        double min_abs_eta = 0.0);

struct AnalysisOptions {
  double exponent_tol = 0.10;     // solver-derived exponents
  double coefficient_tol = 0.10;  // solver-derived coefficients
  double barrier_slack = 0.03;    // numerical-error allowance on barrier sides
  double collapse_tol = 0.02;     // self-similar collapse spread
  double ratio_tol = 0.10;        // local-solution ratio at the smallest time
  double identity_tol = 1e-10;    // closed-form identities
  double epsilon = 0.1;           // appendix epsilon / sandwich epsilon
};

/// Fits the trace and checks it against the regime's predicted law
/// (exponent for I/II/III, coefficient window [zeta_1, zeta_2] for I,
/// coefficient sign for II, coefficient -ell* for III).
PredictionReport verify_interface_law(const ProblemParams& prm, const InterfaceTrace& trace,
                                      std::pair<double, double> window,
                                      const AnalysisOptions& opt = {});

struct LocalSolutionInputs {
  const SelfSimResult* shape_f = nullptr;   // cases I and V: b = 0 scaling shape
  const SelfSimResult* shape_f1 = nullptr;  // case II
  const StationaryProfile* phi = nullptr;   // case IV
};

/// Regime-dispatched local asymptotics: ratio convergence along the scaling
/// curves (I, II, V), the closed absorption form (III), the two-sided
/// stationary sandwich with a searched delta (IV), and self-similar collapse
/// for b = 0.  Throws shape_missing when the regime's profile is absent.
PredictionReport verify_local_solution(const ProblemParams& prm,
                                       const std::vector<SolutionField>& snapshots,
                                       const LocalSolutionInputs& in,
                                       const AnalysisOptions& opt = {});

/// Sign conditions of the closed-form barrier residuals on a scan grid.
/// barrier_id is one of: case1_sub, case1_super, case2_sub, case2_super,
/// case5_sub, case5_super, case5_mu_region, diffbound.
PredictionReport barrier_residual_scan(const ProblemParams& prm, std::string_view barrier_id,
                                       const ConstantsRequest& req, int grid_points = 1000);

/// Checks the numerical solution against the two-sided closed-form barriers
/// inside their stated validity regions, with barrier_slack relative slack.
PredictionReport solver_vs_barriers(const ProblemParams& prm,
                                    const std::vector<SolutionField>& snapshots,
                                    const ConstantsRequest& req, const AnalysisOptions& opt = {});

/// The transcription-drift guard: every defining identity behind the
/// closed-form constant tables, evaluated at one parameter point.
PredictionReport constant_identity_suite(const ProblemParams& prm, double epsilon, double a0,
                                         double tol = 1e-10);

/// Slope of ln u versus x over [x_lo, x_hi] (cells with u > 0 only).
double tail_log_slope(const SolutionField& field, double x_lo, double x_hi);

/// Relative spread of u t^{-sigma} vs xi = x t^{-tau} across snapshots,
/// evaluated where all snapshots exceed u_min.
double collapse_spread(const std::vector<SolutionField>& snapshots, double sigma, double tau,
                       double u_min, double xi_lo, double xi_hi, int n_points = 200);

}  // namespace degenpde
