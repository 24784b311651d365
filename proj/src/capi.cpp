#include "degenpde/degenpde.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <string>

#include "degenpde/analysis.hpp"
#include "degenpde/params.hpp"
#include "degenpde/regimes.hpp"
#include "degenpde/selfsim.hpp"
#include "degenpde/solver.hpp"
#include "degenpde/stationary.hpp"

using namespace degenpde;

namespace {

thread_local std::string g_last_error;

dgp_status status_from(errc c) {
  switch (c) {
    case errc::none: return DGP_OK;
    case errc::non_positive_parameter: return DGP_ERR_NONPOSITIVE_PARAMETER;
    case errc::invalid_regime: return DGP_ERR_INVALID_REGIME;
    case errc::excluded_case: return DGP_ERR_EXCLUDED_CASE;
    case errc::wrong_regime: return DGP_ERR_WRONG_REGIME;
    case errc::out_of_range: return DGP_ERR_OUT_OF_RANGE;
    case errc::domain_error: return DGP_ERR_DOMAIN;
    case errc::missing_dependency: return DGP_ERR_MISSING_DEPENDENCY;
    case errc::convergence_failure: return DGP_ERR_CONVERGENCE;
    case errc::shooting_diverged: return DGP_ERR_SHOOTING_DIVERGED;
    case errc::front_not_bracketed: return DGP_ERR_FRONT_NOT_BRACKETED;
    case errc::grid_too_coarse: return DGP_ERR_GRID_TOO_COARSE;
    case errc::stability_failure: return DGP_ERR_STABILITY;
    case errc::non_finite_value: return DGP_ERR_NONFINITE;
    case errc::interface_left_domain: return DGP_ERR_INTERFACE_LEFT_DOMAIN;
    case errc::insufficient_data: return DGP_ERR_INSUFFICIENT_DATA;
    case errc::insufficient_range: return DGP_ERR_INSUFFICIENT_RANGE;
    case errc::shape_missing: return DGP_ERR_SHAPE_MISSING;
    case errc::unknown_barrier: return DGP_ERR_UNKNOWN_BARRIER;
    case errc::missing_constant: return DGP_ERR_MISSING_CONSTANT;
    case errc::invalid_argument: return DGP_ERR_INVALID_ARGUMENT;
  }
  return DGP_ERR_INTERNAL;
}

template <typename Fn>
dgp_status guard(Fn&& fn) {
  try {
    fn();
    return DGP_OK;
  } catch (const error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DGP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DGP_ERR_INTERNAL;
  }
}

ProblemParams to_params(const dgp_params* prm) {
  if (!prm) fail(errc::invalid_argument, "params pointer is null");
  return ProblemParams{prm->m, prm->p, prm->b, prm->beta, prm->alpha, prm->C};
}

ShootingConfig to_shooting(const dgp_shooting_config* cfg) {
  ShootingConfig out;
  if (!cfg) return out;
  out.xi_left = cfg->xi_left;
  out.xi_right = cfg->xi_right;
  if (cfg->tolerance > 0.0) out.tolerance = cfg->tolerance;
  if (cfg->ode_rel_tol > 0.0) out.ode_rel_tol = cfg->ode_rel_tol;
  if (cfg->output_nodes > 16) out.output_nodes = cfg->output_nodes;
  return out;
}

std::optional<double> opt_of(const double* v) {
  return v ? std::optional<double>(*v) : std::nullopt;
}

}  // namespace

struct dgp_report {
  PredictionReport rep;
  std::vector<std::string> const_names;  // stable key order for the accessors
  explicit dgp_report(PredictionReport r) : rep(std::move(r)) {
    for (const auto& [k, v] : rep.named_constants) {
      (void)v;
      const_names.push_back(k);
    }
  }
};

struct dgp_profile {
  ShapeFunction shape;
  double gamma = 0.0;  // stationary profiles only
};

struct dgp_sim {
  SimResult result;
};

extern "C" {

const char* dgp_status_name(dgp_status s) {
  switch (s) {
    case DGP_OK: return "ok";
    case DGP_ERR_NONPOSITIVE_PARAMETER: return "NonPositiveParameter";
    case DGP_ERR_INVALID_REGIME: return "InvalidRegime";
    case DGP_ERR_EXCLUDED_CASE: return "ExcludedCase";
    case DGP_ERR_WRONG_REGIME: return "WrongRegime";
    case DGP_ERR_OUT_OF_RANGE: return "OutOfRange";
    case DGP_ERR_DOMAIN: return "DomainError";
    case DGP_ERR_MISSING_DEPENDENCY: return "MissingDependency";
    case DGP_ERR_CONVERGENCE: return "ConvergenceFailure";
    case DGP_ERR_SHOOTING_DIVERGED: return "ShootingDiverged";
    case DGP_ERR_FRONT_NOT_BRACKETED: return "FrontNotBracketed";
    case DGP_ERR_GRID_TOO_COARSE: return "GridTooCoarse";
    case DGP_ERR_STABILITY: return "StabilityFailure";
    case DGP_ERR_NONFINITE: return "NonFiniteValue";
    case DGP_ERR_INTERFACE_LEFT_DOMAIN: return "InterfaceLeftDomain";
    case DGP_ERR_INSUFFICIENT_DATA: return "InsufficientData";
    case DGP_ERR_INSUFFICIENT_RANGE: return "InsufficientRange";
    case DGP_ERR_SHAPE_MISSING: return "ShapeMissing";
    case DGP_ERR_UNKNOWN_BARRIER: return "UnknownBarrier";
    case DGP_ERR_MISSING_CONSTANT: return "MissingConstant";
    case DGP_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case DGP_ERR_INTERNAL: return "Internal";
  }
  return "unknown";
}

const char* dgp_last_error(void) { return g_last_error.c_str(); }

const char* dgp_case_name(int case_id) { return case_name(static_cast<CaseId>(case_id)); }
const char* dgp_interface_kind_name(int kind) {
  return interface_kind_name(static_cast<InterfaceKind>(kind));
}
const char* dgp_decay_law_name(int law) { return decay_law_name(static_cast<DecayLaw>(law)); }

dgp_status dgp_validate(const dgp_params* prm) {
  return guard([&] { validate(to_params(prm)); });
}

dgp_status dgp_classify(const dgp_params* prm, dgp_regime* out) {
  return guard([&] {
    if (!out) fail(errc::invalid_argument, "output pointer is null");
    const RegimeCase rc = classify(to_params(prm));
    out->case_id = static_cast<int>(rc.case_id);
    out->interface_kind = static_cast<int>(rc.interface_kind);
    out->decay_law = static_cast<int>(rc.decay_law);
    out->has_exponent = rc.predicted_exponent.has_value();
    out->exponent = rc.predicted_exponent.value_or(0.0);
    out->has_coeff_bounds = rc.predicted_coefficient_bounds.has_value();
    out->coeff_lo = rc.predicted_coefficient_bounds ? rc.predicted_coefficient_bounds->first : 0.0;
    out->coeff_hi =
        rc.predicted_coefficient_bounds ? rc.predicted_coefficient_bounds->second : 0.0;
  });
}

#define DGP_SCALAR_OP(cname, corefn)                                 \
  dgp_status cname(const dgp_params* prm, double* out) {             \
    return guard([&] {                                               \
      if (!out) fail(errc::invalid_argument, "output pointer null"); \
      *out = corefn(to_params(prm));                                 \
    });                                                              \
  }

DGP_SCALAR_OP(dgp_c_star, c_star)
DGP_SCALAR_OP(dgp_big_d, big_d)
DGP_SCALAR_OP(dgp_gamma_decay, gamma_decay)
DGP_SCALAR_OP(dgp_ell_star, ell_star)
#undef DGP_SCALAR_OP

size_t dgp_report_constant_count(const dgp_report* rep) {
  return rep ? rep->const_names.size() : 0;
}
const char* dgp_report_constant_name(const dgp_report* rep, size_t i) {
  return (rep && i < rep->const_names.size()) ? rep->const_names[i].c_str() : nullptr;
}
double dgp_report_constant_value(const dgp_report* rep, size_t i) {
  if (!rep || i >= rep->const_names.size()) return std::nan("");
  return rep->rep.named_constants.at(rep->const_names[i]);
}
size_t dgp_report_check_count(const dgp_report* rep) { return rep ? rep->rep.checks.size() : 0; }
const char* dgp_report_check_name(const dgp_report* rep, size_t i) {
  return (rep && i < rep->rep.checks.size()) ? rep->rep.checks[i].name.c_str() : nullptr;
}
dgp_status dgp_report_check(const dgp_report* rep, size_t i, double* predicted, double* measured,
                            double* rel_error, int* pass) {
  return guard([&] {
    if (!rep || i >= rep->rep.checks.size()) fail(errc::out_of_range, "check index out of range");
    const Check& c = rep->rep.checks[i];
    if (predicted) *predicted = c.predicted;
    if (measured) *measured = c.measured;
    if (rel_error) *rel_error = c.rel_error;
    if (pass) *pass = c.pass ? 1 : 0;
  });
}
int dgp_report_all_pass(const dgp_report* rep) { return rep && rep->rep.all_pass() ? 1 : 0; }
void dgp_report_free(dgp_report* rep) { delete rep; }

dgp_status dgp_appendix_constants(const dgp_params* prm, double epsilon, const double* a0,
                                  const double* a1, const double* lambda, const double* ell1,
                                  dgp_report** out) {
  return guard([&] {
    if (!out) fail(errc::invalid_argument, "output pointer null");
    ConstantsRequest req{to_params(prm), epsilon, opt_of(a0), opt_of(a1), opt_of(lambda),
                         opt_of(ell1)};
    *out = new dgp_report(appendix_constants(req));
  });
}

dgp_status dgp_stationary_profile(const dgp_params* prm, double z_min, int nodes,
                                  dgp_profile** out) {
  return guard([&] {
    if (!out) fail(errc::invalid_argument, "output pointer null");
    StationaryOptions opt;
    if (z_min > 0.0) opt.z_min = z_min;
    if (nodes > 16) opt.nodes = nodes;
    StationaryProfile sp = tabulate_stationary(to_params(prm), opt);
    auto* h = new dgp_profile;
    h->shape = std::move(sp.shape);
    h->gamma = sp.gamma;
    *out = h;
  });
}

dgp_status dgp_stationary_decay_check(const dgp_params* prm, const dgp_profile* profile,
                                      double gamma_prime_factor, dgp_report** out) {
  return guard([&] {
    if (!out || !profile) fail(errc::invalid_argument, "null pointer");
    StationaryProfile sp;
    sp.shape = profile->shape;
    sp.gamma = profile->gamma;
    sp.params = to_params(prm);
    sp.params.beta = sp.params.m * sp.params.p;
    *out = new dgp_report(
        decay_check(sp, gamma_prime_factor > 0.0 ? gamma_prime_factor : 1.2));
  });
}

dgp_status dgp_selfsim_f(const dgp_params* prm, const dgp_shooting_config* cfg,
                         dgp_profile** out) {
  return guard([&] {
    if (!out) fail(errc::invalid_argument, "output pointer null");
    SelfSimResult res = solve_f(to_params(prm), to_shooting(cfg));
    auto* h = new dgp_profile;
    h->shape = std::move(res.shape);
    *out = h;
  });
}

dgp_status dgp_selfsim_f1(const dgp_params* prm, const dgp_shooting_config* cfg,
                          dgp_profile** out) {
  return guard([&] {
    if (!out) fail(errc::invalid_argument, "output pointer null");
    SelfSimResult res = solve_f1(to_params(prm), to_shooting(cfg));
    auto* h = new dgp_profile;
    h->shape = std::move(res.shape);
    *out = h;
  });
}

size_t dgp_profile_size(const dgp_profile* profile) { return profile ? profile->shape.size() : 0; }

dgp_status dgp_profile_node(const dgp_profile* profile, size_t i, double* x, double* v) {
  return guard([&] {
    if (!profile || i >= profile->shape.size()) fail(errc::out_of_range, "node index");
    if (x) *x = profile->shape.abscissa()[i];
    if (v) *v = profile->shape.values()[i];
  });
}

dgp_status dgp_profile_eval(const dgp_profile* profile, double x, double* v) {
  return guard([&] {
    if (!profile || !v) fail(errc::invalid_argument, "null pointer");
    *v = profile->shape.eval(x);
  });
}

dgp_status dgp_profile_value_at_zero(const dgp_profile* profile, double* v) {
  return guard([&] {
    if (!profile || !v) fail(errc::invalid_argument, "null pointer");
    *v = profile->shape.value_at_zero();
  });
}

dgp_status dgp_profile_front(const dgp_profile* profile, double* zeta_star) {
  return guard([&] {
    if (!profile || !zeta_star) fail(errc::invalid_argument, "null pointer");
    if (!profile->shape.front())
      fail(errc::front_not_bracketed, "profile has no front metadata");
    *zeta_star = *profile->shape.front();
  });
}

void dgp_profile_free(dgp_profile* profile) { delete profile; }

dgp_status dgp_simulate(const dgp_params* prm, const dgp_solver_config* cfg, dgp_sim** out) {
  return guard([&] {
    if (!out || !cfg) fail(errc::invalid_argument, "null pointer");
    SolverConfig sc;
    sc.x_left = cfg->x_left;
    sc.x_right = cfg->x_right;
    sc.dx = cfg->dx;
    sc.t_end = cfg->t_end;
    if (cfg->cfl_safety > 0.0) sc.cfl_safety = cfg->cfl_safety;
    sc.floor = cfg->floor;
    sc.threshold = cfg->threshold;
    if (cfg->floor_scale > 0.0) sc.floor_scale = cfg->floor_scale;
    sc.left_bc = static_cast<LeftBc>(cfg->left_bc);
    sc.right_bc = static_cast<RightBc>(cfg->right_bc);
    if (cfg->sample_times && cfg->n_samples)
      sc.sample_times.assign(cfg->sample_times, cfg->sample_times + cfg->n_samples);
    auto* h = new dgp_sim{run(to_params(prm), sc)};
    *out = h;
  });
}

size_t dgp_sim_grid_size(const dgp_sim* sim) {
  return sim && !sim->result.snapshots.empty() ? sim->result.snapshots.front().size() : 0;
}

dgp_status dgp_sim_grid(const dgp_sim* sim, double* xs) {
  return guard([&] {
    if (!sim || !xs || sim->result.snapshots.empty())
      fail(errc::invalid_argument, "null pointer or empty simulation");
    const auto& f = sim->result.snapshots.front();
    for (std::size_t i = 0; i < f.size(); ++i) xs[i] = f.x_at(i);
  });
}

size_t dgp_sim_snapshot_count(const dgp_sim* sim) {
  return sim ? sim->result.snapshots.size() : 0;
}

dgp_status dgp_sim_snapshot_time(const dgp_sim* sim, size_t i, double* t) {
  return guard([&] {
    if (!sim || i >= sim->result.snapshots.size() || !t)
      fail(errc::out_of_range, "snapshot index");
    *t = sim->result.snapshots[i].t;
  });
}

dgp_status dgp_sim_snapshot_values(const dgp_sim* sim, size_t i, double* us) {
  return guard([&] {
    if (!sim || i >= sim->result.snapshots.size() || !us)
      fail(errc::out_of_range, "snapshot index");
    const auto& u = sim->result.snapshots[i].u;
    std::memcpy(us, u.data(), u.size() * sizeof(double));
  });
}

size_t dgp_sim_trace_size(const dgp_sim* sim) { return sim ? sim->result.trace.samples.size() : 0; }

dgp_status dgp_sim_trace_point(const dgp_sim* sim, size_t i, double* t, double* eta) {
  return guard([&] {
    if (!sim || i >= sim->result.trace.samples.size()) fail(errc::out_of_range, "trace index");
    if (t) *t = sim->result.trace.samples[i].first;
    if (eta) *eta = sim->result.trace.samples[i].second;
  });
}

double dgp_sim_clipped_mass(const dgp_sim* sim) { return sim ? sim->result.clipped_mass : 0.0; }
double dgp_sim_floor(const dgp_sim* sim) {
  return sim && !sim->result.snapshots.empty() ? sim->result.snapshots.front().floor : 0.0;
}
double dgp_sim_threshold(const dgp_sim* sim) {
  return sim && !sim->result.snapshots.empty() ? sim->result.snapshots.front().threshold : 0.0;
}
int dgp_sim_right_tail_resolved(const dgp_sim* sim) {
  return sim && sim->result.right_tail_resolved ? 1 : 0;
}
void dgp_sim_free(dgp_sim* sim) { delete sim; }

dgp_status dgp_fit_power_law(const double* t, const double* eta, size_t n, double t_lo,
                             double t_hi, double min_abs_eta, double* exponent,
                             double* coefficient, double* rms_log_residual) {
  return guard([&] {
    if (!t || !eta) fail(errc::invalid_argument, "null series");
    InterfaceTrace trace;
    for (size_t i = 0; i < n; ++i) trace.samples.push_back({t[i], eta[i]});
    const FitResult fit = fit_power_law(trace, {t_lo, t_hi}, min_abs_eta);
    if (exponent) *exponent = fit.exponent;
    if (coefficient) *coefficient = fit.coefficient;
    if (rms_log_residual) *rms_log_residual = fit.rms_log_residual;
  });
}

dgp_status dgp_verify_interface_law(const dgp_params* prm, const dgp_sim* sim, double t_lo,
                                    double t_hi, dgp_report** out) {
  return guard([&] {
    if (!sim || !out) fail(errc::invalid_argument, "null pointer");
    *out = new dgp_report(
        verify_interface_law(to_params(prm), sim->result.trace, {t_lo, t_hi}));
  });
}

dgp_status dgp_verify_local_solution(const dgp_params* prm, const dgp_sim* sim,
                                     const dgp_profile* shape_a, const dgp_profile* phi,
                                     double epsilon, dgp_report** out) {
  return guard([&] {
    if (!sim || !out) fail(errc::invalid_argument, "null pointer");
    const ProblemParams pp = to_params(prm);
    LocalSolutionInputs in;
    SelfSimResult shape;
    StationaryProfile stat;
    if (shape_a) {
      shape.shape = shape_a->shape;
      shape.front = shape_a->shape.front();
      if (!shape.front || *shape.front > 0.0) {
        try {
          shape.value_at_zero = shape.shape.value_at_zero();
        } catch (const error&) {
          shape.value_at_zero = 0.0;
        }
      }
      if (shape.shape.kind() == ShapeKind::f1_balance)
        in.shape_f1 = &shape;
      else
        in.shape_f = &shape;
    }
    if (phi) {
      stat.shape = phi->shape;
      stat.gamma = phi->gamma;
      stat.params = pp;
      stat.params.beta = pp.m * pp.p;
      in.phi = &stat;
    }
    AnalysisOptions opt;
    if (epsilon > 0.0) opt.epsilon = epsilon;
    *out = new dgp_report(verify_local_solution(pp, sim->result.snapshots, in, opt));
  });
}

dgp_status dgp_solver_vs_barriers(const dgp_params* prm, const dgp_sim* sim, double epsilon,
                                  const double* a0, const double* a1, const double* lambda,
                                  const double* ell1, dgp_report** out) {
  return guard([&] {
    if (!sim || !out) fail(errc::invalid_argument, "null pointer");
    ConstantsRequest req{to_params(prm), epsilon > 0.0 ? epsilon : 0.1, opt_of(a0), opt_of(a1),
                         opt_of(lambda), opt_of(ell1)};
    *out = new dgp_report(solver_vs_barriers(to_params(prm), sim->result.snapshots, req));
  });
}

dgp_status dgp_barrier_residual_scan(const dgp_params* prm, const char* barrier_id,
                                     double epsilon, const double* a0, const double* a1,
                                     const double* lambda, const double* ell1, dgp_report** out) {
  return guard([&] {
    if (!barrier_id || !out) fail(errc::invalid_argument, "null pointer");
    ConstantsRequest req{to_params(prm), epsilon > 0.0 ? epsilon : 0.1, opt_of(a0), opt_of(a1),
                         opt_of(lambda), opt_of(ell1)};
    *out = new dgp_report(barrier_residual_scan(to_params(prm), barrier_id, req));
  });
}

dgp_status dgp_constant_identity_suite(const dgp_params* prm, double epsilon, double a0,
                                       dgp_report** out) {
  return guard([&] {
    if (!out) fail(errc::invalid_argument, "null pointer");
    *out = new dgp_report(constant_identity_suite(to_params(prm), epsilon, a0));
  });
}

} /* extern "C" */
