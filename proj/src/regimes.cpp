#include "degenpde/regimes.hpp"

#include <cmath>
#include <sstream>

#include "degenpde/numerics.hpp"

namespace degenpde {

namespace {

constexpr double kEqRelTol = 1e-12;  // C = C*, beta = mp, alpha = balance

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kEqRelTol * std::max(std::abs(a), std::abs(b));
}

double balance_alpha(const ProblemParams& prm) { return (1.0 + prm.p) / (prm.mp() - prm.beta); }

// case id alone, without the predicted-law decoration (the full classify
// fills coefficient bounds from the constant tables, which need this)
CaseId case_id_of(const ProblemParams& prm) {
  const double mp = prm.mp();
  if (prm.b <= 0.0 || prm.beta > mp + kEqRelTol * std::max(prm.beta, mp)) return CaseId::V;
  if (nearly_equal(prm.beta, mp)) return CaseId::IV;
  const double ab = balance_alpha(prm);
  if (nearly_equal(prm.alpha, ab)) {
    const double cs = critical_coeff_general(prm.m, prm.p, prm.b, prm.beta);
    if (nearly_equal(prm.coeff, cs)) return CaseId::II_stationary;
    return prm.coeff > cs ? CaseId::II_super : CaseId::II_sub;
  }
  return prm.alpha < ab ? CaseId::I : CaseId::III;
}

}  // namespace

const char* case_name(CaseId c) noexcept {
  switch (c) {
    case CaseId::I: return "I";
    case CaseId::II_super: return "II_super";
    case CaseId::II_stationary: return "II_stationary";
    case CaseId::II_sub: return "II_sub";
    case CaseId::III: return "III";
    case CaseId::IV: return "IV";
    case CaseId::V: return "V";
  }
  return "?";
}

const char* interface_kind_name(InterfaceKind k) noexcept {
  switch (k) {
    case InterfaceKind::expands: return "expands";
    case InterfaceKind::shrinks: return "shrinks";
    case InterfaceKind::stationary: return "stationary";
    case InterfaceKind::infinite_speed: return "infinite_speed";
  }
  return "?";
}

const char* decay_law_name(DecayLaw d) noexcept {
  switch (d) {
    case DecayLaw::none: return "none";
    case DecayLaw::exponential_gamma: return "exponential_gamma";
    case DecayLaw::power_fast_diffusion: return "power_fast_diffusion";
    case DecayLaw::power_C_star: return "power_C_star";
  }
  return "?";
}

double critical_coeff_general(double m, double p, double b, double beta) {
  const double mp = m * p;
  if (!(b > 0.0)) fail(errc::wrong_regime, "critical coefficient requires b > 0");
  if (nearly_equal(beta, mp))
    fail(errc::wrong_regime, "critical coefficient undefined at beta = m*p");
  const double log_inner = std::log(b) + (1.0 + p) * std::log(std::abs(mp - beta)) -
                           p * std::log(m * (1.0 + p)) - std::log(p) - std::log(m + beta);
  return std::exp(log_inner / (mp - beta));
}

double c_star(const ProblemParams& prm) {
  validate(prm);
  if (!(prm.b > 0.0 && prm.beta > 0.0 && prm.beta < prm.mp()))
    fail(errc::wrong_regime, "C* requires b > 0 and 0 < beta < m*p");
  return critical_coeff_general(prm.m, prm.p, prm.b, prm.beta);
}

double big_d(const ProblemParams& prm) {
  const double m = prm.m, p = prm.p, mp = prm.mp();
  if (!(mp > 0.0 && mp < 1.0)) fail(errc::invalid_regime, "D requires 0 < m*p < 1");
  const double log_inner =
      std::log(p) + p * std::log(m * (1.0 + p)) + std::log(m + 1.0) - p * std::log(1.0 - mp);
  return std::exp(log_inner / (1.0 - mp));
}

double gamma_decay(const ProblemParams& prm) {
  if (!(prm.b > 0.0)) fail(errc::wrong_regime, "exponential decay rate requires b > 0");
  return (1.0 / prm.m) * std::pow(prm.b / prm.p, 1.0 / (1.0 + prm.p));
}

double ell_star(const ProblemParams& prm) {
  validate(prm);
  if (!(prm.b > 0.0 && prm.beta < prm.mp() && prm.alpha > balance_alpha(prm)))
    fail(errc::wrong_regime, "ell* requires b>0, beta<m*p, alpha above the balance value");
  const double ab = prm.alpha * (1.0 - prm.beta);
  return std::pow(prm.coeff, -1.0 / prm.alpha) * std::pow(prm.b * (1.0 - prm.beta), 1.0 / ab);
}

RegimeCase classify(const ProblemParams& prm) {
  validate(prm);
  const double mp = prm.mp();
  RegimeCase rc;

  if (prm.b <= 0.0 || prm.beta > mp + kEqRelTol * std::max(prm.beta, mp)) {
    // b = 0, or b < 0 with beta >= 1, or b > 0 with beta > mp
    rc.case_id = CaseId::V;
    rc.interface_kind = InterfaceKind::infinite_speed;
    rc.decay_law = (prm.b > 0.0 && prm.beta < 1.0) ? DecayLaw::power_C_star
                                                   : DecayLaw::power_fast_diffusion;
    return rc;
  }
  if (nearly_equal(prm.beta, mp)) {
    rc.case_id = CaseId::IV;
    rc.interface_kind = InterfaceKind::infinite_speed;
    rc.decay_law = DecayLaw::exponential_gamma;
    return rc;
  }

  // b > 0, 0 < beta < mp: split on alpha against the balance value.
  const double ab = balance_alpha(prm);
  const double law_exponent = (mp - prm.beta) / ((1.0 + prm.p) * (1.0 - prm.beta));
  if (nearly_equal(prm.alpha, ab)) {
    rc.predicted_exponent = law_exponent;
    const double cs = c_star(prm);
    if (nearly_equal(prm.coeff, cs)) {
      rc.case_id = CaseId::II_stationary;
      rc.interface_kind = InterfaceKind::stationary;
    } else if (prm.coeff > cs) {
      rc.case_id = CaseId::II_super;
      rc.interface_kind = InterfaceKind::expands;
    } else {
      rc.case_id = CaseId::II_sub;
      rc.interface_kind = InterfaceKind::shrinks;
    }
    return rc;
  }
  if (prm.alpha < ab) {
    rc.case_id = CaseId::I;
    rc.interface_kind = InterfaceKind::expands;
    rc.predicted_exponent = law_exponent;
    ConstantsRequest req{prm, 0.1, {}, {}, {}, {}};
    PredictionReport consts = appendix_constants(req);
    rc.predicted_coefficient_bounds = {consts.named_constants.at("zeta_1"),
                                       consts.named_constants.at("zeta_2")};
    return rc;
  }
  rc.case_id = CaseId::III;
  rc.interface_kind = InterfaceKind::shrinks;
  rc.predicted_exponent = 1.0 / (prm.alpha * (1.0 - prm.beta));
  const double ls = ell_star(prm);
  rc.predicted_coefficient_bounds = {-ls, -ls};
  return rc;
}

namespace {

// Objective whose maximizer delta_star feeds the sub-critical upper barrier.
double sub_critical_objective(double delta, double Gamma, double ratio_pow, double p, double e1,
                              double e2) {
  const double dg = delta * Gamma;
  const double bracket = 1.0 - dg - ratio_pow * std::pow(1.0 - dg, -p);
  if (!(dg > 0.0) || !(bracket > 0.0)) return -1.0;
  return std::pow(dg, e1) * std::pow(bracket, e2);
}

}  // namespace

PredictionReport appendix_constants(const ConstantsRequest& req) {
  const ProblemParams& prm = req.params;
  validate(prm);
  if (!(req.epsilon > 0.0 && req.epsilon < 1.0))
    fail(errc::invalid_argument, "epsilon must lie in (0, 1)");
  const double m = prm.m, p = prm.p, b = prm.b, beta = prm.beta, alpha = prm.alpha;
  const double mp = prm.mp();
  const double eps = req.epsilon;
  const CaseId cid = case_id_of(prm);

  PredictionReport rep;
  const double D = big_d(prm);
  rep.add_constant("D", D);

  switch (cid) {
    case CaseId::I: {
      const double cs = c_star(prm);
      rep.add_constant("C_star", cs);
      const double one_b = 1.0 - beta;
      const double denom = (1.0 + p) * one_b;
      const double log_zeta1 = (mp - 1.0) / denom * std::log(b * one_b) +
                               p / (1.0 + p) * std::log(m * (1.0 + p)) +
                               1.0 / (1.0 + p) * std::log(p * (m + beta)) +
                               (p * (m + beta - 1.0) - 1.0) / denom * std::log(mp - beta) +
                               (1.0 - mp) / denom * std::log(1.0 - mp);
      rep.add_constant("zeta_1", std::exp(log_zeta1));
      rep.add_constant("C_1", std::pow(one_b / (1.0 - mp), 1.0 / (mp - beta)) * cs);
      const double ell0 = std::pow((1.0 - mp) / (mp - beta), (mp - 1.0) / one_b) *
                          std::pow(D / cs, (mp - 1.0) * (beta - mp) / denom);
      rep.add_constant("ell_0", ell0);
      rep.add_constant("zeta_2", ell0 * one_b / (mp - beta));
      break;
    }
    case CaseId::II_super:
    case CaseId::II_stationary:
    case CaseId::II_sub: {
      const double cs = c_star(prm);
      rep.add_constant("C_star", cs);
      const double one_b = 1.0 - beta;
      const double Gamma = 1.0 - std::pow(prm.coeff / cs, (mp - beta) / (1.0 + p));
      rep.add_constant("Gamma", Gamma);
      if (cid == CaseId::II_super) {
        if (!req.a1) fail(errc::missing_dependency, "case II with C > C* needs A1 = f1(0)");
        const double a1 = *req.a1;
        rep.add_constant("A_1", a1);
        // C2 is pinned by the vanishing subsolution bracket together with the
        // boundary match C2 zeta3^{(1+p)/(mp-beta)} = A1.
        const double c2 =
            cs * std::pow(1.0 + std::pow(a1, one_b) / (b * one_b), 1.0 / (mp - beta));
        rep.add_constant("C_2", c2);
        rep.add_constant("zeta_3", std::pow(a1 / c2, (mp - beta) / (1.0 + p)));
        rep.add_constant("zeta_4", std::pow(a1 / cs, (mp - beta) / (1.0 + p)));
      }
      if (cid == CaseId::II_sub) {
        if (req.lambda && req.ell1) {
          rep.add_constant("zeta_5",
                           *req.ell1 - std::pow(*req.lambda / cs, (mp - beta) / (1.0 + p)));
        } else if (req.lambda || req.ell1) {
          fail(errc::missing_dependency, "zeta_5 needs both lambda and ell_1");
        }
        const double ratio_pow = std::pow(prm.coeff / cs, mp - beta);
        const double e1 = (1.0 + p - p * (m + beta)) / ((1.0 + p) * one_b);
        const double e2 = (mp - beta) / ((1.0 + p) * one_b);
        auto g = [&](double d) { return sub_critical_objective(d, Gamma, ratio_pow, p, e1, e2); };
        const double delta_star = golden_section_max(g, 1e-9, 1.0 - 1e-9, 1e-10);
        rep.add_constant("delta_star", delta_star);
        const double dg = delta_star * Gamma;
        const double bracket = 1.0 - dg - ratio_pow * std::pow(1.0 - dg, -p);
        const double ell2 = std::pow(prm.coeff, (beta - mp) / (1.0 + p)) *
                            std::pow(b * one_b / dg * bracket, e2);
        rep.add_constant("ell_2", ell2);
        rep.add_constant("zeta_6", dg * ell2);
        rep.add_constant("C_3", prm.coeff * std::pow(1.0 / (1.0 - dg), (1.0 + p) / (mp - beta)));
      }
      break;
    }
    case CaseId::III: {
      rep.add_constant("C_star", c_star(prm));
      rep.add_constant("ell_star", ell_star(prm));
      break;
    }
    case CaseId::IV: {
      rep.add_constant("gamma", gamma_decay(prm));
      break;
    }
    case CaseId::V: {
      const double mu_b = (prm.b < 0.0) ? 1.0 + eps : 1.0;
      rep.add_constant("mu_b", mu_b);
      rep.add_constant("C_5", std::pow(1.0 - eps, 1.0 / (1.0 - mp)) * D);
      const double c6_inner = alpha * std::pow(1.0 - mp, p + 1.0) /
                              (mu_b * (1.0 + p + alpha * (1.0 - mp)) *
                               std::pow(m * (1.0 + p), p) * p * (m + 1.0));
      const double c6 = std::pow(c6_inner, 1.0 / (mp - 1.0));
      rep.add_constant("C_6", c6);
      if (prm.b > 0.0 && mp < prm.beta && prm.beta < 1.0) {
        const double csg = critical_coeff_general(m, p, b, beta);
        rep.add_constant("C_star", csg);
        const double inner = b * (1.0 - beta) * std::pow(csg, beta - 1.0) *
                             std::pow(1.0 - eps, mp - 1.0) *
                             (1.0 - std::pow(1.0 - eps, beta - mp));
        rep.add_constant("zeta_8",
                         std::pow(inner, (mp - beta) / ((1.0 + p) * (1.0 - beta))));
      }
      if (req.a0) {
        const double a0 = *req.a0;
        rep.add_constant("A_0", a0);
        if (a0 > eps) {  // the lower barrier matches (A0 - eps) t^sigma at x = 0
          const bool narrow_branch =
              prm.b > 0.0 && prm.beta >= 1.0 && prm.beta < (p * (1.0 - m) + 2.0) / (1.0 + p);
          double xi1 = std::pow(a0 - eps, (mp - 1.0) / (1.0 + p)) *
                       std::pow(D, (1.0 - mp) / (1.0 + p));
          if (narrow_branch) xi1 *= std::pow(1.0 - eps, 1.0 / (1.0 + p));
          rep.add_constant("xi_1", xi1);
        }
        rep.add_constant("xi_2", std::pow((a0 + eps) / c6, (mp - 1.0) / (1.0 + p)));
        const double xi3 = std::pow(a0 / D, (mp - 1.0) / (1.0 + p));
        rep.add_constant("xi_3", xi3);
        const double k = 1.0 + (1.0 + p) / (alpha * (1.0 - mp));
        rep.add_constant("xi_4", xi3 * std::pow(k, 1.0 / (1.0 + p)));
        rep.add_constant("C_7", D * std::pow(k, 1.0 / (1.0 - mp)));
        rep.add_constant("mu", std::pow((a0 + eps) / (D * std::pow(1.0 - eps, 1.0 / (mp - 1.0))),
                                        (mp - 1.0) / (1.0 + p)));
      }
      break;
    }
  }
  return rep;
}

double case1_bracket_residual(const ProblemParams& prm) {
  const double m = prm.m, p = prm.p, b = prm.b, beta = prm.beta, mp = prm.mp();
  ConstantsRequest req{prm, 0.1, {}, {}, {}, {}};
  PredictionReport c = appendix_constants(req);
  if (!c.named_constants.count("zeta_1"))
    fail(errc::wrong_regime, "case-I bracket needs expanding-case constants");
  const double c1 = c.named_constants.at("C_1");
  const double cs = c.named_constants.at("C_star");
  const double zeta1 = c.named_constants.at("zeta_1");
  (void)m;
  const double term2 = std::exp((mp - beta) * (std::log(c1) - std::log(cs)));
  const double log_term3 = (1.0 - beta) * std::log(c1) - std::log(b * (1.0 - beta)) +
                           (1.0 + p) * (1.0 - beta) / (mp - beta) * std::log(zeta1);
  return 1.0 - term2 + std::exp(log_term3);
}

double case1_matching_residual(const ProblemParams& prm) {
  ConstantsRequest req{prm, 0.1, {}, {}, {}, {}};
  PredictionReport c = appendix_constants(req);
  const double D = c.named_constants.at("D");
  const double cs = c.named_constants.at("C_star");
  const double ell0 = c.named_constants.at("ell_0");
  const double zeta2 = c.named_constants.at("zeta_2");
  const double mp = prm.mp();
  const double lhs = D * std::pow(ell0, (1.0 + prm.p) / (mp - 1.0));
  const double rhs = cs * std::pow(zeta2 - ell0, (1.0 + prm.p) / (mp - prm.beta));
  return (lhs - rhs) / lhs;
}

namespace {

// R(0) from the power-tail barrier family f = C0 (xi0 + xi)^{(1+p)/(mp-1)}.
double tail_r_at_zero(const ProblemParams& prm, double c0) {
  const double m = prm.m, p = prm.p, alpha = prm.alpha, mp = prm.mp();
  const double coeff = (1.0 + p + alpha * (1.0 - mp)) * std::pow(m * (1.0 + p), p) * p *
                       (m + 1.0) / std::pow(1.0 - mp, p + 1.0);
  return alpha - coeff * std::pow(c0, mp - 1.0);
}

}  // namespace

double tail_upper_r_residual(const ProblemParams& prm) {
  const double mp = prm.mp();
  const double D = big_d(prm);
  const double k = 1.0 + (1.0 + prm.p) / (prm.alpha * (1.0 - mp));
  const double c7 = D * std::pow(k, 1.0 / (1.0 - mp));
  return tail_r_at_zero(prm, c7) / prm.alpha;
}

double tail_lower_r_residual(const ProblemParams& prm, double epsilon) {
  const double mp = prm.mp();
  const double D = big_d(prm);
  const double c5 = std::pow(1.0 - epsilon, 1.0 / (1.0 - mp)) * D;
  const double edge = prm.alpha + (1.0 + prm.p) / (1.0 - mp);
  const double lhs = tail_r_at_zero(prm, c5) + (1.0 + prm.p) / (1.0 - mp);
  const double rhs = epsilon / (epsilon - 1.0) * edge;
  return (lhs - rhs) / edge;
}

double tail_lower_matching_residual(const ProblemParams& prm, double epsilon, double a0) {
  const double mp = prm.mp(), p = prm.p;
  const double D = big_d(prm);
  const double c5 = std::pow(1.0 - epsilon, 1.0 / (1.0 - mp)) * D;
  const double xi1 = std::pow(a0 - epsilon, (mp - 1.0) / (1.0 + p)) *
                     std::pow(1.0 - epsilon, 1.0 / (1.0 + p)) *
                     std::pow(D, (1.0 - mp) / (1.0 + p));
  const double lhs = c5 * std::pow(xi1, (1.0 + p) / (mp - 1.0));
  return (lhs - (a0 - epsilon)) / (a0 - epsilon);
}

double tail_upper_matching_residual(const ProblemParams& prm, double a0) {
  const double mp = prm.mp(), p = prm.p;
  const double D = big_d(prm);
  const double k = 1.0 + (1.0 + p) / (prm.alpha * (1.0 - mp));
  const double c7 = D * std::pow(k, 1.0 / (1.0 - mp));
  const double xi4 = std::pow(a0 / D, (mp - 1.0) / (1.0 + p)) * std::pow(k, 1.0 / (1.0 + p));
  const double lhs = c7 * std::pow(xi4, (1.0 + p) / (mp - 1.0));
  return (lhs - a0) / a0;
}

double case2_bracket_residual(const ProblemParams& prm, double a1) {
  const double b = prm.b, beta = prm.beta, mp = prm.mp();
  const double cs = critical_coeff_general(prm.m, prm.p, b, beta);
  const double c2 =
      cs * std::pow(1.0 + std::pow(a1, 1.0 - beta) / (b * (1.0 - beta)), 1.0 / (mp - beta));
  return 1.0 - std::pow(c2 / cs, mp - beta) + std::pow(a1, 1.0 - beta) / (b * (1.0 - beta));
}

}  // namespace degenpde
