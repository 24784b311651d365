#include <doctest.h>

#include <cmath>
#include <random>

#include "degenpde/regimes.hpp"

using namespace degenpde;

namespace {

// Independent extended-precision oracles: direct powl transliterations of the
// closed forms, off the implementation's log-space path.
long double oracle_c_star(long double m, long double p, long double b, long double beta) {
  const long double mp = m * p;
  return powl(b * powl(mp - beta, 1.0L + p) / (powl(m * (1.0L + p), p) * p * (m + beta)),
              1.0L / (mp - beta));
}

long double oracle_big_d(long double m, long double p) {
  const long double mp = m * p;
  return powl(p * powl(m * (1.0L + p), p) * (m + 1.0L) / powl(1.0L - mp, p), 1.0L / (1.0L - mp));
}

long double oracle_ell_star(long double m, long double p, long double b, long double beta,
                            long double alpha, long double C) {
  (void)m;
  (void)p;
  return powl(C, -1.0L / alpha) * powl(b * (1.0L - beta), 1.0L / (alpha * (1.0L - beta)));
}

long double oracle_zeta1(long double m, long double p, long double b, long double beta) {
  const long double mp = m * p;
  const long double denom = (1.0L + p) * (1.0L - beta);
  return powl(b * (1.0L - beta), (mp - 1.0L) / denom) * powl(m * (1.0L + p), p / (1.0L + p)) *
         powl(p * (m + beta), 1.0L / (1.0L + p)) *
         powl(mp - beta, (p * (m + beta - 1.0L) - 1.0L) / denom) *
         powl(1.0L - mp, (1.0L - mp) / denom);
}

ProblemParams benchmark() { return ProblemParams{0.5, 1.0, 1.0, 0.25, 1.0, 1.0}; }

std::mt19937_64 rng_for(const char* tag) {
  std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
  return std::mt19937_64(seq);
}

ProblemParams random_case1(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  ProblemParams prm;
  prm.m = 0.2 + 2.0 * U(rng);
  const double mp = 0.08 + 0.84 * U(rng);
  prm.p = mp / prm.m;
  prm.beta = mp * (0.08 + 0.82 * U(rng));
  prm.alpha = (0.1 + 0.8 * U(rng)) * (1.0 + prm.p) / (mp - prm.beta);
  prm.b = 0.1 + 4.0 * U(rng);
  prm.coeff = 0.2 + 4.0 * U(rng);
  return prm;
}

}  // namespace

TEST_CASE("closed-form constants match the extended-precision oracles") {
  ProblemParams prm = benchmark();
  // C* at the reference point is (1/12)^4
  CHECK(c_star(prm) == doctest::Approx(4.822530864197530864e-5).epsilon(1e-13));
  CHECK(c_star(prm) ==
        doctest::Approx(static_cast<double>(oracle_c_star(0.5L, 1.0L, 1.0L, 0.25L)))
            .epsilon(1e-14));

  CHECK(big_d(prm) == doctest::Approx(9.0).epsilon(1e-14));
  ProblemParams prm2 = prm;
  prm2.m = 0.25;
  prm2.p = 2.0;  // mp = 0.5
  // oracle value: [2 (0.75)^2 (1.25) / (0.5)^2]^2 = 5.625^2
  CHECK(big_d(prm2) == doctest::Approx(31.640625).epsilon(1e-13));
  CHECK(big_d(prm2) ==
        doctest::Approx(static_cast<double>(oracle_big_d(0.25L, 2.0L))).epsilon(1e-14));

  CHECK(gamma_decay(prm) == doctest::Approx(2.0).epsilon(1e-14));
  ProblemParams prm4 = prm;
  prm4.b = 4.0;
  CHECK(gamma_decay(prm4) == doctest::Approx(4.0).epsilon(1e-14));
  prm4.b = 0.0;
  CHECK_THROWS_AS(gamma_decay(prm4), error);

  ProblemParams prm3 = prm;
  prm3.alpha = 12.0;
  const double ls = ell_star(prm3);
  CHECK(ls == doctest::Approx(static_cast<double>(
                                  oracle_ell_star(0.5L, 1.0L, 1.0L, 0.25L, 12.0L, 1.0L)))
                  .epsilon(1e-14));
  CHECK(ls == doctest::Approx(0.96854084).epsilon(1e-7));  // 0.75^{1/9}
  prm3.coeff = 2.0;
  CHECK(ell_star(prm3) == doctest::Approx(static_cast<double>(oracle_ell_star(
                                              0.5L, 1.0L, 1.0L, 0.25L, 12.0L, 2.0L)))
                              .epsilon(1e-14));
  // ell* decreases in C
  CHECK(ell_star(prm3) < ls);
}

TEST_CASE("c_star guards and monotonicity") {
  ProblemParams prm = benchmark();
  prm.beta = prm.m * prm.p;  // beta -> mp limit
  CHECK_THROWS_AS(c_star(prm), error);
  ProblemParams lo = benchmark(), hi = benchmark();
  hi.b = 2.0;
  CHECK(c_star(hi) > c_star(lo));
  ProblemParams dlo = benchmark(), dhi = benchmark();
  dhi.m = 0.6;
  CHECK(big_d(dhi) > big_d(dlo));
}

TEST_CASE("the expanding-case front constant satisfies its defining bracket") {
  // one-time extended-precision cross-check of the zeta_1 table entry against
  // the relation  1 - (C1/C*)^{mp-b} + C1^{1-b}/(b(1-b)) zeta1^{(1+p)(1-b)/(mp-b)} = 0
  const long double m = 0.5L, p = 1.0L, b = 1.0L, beta = 0.25L;
  const long double mp = m * p;
  const long double cs = oracle_c_star(m, p, b, beta);
  const long double c1 = powl((1.0L - beta) / (1.0L - mp), 1.0L / (mp - beta)) * cs;
  const long double z1 = oracle_zeta1(m, p, b, beta);
  const long double bracket = 1.0L - powl(c1 / cs, mp - beta) +
                              powl(c1, 1.0L - beta) / (b * (1.0L - beta)) *
                                  powl(z1, (1.0L + p) * (1.0L - beta) / (mp - beta));
  CHECK(std::abs(static_cast<double>(bracket)) < 1e-15);

  // the reference value collapses to 192^{1/6}
  CHECK(static_cast<double>(z1) == doctest::Approx(std::pow(192.0, 1.0 / 6.0)).epsilon(1e-14));

  ConstantsRequest req{benchmark(), 0.1, {}, {}, {}, {}};
  PredictionReport c = appendix_constants(req);
  CHECK(c.named_constants.at("zeta_1") ==
        doctest::Approx(static_cast<double>(z1)).epsilon(1e-13));
  CHECK(std::abs(case1_bracket_residual(benchmark())) < 1e-12);
  CHECK(std::abs(case1_matching_residual(benchmark())) < 1e-12);
}

TEST_CASE("classification matches the hypothesis predicates and is exhaustive") {
  auto rng = rng_for("partition");
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int counts[7] = {0, 0, 0, 0, 0, 0, 0};
  for (int trial = 0; trial < 4000; ++trial) {
    ProblemParams prm;
    prm.m = 0.15 + 2.5 * U(rng);
    const double mp = 0.02 + 0.96 * U(rng);
    prm.p = mp / prm.m;
    prm.b = (trial % 5 == 0) ? 0.0 : ((trial % 7 == 0) ? -(0.1 + 2.0 * U(rng)) : 0.1 + 3.0 * U(rng));
    prm.beta = (prm.b < 0.0) ? 1.0 + 2.0 * U(rng) : 0.02 + 2.0 * U(rng);
    prm.alpha = 0.05 + 6.0 * U(rng);
    prm.coeff = 0.1 + 4.0 * U(rng);
    if (!is_valid(prm)) continue;
    const RegimeCase rc = classify(prm);
    ++counts[static_cast<int>(rc.case_id)];

    // independent predicates, straight from the hypotheses
    const bool h1 = prm.b > 0.0 && prm.beta < mp &&
                    prm.alpha < (1.0 + prm.p) / (mp - prm.beta);
    const bool h3 = prm.b > 0.0 && prm.beta < mp &&
                    prm.alpha > (1.0 + prm.p) / (mp - prm.beta);
    const bool h4 = prm.b > 0.0 && prm.beta == mp;
    const bool h5 = prm.b == 0.0 || (prm.b < 0.0 && prm.beta >= 1.0) ||
                    (prm.b > 0.0 && prm.beta > mp);
    const bool h2 = prm.b > 0.0 && prm.beta < mp && !h1 && !h3;
    CHECK(int(h1) + int(h2) + int(h3) + int(h4) + int(h5) == 1);
    switch (rc.case_id) {
      case CaseId::I: CHECK(h1); break;
      case CaseId::II_super:
      case CaseId::II_stationary:
      case CaseId::II_sub: CHECK(h2); break;
      case CaseId::III: CHECK(h3); break;
      case CaseId::IV: CHECK(h4); break;
      case CaseId::V: CHECK(h5); break;
    }
    if (rc.case_id == CaseId::I) {
      CHECK(*rc.predicted_exponent > 0.0);
      CHECK(*rc.predicted_exponent < 1.0);
    }
  }
  CHECK(counts[0] > 100);                // I
  CHECK(counts[4] > 100);                // III
  CHECK(counts[6] > 100);                // V
}

TEST_CASE("criticality split around C*") {
  ProblemParams prm = benchmark();
  prm.alpha = (1.0 + prm.p) / (prm.mp() - prm.beta);  // balance line
  const double cs = c_star(prm);
  prm.coeff = cs;
  CHECK(classify(prm).case_id == CaseId::II_stationary);
  CHECK(classify(prm).interface_kind == InterfaceKind::stationary);
  prm.coeff = 1.5 * cs;
  CHECK(classify(prm).case_id == CaseId::II_super);
  CHECK(classify(prm).interface_kind == InterfaceKind::expands);
  prm.coeff = 0.5 * cs;
  CHECK(classify(prm).case_id == CaseId::II_sub);
  CHECK(classify(prm).interface_kind == InterfaceKind::shrinks);
}

TEST_CASE("spec'd classification examples") {
  ProblemParams prm = benchmark();
  RegimeCase rc = classify(prm);
  CHECK(rc.case_id == CaseId::I);
  CHECK(*rc.predicted_exponent == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  ProblemParams p4{0.5, 1.0, 1.0, 0.5, 3.0, 1.0};  // beta = mp
  rc = classify(p4);
  CHECK(rc.case_id == CaseId::IV);
  CHECK(rc.decay_law == DecayLaw::exponential_gamma);

  ProblemParams p5{0.5, 1.0, 0.0, 1.0, 2.0, 1.0};  // b = 0
  rc = classify(p5);
  CHECK(rc.case_id == CaseId::V);
  CHECK(rc.decay_law == DecayLaw::power_fast_diffusion);

  ProblemParams p5b{0.5, 1.0, 1.0, 0.75, 1.0, 1.0};  // b>0, mp < beta < 1
  rc = classify(p5b);
  CHECK(rc.case_id == CaseId::V);
  CHECK(rc.decay_law == DecayLaw::power_C_star);
}

TEST_CASE("case-I sandwich constants are ordered and case-V tails are consistent") {
  auto rng = rng_for("ordering");
  for (int trial = 0; trial < 400; ++trial) {
    const ProblemParams prm = random_case1(rng);
    ConstantsRequest req{prm, 0.1, {}, {}, {}, {}};
    PredictionReport c = appendix_constants(req);
    CHECK(c.named_constants.at("zeta_1") <= c.named_constants.at("zeta_2") * (1.0 + 1e-12));

    // tail constants with a synthetic A0
    std::uniform_real_distribution<double> U(0.1, 4.0);
    const double eps = 0.05 + 0.5 * std::generate_canonical<double, 53>(rng);
    const double a0 = eps + U(rng);
    ProblemParams tail = prm;
    tail.b = 0.0;
    tail.beta = 1.0;
    ConstantsRequest vq{tail, eps, a0, {}, {}, {}};
    PredictionReport v = appendix_constants(vq);
    const double D = v.named_constants.at("D");
    CHECK(v.named_constants.at("xi_1") > 0.0);
    CHECK(v.named_constants.at("xi_2") > 0.0);
    CHECK(v.named_constants.at("C_5") < D);
    CHECK(D < v.named_constants.at("C_6"));
    CHECK(v.named_constants.at("C_5") ==
          doctest::Approx(std::pow(1.0 - eps, 1.0 / (1.0 - tail.mp())) * D).epsilon(1e-12));
  }
}

TEST_CASE("identity residuals vanish across the expanding-regime sample") {
  auto rng = rng_for("identities");
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const ProblemParams prm = random_case1(rng);
    const double eps = 0.05 + 0.5 * U(rng);
    const double a0 = 0.1 + 4.0 * U(rng);
    CHECK(std::abs(case1_bracket_residual(prm)) < 1e-10);
    CHECK(std::abs(case1_matching_residual(prm)) < 1e-10);
    CHECK(std::abs(tail_upper_r_residual(prm)) < 1e-10);
    CHECK(std::abs(tail_lower_r_residual(prm, eps)) < 1e-10);
    CHECK(std::abs(tail_lower_matching_residual(prm, eps, a0 + eps)) < 1e-10);
    CHECK(std::abs(tail_upper_matching_residual(prm, a0)) < 1e-10);
    CHECK(std::abs(case2_bracket_residual(prm, a0)) < 1e-10);
  }
}

TEST_CASE("delta_star maximization agrees with a brute-force scan") {
  // sub-critical balance point with C/C* = 0.5
  ProblemParams prm = benchmark();
  prm.alpha = (1.0 + prm.p) / (prm.mp() - prm.beta);
  const double cs = c_star(prm);
  prm.coeff = 0.5 * cs;

  ConstantsRequest req{prm, 0.1, {}, {}, {}, {}};
  PredictionReport c = appendix_constants(req);
  const double delta_star = c.named_constants.at("delta_star");

  // independent objective, scanned on 10^6 points
  const double mp = prm.mp(), p = prm.p, m = prm.m, beta = prm.beta;
  const double Gamma = 1.0 - std::pow(prm.coeff / cs, (mp - beta) / (1.0 + p));
  const double ratio_pow = std::pow(prm.coeff / cs, mp - beta);
  const double e1 = (1.0 + p - p * (m + beta)) / ((1.0 + p) * (1.0 - beta));
  const double e2 = (mp - beta) / ((1.0 + p) * (1.0 - beta));
  auto g = [&](double d) {
    const double dg = d * Gamma;
    const double bracket = 1.0 - dg - ratio_pow * std::pow(1.0 - dg, -p);
    if (!(dg > 0.0) || !(bracket > 0.0)) return -1.0;
    return std::pow(dg, e1) * std::pow(bracket, e2);
  };
  double best = -1.0, best_d = 0.0;
  const int N = 1000000;
  for (int i = 1; i < N; ++i) {
    const double d = static_cast<double>(i) / N;
    const double v = g(d);
    if (v > best) {
      best = v;
      best_d = d;
    }
  }
  CHECK(std::abs(delta_star - best_d) < 2e-6);
  CHECK(g(delta_star) >= best - 1e-12);
  CHECK(c.named_constants.at("Gamma") == doctest::Approx(Gamma).epsilon(1e-14));
  CHECK(c.named_constants.at("zeta_6") ==
        doctest::Approx(delta_star * Gamma * c.named_constants.at("ell_2")).epsilon(1e-13));
}

TEST_CASE("appendix constants: dependency rules and ratio identity") {
  ProblemParams prm = benchmark();
  prm.alpha = (1.0 + prm.p) / (prm.mp() - prm.beta);
  const double cs = c_star(prm);
  prm.coeff = 1.5 * cs;

  ConstantsRequest missing{prm, 0.1, {}, {}, {}, {}};
  CHECK_THROWS_AS(appendix_constants(missing), error);

  // zeta_4 with A1 = C* collapses to 1
  ConstantsRequest req{prm, 0.1, {}, cs, {}, {}};
  PredictionReport c = appendix_constants(req);
  CHECK(c.named_constants.at("zeta_4") == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(c.named_constants.count("zeta_5") == 0);

  // epsilon domain guard
  ConstantsRequest bad{prm, 1.5, {}, cs, {}, {}};
  CHECK_THROWS_AS(appendix_constants(bad), error);
}
