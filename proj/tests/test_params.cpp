#include <doctest.h>

#include "degenpde/params.hpp"

using namespace degenpde;

TEST_CASE("validate accepts the reference point") {
  ProblemParams prm{0.5, 1.0, 1.0, 0.25, 1.0, 1.0};
  CHECK_NOTHROW(validate(prm));
  // idempotent on accepted input
  const ProblemParams& once = validate(prm);
  const ProblemParams& twice = validate(once);
  CHECK(&once == &twice);
}

TEST_CASE("validate rejects mp outside the fast-diffusion range") {
  ProblemParams prm{1.0, 1.0, 1.0, 0.25, 1.0, 1.0};  // mp = 1
  CHECK_THROWS_AS(validate(prm), error);
  try {
    validate(prm);
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid_regime);
  }
  prm.m = 2.0;  // mp = 2
  CHECK_THROWS_AS(validate(prm), error);
}

TEST_CASE("validate rejects b < 0 with beta < 1") {
  ProblemParams prm{0.5, 1.0, -1.0, 0.5, 1.0, 1.0};
  try {
    validate(prm);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::excluded_case);
  }
  prm.beta = 1.0;  // admissible again
  CHECK_NOTHROW(validate(prm));
}

TEST_CASE("validate rejects nonpositive shape parameters") {
  ProblemParams prm{0.5, 1.0, 1.0, 0.25, 1.0, 1.0};
  auto expect_nonpositive = [](ProblemParams q) {
    try {
      validate(q);
      return false;
    } catch (const error& e) {
      return e.code() == errc::non_positive_parameter;
    }
  };
  ProblemParams q = prm;
  q.m = 0.0;
  CHECK(expect_nonpositive(q));
  q = prm;
  q.beta = -0.25;
  CHECK(expect_nonpositive(q));
  q = prm;
  q.alpha = 0.0;
  CHECK(expect_nonpositive(q));
  q = prm;
  q.coeff = -1.0;
  CHECK(expect_nonpositive(q));
}
