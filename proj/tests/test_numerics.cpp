#include <doctest.h>

#include <cmath>

#include "degenpde/numerics.hpp"

using namespace degenpde;

TEST_CASE("gauss-kronrod quadrature on known integrals") {
  const double i1 = integrate_gk([](double x) { return std::exp(-x); }, 0.0, 10.0, 1e-13);
  CHECK(i1 == doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-12));
  const double i2 = integrate_gk([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0, 1e-12);
  CHECK(i2 == doctest::Approx(2.0 - 2e-6).epsilon(1e-9));
}

TEST_CASE("bisection inverts monotone functions") {
  const double r = bisect([](double x) { return x * x * x - 2.0; }, 0.0, 2.0, 1e-14);
  CHECK(r == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
}

TEST_CASE("golden-section finds the maximum of a unimodal function") {
  const double x = golden_section_max([](double t) { return t * std::exp(-3.0 * t); }, 1e-9,
                                      1.0 - 1e-9, 1e-12);
  CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("rk45 integrates a stiffish decay accurately") {
  // y0' = -y0, y1' = y0; exact: y0 = e^{-x}, y1 = 1 - e^{-x}
  Rk45Options opt;
  opt.rel_tol = 1e-11;
  auto [x, y] = integrate_rk45(
      [](double, const State2& s) {
        return State2{-s[0], s[0]};
      },
      0.0, State2{1.0, 0.0}, 5.0, opt);
  CHECK(x == doctest::Approx(5.0));
  CHECK(y[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-9));
  CHECK(y[1] == doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-9));
}

TEST_CASE("line fit recovers exact affine data") {
  std::vector<double> xs, ys;
  for (int i = 0; i < 12; ++i) {
    xs.push_back(0.3 * i);
    ys.push_back(2.5 * 0.3 * i - 0.75);
  }
  const LineFit fit = fit_line(xs, ys);
  CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(fit.intercept == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(fit.rms_residual < 1e-13);
}
