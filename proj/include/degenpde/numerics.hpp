#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "degenpde/errors.hpp"

namespace degenpde {

/// Adaptive Gauss-Kronrod (7,15) quadrature on [a, b].
/// Splits panels until the Kronrod error estimate meets
/// abs_tol + rel_tol * |integral|.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double rel_tol = 1e-12, double abs_tol = 0.0, int max_depth = 60);

/// Root of a continuous monotone-ish f on [lo, hi] with f(lo), f(hi) of
/// opposite sign; bisection to the requested relative width.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol = 1e-12, int max_iter = 200);

/// Argmax of a unimodal f on (a, b) by golden-section search.
double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Embedded Cash-Karp RK4(5) step control for a 2-component state.
/// Integrates y' = rhs(x, y) from x0 to x1, invoking observe(x, y) after
/// every accepted step (including the initial state), and stopping early if
/// stop(x, y) returns true.
struct Rk45Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  std::size_t max_steps = 20'000'000;
};

using State2 = std::array<double, 2>;

/// Returns the final (x, y).  Throws convergence_failure when the step size
/// underflows and non_finite_value when the state stops being finite.
std::pair<double, State2> integrate_rk45(
    const std::function<State2(double, const State2&)>& rhs, double x0, const State2& y0,
    double x1, const Rk45Options& opt,
    const std::function<void(double, const State2&)>& observe = nullptr,
    const std::function<bool(double, const State2&)>& stop = nullptr);

}  // namespace degenpde
