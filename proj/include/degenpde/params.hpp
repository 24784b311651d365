#pragma once

#include "degenpde/errors.hpp"

namespace degenpde {

/// Problem data for  u_t = (|(u^m)_x|^{p-1} (u^m)_x)_x - b u^beta  with
/// initial data behaving like coeff * (-x)_+^alpha near the support edge.
///
/// Admissible range: 0 < m*p < 1 (fast diffusion), m, p, beta, alpha,
/// coeff > 0, and either b >= 0 or (b < 0 and beta >= 1).  The pair
/// b < 0, 0 < beta < 1 is rejected: comparison theorems do not hold there.
struct ProblemParams {
  double m = 0.5;
  double p = 1.0;
  double b = 1.0;
  double beta = 0.25;
  double alpha = 1.0;
  double coeff = 1.0;  // C in u0 ~ C(-x)_+^alpha

  double mp() const { return m * p; }
};

/// Returns prm unchanged if every invariant holds; throws otherwise.
/// Idempotent: validate(validate(x)) == validate(x).
const ProblemParams& validate(const ProblemParams& prm);

bool is_valid(const ProblemParams& prm) noexcept;

}  // namespace degenpde
