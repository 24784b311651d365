#include "degenpde/params.hpp"

#include <cmath>
#include <sstream>

namespace degenpde {

const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::none: return "none";
    case errc::non_positive_parameter: return "NonPositiveParameter";
    case errc::invalid_regime: return "InvalidRegime";
    case errc::excluded_case: return "ExcludedCase";
    case errc::wrong_regime: return "WrongRegime";
    case errc::out_of_range: return "OutOfRange";
    case errc::domain_error: return "DomainError";
    case errc::missing_dependency: return "MissingDependency";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::shooting_diverged: return "ShootingDiverged";
    case errc::front_not_bracketed: return "FrontNotBracketed";
    case errc::grid_too_coarse: return "GridTooCoarse";
    case errc::stability_failure: return "StabilityFailure";
    case errc::non_finite_value: return "NonFiniteValue";
    case errc::interface_left_domain: return "InterfaceLeftDomain";
    case errc::insufficient_data: return "InsufficientData";
    case errc::insufficient_range: return "InsufficientRange";
    case errc::shape_missing: return "ShapeMissing";
    case errc::unknown_barrier: return "UnknownBarrier";
    case errc::missing_constant: return "MissingConstant";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "unknown";
}

const ProblemParams& validate(const ProblemParams& prm) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "parameter " << name << " must be a positive finite number, got " << v;
      fail(errc::non_positive_parameter, os.str());
    }
  };
  positive(prm.m, "m");
  positive(prm.p, "p");
  positive(prm.beta, "beta");
  positive(prm.alpha, "alpha");
  positive(prm.coeff, "C");
  if (!std::isfinite(prm.b)) fail(errc::non_positive_parameter, "parameter b must be finite");

  const double mp = prm.m * prm.p;
  if (!(mp > 0.0 && mp < 1.0)) {
    std::ostringstream os;
    os << "fast-diffusion condition 0 < m*p < 1 violated: m*p = " << mp;
    fail(errc::invalid_regime, os.str());
  }
  if (prm.b < 0.0 && prm.beta < 1.0) {
    fail(errc::excluded_case,
         "excluded case: b < 0 with 0 < beta < 1 (uniqueness and comparison fail)");
  }
  return prm;
}

bool is_valid(const ProblemParams& prm) noexcept {
  try {
    validate(prm);
    return true;
  } catch (const error&) {
    return false;
  }
}

}  // namespace degenpde
