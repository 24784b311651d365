#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "degenpde/errors.hpp"

namespace degenpde {

enum class ShapeKind {
  f_selfsim,       // b = 0 scaling profile f(xi)
  f1_balance,      // balance-case profile f1(zeta)
  phi_stationary,  // stationary profile phi(x), phi(0) = 1
};

/// Tabulated profile on a strictly increasing abscissa with monotone
/// piecewise-cubic interpolation (Fritsch-Butland slopes, no overshoot below
/// zero on monotone data).  Queries outside the tabulated range throw
/// out_of_range instead of extrapolating.
class ShapeFunction {
 public:
  ShapeFunction() = default;
  ShapeFunction(std::vector<double> abscissa, std::vector<double> values, ShapeKind kind);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;

  const std::vector<double>& abscissa() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  ShapeKind kind() const { return kind_; }
  std::size_t size() const { return x_.size(); }

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

  /// A0 = f(0), A1 = f1(0) or phi(0); requires 0 inside the tabulated range.
  double value_at_zero() const { return eval(0.0); }

  /// Support edge for compactly supported profiles (f1 with a front).
  std::optional<double> front() const { return front_; }
  void set_front(double z) { front_ = z; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;  // node slopes for the monotone cubic
  ShapeKind kind_ = ShapeKind::f_selfsim;
  std::optional<double> front_;
};

}  // namespace degenpde
