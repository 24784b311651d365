#include "degenpde/shape_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace degenpde {

namespace {

// Fritsch-Butland monotone slopes: weighted harmonic mean of adjacent
// secants, zero wherever the data has a local extremum.  Keeps the cubic
// inside the hull of the data, so nonnegative data never dips below zero.
std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n - 1), s(n);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  if (n == 2) {
    s[0] = s[1] = d[0];
    return s;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) {
      s[i] = 0.0;
    } else {
      const double h0 = x[i] - x[i - 1];
      const double h1 = x[i + 1] - x[i];
      s[i] = 3.0 * (h0 + h1) / ((2.0 * h1 + h0) / d[i - 1] + (h1 + 2.0 * h0) / d[i]);
    }
  }
  // one-sided ends, clipped against the first secant to preserve monotonicity
  auto end_slope = [](double d0, double d1, double h0, double h1) {
    double s0 = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s0 * d0 <= 0.0) return 0.0;
    if (std::abs(s0) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return s0;
  };
  s[0] = end_slope(d[0], d[1], x[1] - x[0], x[2] - x[1]);
  s[n - 1] = end_slope(d[n - 2], d[n - 3], x[n - 1] - x[n - 2], x[n - 2] - x[n - 3]);
  return s;
}

}  // namespace

ShapeFunction::ShapeFunction(std::vector<double> abscissa, std::vector<double> values,
                             ShapeKind kind)
    : x_(std::move(abscissa)), y_(std::move(values)), kind_(kind) {
  if (x_.size() < 2 || x_.size() != y_.size())
    fail(errc::invalid_argument, "ShapeFunction needs at least two matching nodes");
  for (std::size_t i = 0; i + 1 < x_.size(); ++i)
    if (!(x_[i] < x_[i + 1]))
      fail(errc::invalid_argument, "ShapeFunction abscissa must be strictly increasing");
  for (double v : y_)
    if (!(v >= 0.0) || !std::isfinite(v))
      fail(errc::invalid_argument, "ShapeFunction values must be finite and nonnegative");
  slope_ = monotone_slopes(x_, y_);
}

double ShapeFunction::eval(double x) const {
  // absorb rounding at the tabulated ends
  const double slack = 1e-12 * (x_.back() - x_.front());
  if (x > x_.back() && x <= x_.back() + slack) x = x_.back();
  if (x < x_.front() && x >= x_.front() - slack) x = x_.front();
  if (!(x >= x_.front() && x <= x_.back())) {
    std::ostringstream os;
    os << "interpolation query x = " << x << " outside tabulated range [" << x_.front() << ", "
       << x_.back() << "]";
    fail(errc::out_of_range, os.str());
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  if (i + 1 >= x_.size()) i = x_.size() - 2;
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  const double h10 = t * (1.0 - t) * (1.0 - t);
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

}  // namespace degenpde
