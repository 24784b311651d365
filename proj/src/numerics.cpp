#include "degenpde/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace degenpde {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
  double integral;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b, double rel_tol,
                    double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  struct Item {
    double a, b;
    PanelResult r;
    int depth;
  };
  std::vector<Item> stack;
  stack.push_back({a, b, gk15(f, a, b), 0});
  double total = stack.back().r.integral;
  double result = 0.0;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const double tol =
        std::max(abs_tol, rel_tol * std::abs(total)) * std::abs(it.b - it.a) / std::abs(b - a);
    if (it.r.error <= tol || it.depth >= max_depth) {
      result += it.r.integral;
      continue;
    }
    const double mid = 0.5 * (it.a + it.b);
    Item left{it.a, mid, gk15(f, it.a, mid), it.depth + 1};
    Item right{mid, it.b, gk15(f, mid, it.b), it.depth + 1};
    total += left.r.integral + right.r.integral - it.r.integral;
    stack.push_back(left);
    stack.push_back(right);
  }
  return result;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
              int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    fail(errc::convergence_failure, "bisect: endpoints do not bracket a root");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm * flo < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
  }
  (void)fhi;
  return 0.5 * (lo + hi);
}

double golden_section_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(errc::insufficient_data, "fit_line: need at least two matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) fail(errc::insufficient_data, "fit_line: degenerate abscissa");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

std::pair<double, State2> integrate_rk45(
    const std::function<State2(double, const State2&)>& rhs, double x0, const State2& y0,
    double x1, const Rk45Options& opt, const std::function<void(double, const State2&)>& observe,
    const std::function<bool(double, const State2&)>& stop) {
  // Cash-Karp tableau
  static constexpr double b21 = 1.0 / 5.0;
  static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
  static constexpr double b41 = 3.0 / 10.0, b42 = -9.0 / 10.0, b43 = 6.0 / 5.0;
  static constexpr double b51 = -11.0 / 54.0, b52 = 5.0 / 2.0, b53 = -70.0 / 27.0,
                          b54 = 35.0 / 27.0;
  static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0, b63 = 575.0 / 13824.0,
                          b64 = 44275.0 / 110592.0, b65 = 253.0 / 4096.0;
  static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                          c6 = 512.0 / 1771.0;
  static constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                          d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                          d6 = c6 - 0.25;

  const double dir = (x1 >= x0) ? 1.0 : -1.0;
  double x = x0;
  State2 y = y0;
  double h = dir * std::abs(opt.initial_step);
  if (observe) observe(x, y);
  for (std::size_t step = 0; step < opt.max_steps; ++step) {
    if (dir * (x - x1) >= 0.0) return {x, y};
    if (dir * (x + h - x1) > 0.0) h = x1 - x;

    const State2 k1 = rhs(x, y);
    auto at = [&](double frac, double a0, double a1v, double a2, double a3, double a4,
                  const State2& k2v, const State2& k3v, const State2& k4v,
                  const State2& k5v) -> State2 {
      State2 yy;
      for (int i = 0; i < 2; ++i)
        yy[i] = y[i] + h * (a0 * k1[i] + a1v * k2v[i] + a2 * k3v[i] + a3 * k4v[i] + a4 * k5v[i]);
      (void)frac;
      return yy;
    };
    const State2 zero{0.0, 0.0};
    const State2 k2 = rhs(x + 0.2 * h, at(0.2, b21, 0, 0, 0, 0, zero, zero, zero, zero));
    const State2 k3 = rhs(x + 0.3 * h, at(0.3, b31, b32, 0, 0, 0, k2, zero, zero, zero));
    const State2 k4 = rhs(x + 0.6 * h, at(0.6, b41, b42, b43, 0, 0, k2, k3, zero, zero));
    const State2 k5 = rhs(x + h, at(1.0, b51, b52, b53, b54, 0, k2, k3, k4, zero));
    const State2 k6 = rhs(x + 0.875 * h, at(0.875, b61, b62, b63, b64, b65, k2, k3, k4, k5));

    State2 ynew, yerr;
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      ynew[i] = y[i] + h * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c6 * k6[i]);
      yerr[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]);
      const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(yerr[i]) / scale);
    }
    if (!std::isfinite(ynew[0]) || !std::isfinite(ynew[1]) || !std::isfinite(err)) {
      // retry with a smaller step before giving up
      h *= 0.25;
      if (std::abs(h) < opt.min_step)
        fail(errc::non_finite_value, "integrate_rk45: state became non-finite");
      continue;
    }
    if (err <= 1.0) {
      x += h;
      y = ynew;
      if (observe) observe(x, y);
      if (stop && stop(x, y)) return {x, y};
      const double grow = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::clamp(grow, 0.2, 5.0);
    } else {
      h *= std::max(0.1, 0.9 * std::pow(err, -0.25));
    }
    if (std::abs(h) < opt.min_step)
      fail(errc::convergence_failure, "integrate_rk45: step size underflow");
  }
  fail(errc::convergence_failure, "integrate_rk45: max step count exceeded");
}

}  // namespace degenpde
