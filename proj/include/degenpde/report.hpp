#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace degenpde {

/// One predicted-vs-measured comparison.
struct Check {
  std::string name;
  double predicted = 0.0;
  double measured = 0.0;
  double rel_error = 0.0;
  bool pass = false;
};

/// Verification ledger: named constants plus a list of pass/fail checks.
struct PredictionReport {
  std::map<std::string, double> named_constants;
  std::vector<Check> checks;

  void add_constant(const std::string& name, double value) { named_constants[name] = value; }

  Check& add_check(const std::string& name, double predicted, double measured, double tol_rel) {
    Check c;
    c.name = name;
    c.predicted = predicted;
    c.measured = measured;
    double scale = std::abs(predicted) > 0 ? std::abs(predicted) : 1.0;
    c.rel_error = std::abs(measured - predicted) / scale;
    c.pass = c.rel_error <= tol_rel;
    checks.push_back(c);
    return checks.back();
  }

  /// For sign/ordering style checks where "measured" is a residual that must
  /// stay below an absolute bound.
  Check& add_bound_check(const std::string& name, double residual, double bound) {
    Check c;
    c.name = name;
    c.predicted = 0.0;
    c.measured = residual;
    c.rel_error = std::abs(residual);
    c.pass = residual <= bound;
    checks.push_back(c);
    return checks.back();
  }

  Check& add_flag(const std::string& name, bool pass) {
    Check c;
    c.name = name;
    c.predicted = 1.0;
    c.measured = pass ? 1.0 : 0.0;
    c.rel_error = pass ? 0.0 : 1.0;
    c.pass = pass;
    checks.push_back(c);
    return checks.back();
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  void merge(const PredictionReport& other, const std::string& prefix = "") {
    for (const auto& [k, v] : other.named_constants) named_constants[prefix + k] = v;
    for (const auto& c : other.checks) {
      checks.push_back(c);
      checks.back().name = prefix + c.name;
    }
  }
};

}  // namespace degenpde
