// Machine-readable outcome of one numerical identity check.
#pragma once

#include <cmath>
#include <string>
#include <utility>

namespace plval {

struct PropertyReport {
  std::string suite;
  std::string case_id;  ///< seed and parameters of the case
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool skipped = false;  ///< case could not be executed; see note
  std::string note;
  double seconds = 0.0;
};

/// Report comparing lhs with rhs. The residual is |lhs - rhs| / scale with
/// scale = max(|lhs|, |rhs|, floor); non-finite residuals never pass.
inline PropertyReport compare(std::string suite, std::string case_id, double lhs, double rhs, double tolerance,
                              double floor = 1e-300) {
  PropertyReport r;
  r.suite = std::move(suite);
  r.case_id = std::move(case_id);
  r.lhs = lhs;
  r.rhs = rhs;
  const double scale = std::fmax(std::fmax(std::abs(lhs), std::abs(rhs)), floor);
  r.residual = std::abs(lhs - rhs) / scale;
  if (lhs == rhs) r.residual = 0.0;
  r.tolerance = tolerance;
  r.passed = std::isfinite(lhs) && std::isfinite(rhs) && std::isfinite(r.residual) && r.residual <= tolerance;
  return r;
}

}  // namespace plval
