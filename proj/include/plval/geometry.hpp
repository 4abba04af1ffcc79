// Basic linear-algebra vocabulary and small geometric predicates shared by
// every module.
#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace plval {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Absolute tolerance of geometric predicates on O(1)-scaled data.
inline constexpr double kEps = 1e-9;

enum class ErrorCode {
  OriginNotInterior,
  Degenerate,
  Singular,
  NotNonnegative,
  NegativeValues,
  OverlayFailure,
  KernelNonzeroAtZero,
  InvalidKernel,
  GridTooCoarse,
  NonUniformGrid,
  InsufficientDecades,
  PackingFailure,
  InvalidInput,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Lexicographic strict order on coordinates.
bool lex_less(const Vec& a, const Vec& b);

/// Rank of the affine span of `points` (columns of the difference matrix
/// relative to the first point), using a relative singular-value cut.
int affine_rank(std::span<const Vec> points, double tol = kEps);

/// Signed n-volume of the simplex with the n+1 given vertices.
double signed_simplex_volume(std::span<const Vec> vertices);

/// Unsigned k-volume of a k-simplex embedded in R^n (Gram determinant).
double simplex_measure(std::span<const Vec> vertices);

/// n! as a double.
double factorial(int n);

/// Generalized binomial coefficient C(a, k) via the Gamma function.
double binomial(double a, double k);

}  // namespace plval
