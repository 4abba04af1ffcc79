#include "plval/geometry.hpp"

#include <cmath>

namespace plval {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotNonnegative: return "NotNonnegative";
    case ErrorCode::NegativeValues: return "NegativeValues";
    case ErrorCode::OverlayFailure: return "OverlayFailure";
    case ErrorCode::KernelNonzeroAtZero: return "KernelNonzeroAtZero";
    case ErrorCode::InvalidKernel: return "InvalidKernel";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NonUniformGrid: return "NonUniformGrid";
    case ErrorCode::InsufficientDecades: return "InsufficientDecades";
    case ErrorCode::PackingFailure: return "PackingFailure";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

int affine_rank(std::span<const Vec> points, double tol) {
  if (points.size() <= 1) return 0;
  const auto dim = points.front().size();
  Mat diffs(dim, static_cast<Eigen::Index>(points.size() - 1));
  for (std::size_t i = 1; i < points.size(); ++i) diffs.col(static_cast<Eigen::Index>(i - 1)) = points[i] - points[0];
  Eigen::JacobiSVD<Mat> svd(diffs);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++rank;
  return rank;
}

double signed_simplex_volume(std::span<const Vec> vertices) {
  const auto n = vertices.front().size();
  Mat edges(n, n);
  for (Eigen::Index i = 0; i < n; ++i) edges.col(i) = vertices[static_cast<std::size_t>(i + 1)] - vertices[0];
  return edges.determinant() / factorial(static_cast<int>(n));
}

double simplex_measure(std::span<const Vec> vertices) {
  const auto k = static_cast<Eigen::Index>(vertices.size()) - 1;
  if (k <= 0) return 1.0;
  const auto n = vertices.front().size();
  Mat edges(n, k);
  for (Eigen::Index i = 0; i < k; ++i) edges.col(i) = vertices[static_cast<std::size_t>(i + 1)] - vertices[0];
  const double gram = (edges.transpose() * edges).determinant();
  return std::sqrt(std::max(gram, 0.0)) / factorial(static_cast<int>(k));
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double binomial(double a, double k) {
  if (a < 150.0) return std::tgamma(a + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(a - k + 1.0));
  return std::exp(std::lgamma(a + 1.0) - std::lgamma(k + 1.0) - std::lgamma(a - k + 1.0));
}

}  // namespace plval
