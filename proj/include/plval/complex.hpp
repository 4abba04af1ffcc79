// Simplicial complexes and the piecewise-affine functions living on them.
#pragma once

#include "plval/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plval {

/// Finite collection of n-simplices given by vertex indices.
struct SimplicialComplex {
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<std::vector<int>> simplices;

  std::vector<Vec> simplex_points(std::size_t s) const;
  double simplex_volume(std::size_t s) const;
  double total_volume() const;
};

/// Compactly supported continuous piecewise-affine function: affine on every
/// simplex, determined by its vertex values, zero off the complex.
struct PLFunction {
  SimplicialComplex complex;
  std::vector<double> values;

  int dim() const { return complex.dim; }
  bool empty() const { return complex.simplices.empty(); }
};

/// The zero function in dimension n (empty complex).
PLFunction zero_function(int n);

/// Point location plus barycentric interpolation over a fixed PLFunction.
/// Build once and query many times.
class PLEvaluator {
 public:
  explicit PLEvaluator(const PLFunction& f);

  double operator()(const Vec& x) const;
  /// Index of a simplex containing x (within tolerance), if any.
  std::optional<std::size_t> locate(const Vec& x) const;
  /// Affine value of simplex s extended to x.
  double affine_value(std::size_t s, const Vec& x) const;
  const Vec& gradient(std::size_t s) const { return gradients_[s]; }

 private:
  struct Entry {
    Mat inverse_edges;  // maps x - v0 to barycentric coordinates 1..n
    Vec origin;
    Vec lo, hi;
  };

  const PLFunction* f_;
  std::vector<Entry> entries_;
  std::vector<Vec> gradients_;
  std::vector<double> origin_values_;
};

/// Indices of vertices lying on the topological boundary of the support
/// (vertices of (n-1)-faces that belong to exactly one simplex).
std::vector<int> boundary_vertices(const SimplicialComplex& c);

struct ComplexCheckOptions {
  double eps = kEps;              ///< point-on-face tolerance, normalized coordinates
  double min_determinant = kEps;  ///< simplices with smaller |det| are degenerate
  bool conforming = true;
};

/// Violated SimplicialComplex invariants (degenerate simplices, overlapping
/// interiors, non-conforming pairs), each naming the offending simplices.
std::vector<std::string> check_complex(const SimplicialComplex& c, const ComplexCheckOptions& opts = {});

/// check_complex plus the PLFunction invariants (value count, zero boundary).
std::vector<std::string> check_function(const PLFunction& f, const ComplexCheckOptions& opts = {});

}  // namespace plval
