// Convex cells with shared vertex storage: the machinery behind hyperplane
// splitting, triangulation overlay and polytope triangulation.
#pragma once

#include "plval/geometry.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace plval {

/// Closed half-space {x : normal . x <= offset}, normal of unit length.
struct Halfspace {
  Vec normal;
  double offset = 0.0;

  double signed_distance(const Vec& x) const { return normal.dot(x) - offset; }
};

/// Vertex store that merges points closer than `tol` (snap rounding), so
/// that cells computed independently share vertex ids on common faces.
class VertexPool {
 public:
  VertexPool(int dim, double tol);

  int intern(const Vec& x);
  const Vec& at(int id) const { return points_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return points_.size(); }
  int dim() const { return dim_; }
  double tol() const { return tol_; }

 private:
  std::vector<std::int64_t> key_of(const Vec& x) const;

  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept;
  };

  int dim_;
  double tol_;
  double bucket_;
  std::vector<Vec> points_;
  std::unordered_map<std::vector<std::int64_t>, std::vector<int>, KeyHash> grid_;
};

/// A full-dimensional convex polytope in H- and V-representation, with its
/// vertices living in a VertexPool.
struct Cell {
  std::vector<int> vertices;
  std::vector<Halfspace> constraints;
};

Cell box_cell(VertexPool& pool, const Vec& lo, const Vec& hi);

/// Cell of the simplex with the given vertex coordinates.
Cell simplex_cell(VertexPool& pool, std::span<const Vec> vertices);

/// Splits `cell` along the hyperplane of `plane`. `dist` gives a signed
/// quantity proportional to the distance of a pool vertex to the splitting
/// hyperplane; exactly 0 means on the plane, so callers snap before
/// returning. Returns {inside, outside}, where
/// inside is the part with dist <= 0; a side is empty when the cell does not
/// reach it with positive volume.
std::pair<std::optional<Cell>, std::optional<Cell>> split_cell(
    const Cell& cell, VertexPool& pool, const Halfspace& plane,
    const std::function<double(int)>& dist);

/// Convenience overload using the plane's own signed distance, snapped to 0
/// within the pool tolerance.
std::pair<std::optional<Cell>, std::optional<Cell>> split_cell(const Cell& cell, VertexPool& pool,
                                                               const Halfspace& plane);

/// Vertex-id sets of the cell's supporting hyperplanes (one per constraint).
std::vector<std::vector<int>> tight_sets(const Cell& cell, const VertexPool& pool);

/// Pulling triangulation of the face spanned by `face` (affine dimension
/// `dim`): pull from the lexicographically smallest vertex and recurse into
/// the facets not containing it. The faces of the ambient polytope are
/// described by `supporting`, the vertex sets of its supporting hyperplanes.
/// Faces with equal vertex sets always receive equal triangulations, which
/// makes neighbouring cells conform.
void pulling_triangulation(std::vector<int> face, int dim,
                           const std::vector<std::vector<int>>& supporting,
                           const std::function<const Vec&(int)>& coord,
                           std::vector<std::vector<int>>& out);

/// Triangulates a cell into n-simplices of pool vertex ids.
std::vector<std::vector<int>> triangulate_cell(const Cell& cell, const VertexPool& pool);

/// Lebesgue measure of a cell.
double cell_volume(const Cell& cell, const VertexPool& pool);

}  // namespace plval
