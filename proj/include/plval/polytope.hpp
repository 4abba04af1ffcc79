// Convex polytopes with the origin in their interior, and the scalar
// functionals on them: volume, polar body, support function and
// p-surface area.
#pragma once

#include "plval/complex.hpp"
#include "plval/geometry.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace plval {

struct Facet {
  Vec normal;                 ///< unit outer normal
  double support = 0.0;       ///< h(P, normal) > 0
  std::vector<int> vertices;  ///< incident vertex indices, ascending
};

/// Immutable convex polytope P with 0 in int P. Vertices are stored in
/// lexicographic order; facets carry their outer normals and support values.
class Polytope {
 public:
  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// (n-1)-dimensional measure of each facet, parallel to facets().
  const std::vector<double>& facet_areas() const { return facet_areas_; }
  /// (n-1)-simplices (vertex indices) of each facet, pulled from the facet's
  /// lexicographically smallest vertex.
  const std::vector<std::vector<std::vector<int>>>& facet_triangulations() const { return facet_triangulations_; }

  friend Polytope hull_from_points(std::span<const Vec> points);

 private:
  Polytope() = default;

  int dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<double> facet_areas_;
  std::vector<std::vector<std::vector<int>>> facet_triangulations_;
};

/// Convex hull of `points`; non-vertices are discarded.
/// Throws Error{Degenerate} if the points do not span R^n and
/// Error{OriginNotInterior} if 0 is not strictly inside the hull.
Polytope hull_from_points(std::span<const Vec> points);

double volume(const Polytope& p);

/// P* = {x : <x,y> <= 1 for all y in P}; its vertices are u_i / h_i.
Polytope polar(const Polytope& p);

/// h(P, u) = max over vertices of <u, v>.
double support(const Polytope& p, const Vec& u);

/// S_p(P) = sum_i |F_i| h_i^(1-p).
double p_surface_area(const Polytope& p, double exponent);

/// Cones from the origin over the facets of P, each facet pulled from its
/// lexicographically smallest vertex. Vertex 0 of the result is the
/// origin; vertex i+1 is P.vertices()[i].
SimplicialComplex central_triangulation(const Polytope& p);

enum class LinearMapMode { Special, General };

/// Hull of {phi v}. In Special mode det(phi) must be 1 within kEps.
/// Throws Error{Singular} for det(phi) = 0.
Polytope apply_unimodular(const Polytope& p, const Mat& phi,
                          LinearMapMode mode = LinearMapMode::Special);

/// P scaled about the origin by lambda > 0.
Polytope scale(const Polytope& p, double lambda);

/// A polytope carried together with a translation. The translate generally
/// no longer contains the origin, so only vertex-level queries are offered.
class AnchoredPolytope {
 public:
  AnchoredPolytope(Polytope shape, Vec offset) : shape_(std::move(shape)), offset_(std::move(offset)) {}

  const Polytope& shape() const { return shape_; }
  const Vec& offset() const { return offset_; }
  std::vector<Vec> vertices() const;
  double volume() const { return plval::volume(shape_); }

 private:
  Polytope shape_;
  Vec offset_;
};

AnchoredPolytope translate(const Polytope& p, const Vec& t);
AnchoredPolytope translate(const AnchoredPolytope& p, const Vec& t);

/// Hull of k points on a centred sphere with radial jitter, deterministic in
/// seed. Retries a bounded number of times; throws Error{Degenerate} if no
/// attempt yields an origin-interior full-dimensional hull.
Polytope random_polytope(std::uint64_t seed, int n, int k);

/// Violated Polytope invariants, empty when valid.
std::vector<std::string> check_invariants(const Polytope& p, double eps = kEps);

}  // namespace plval
