#include "plval/polytope.hpp"

#include "plval/convex_cell.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace plval {

namespace {

// Calls visit(indices) for every n-subset of {0, ..., k-1} in lexicographic
// order.
void for_each_subset(int k, int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(idx);
    int i = n - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == k - n + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Unit normal of the hyperplane through the given n points, if they span an
// (n-1)-flat.
std::optional<Vec> hyperplane_normal(const std::vector<Vec>& pts) {
  const auto n = pts.front().size();
  if (n == 1) return Vec::Ones(1);
  Mat edges(n - 1, n);
  for (Eigen::Index i = 1; i < n; ++i) edges.row(i - 1) = (pts[static_cast<std::size_t>(i)] - pts[0]).transpose();
  Eigen::FullPivLU<Mat> lu(edges);
  lu.setThreshold(kEps);
  if (lu.rank() != n - 1) return std::nullopt;
  Vec normal = lu.kernel().col(0);
  return normal.normalized();
}

}  // namespace

Polytope hull_from_points(std::span<const Vec> points) {
  if (points.empty()) throw Error(ErrorCode::Degenerate, "no points");
  const auto n = points.front().size();
  if (n < 1) throw Error(ErrorCode::Degenerate, "dimension must be positive");
  double radius = 0.0;
  for (const auto& p : points) {
    if (p.size() != n) throw Error(ErrorCode::InvalidInput, "points of mixed dimension");
    if (!p.allFinite()) throw Error(ErrorCode::InvalidInput, "non-finite coordinate");
    radius = std::max(radius, p.norm());
  }
  if (radius == 0.0) throw Error(ErrorCode::Degenerate, "all points at the origin");

  // Predicates run on data rescaled to unit circumradius about the origin.
  std::vector<Vec> pts;
  std::vector<Vec> originals;
  for (const auto& p : points) {
    const Vec q = p / radius;
    bool dup = false;
    for (const auto& r : pts)
      if ((r - q).lpNorm<Eigen::Infinity>() <= kEps) dup = true;
    if (!dup) {
      pts.push_back(q);
      originals.push_back(p);
    }
  }
  if (affine_rank(pts) < n) throw Error(ErrorCode::Degenerate, "points do not span R^n");

  struct RawFacet {
    Vec normal;
    double offset;
    std::vector<int> tight;
  };
  std::vector<RawFacet> raw;
  std::set<std::vector<int>> seen;
  const int k = static_cast<int>(pts.size());
  std::vector<Vec> subset(static_cast<std::size_t>(n));
  for_each_subset(k, static_cast<int>(n), [&](const std::vector<int>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) subset[i] = pts[static_cast<std::size_t>(idx[i])];
    auto normal = hyperplane_normal(subset);
    if (!normal) return;
    double offset = normal->dot(subset[0]);
    double lo = 0.0, hi = 0.0;
    for (const auto& p : pts) {
      const double d = normal->dot(p) - offset;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    if (hi > kEps && lo < -kEps) return;
    if (hi > kEps) {
      *normal = -*normal;
      offset = -offset;
    }
    std::vector<int> tight;
    for (int j = 0; j < k; ++j)
      if (std::abs(normal->dot(pts[static_cast<std::size_t>(j)]) - offset) <= kEps) tight.push_back(j);
    if (!seen.insert(tight).second) return;
    raw.push_back({*normal, offset, std::move(tight)});
  });

  for (const auto& f : raw)
    if (f.offset <= kEps) throw Error(ErrorCode::OriginNotInterior, "origin lies outside or on the boundary of the hull");

  // Vertices: points whose incident facet normals span R^n.
  std::vector<int> vertex_ids;
  for (int j = 0; j < k; ++j) {
    std::vector<Vec> normals;
    for (const auto& f : raw)
      if (std::binary_search(f.tight.begin(), f.tight.end(), j)) normals.push_back(f.normal);
    if (static_cast<Eigen::Index>(normals.size()) < n) continue;
    Mat m(n, static_cast<Eigen::Index>(normals.size()));
    for (std::size_t i = 0; i < normals.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = normals[i];
    Eigen::FullPivLU<Mat> lu(m);
    lu.setThreshold(kEps);
    if (lu.rank() == n) vertex_ids.push_back(j);
  }
  std::sort(vertex_ids.begin(), vertex_ids.end(),
            [&](int a, int b) { return lex_less(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)]); });
  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  for (std::size_t i = 0; i < vertex_ids.size(); ++i) remap[static_cast<std::size_t>(vertex_ids[i])] = static_cast<int>(i);

  Polytope out;
  out.dim_ = static_cast<int>(n);
  std::vector<Vec> unit_vertices;
  for (int id : vertex_ids) {
    out.vertices_.push_back(originals[static_cast<std::size_t>(id)]);
    unit_vertices.push_back(pts[static_cast<std::size_t>(id)]);
  }
  for (const auto& f : raw) {
    Facet facet;
    facet.normal = f.normal;
    facet.support = f.offset * radius;
    for (int j : f.tight)
      if (remap[static_cast<std::size_t>(j)] >= 0) facet.vertices.push_back(remap[static_cast<std::size_t>(j)]);
    std::sort(facet.vertices.begin(), facet.vertices.end());
    out.facets_.push_back(std::move(facet));
  }
  std::sort(out.facets_.begin(), out.facets_.end(),
            [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });

  std::vector<std::vector<int>> supporting;
  for (const auto& f : out.facets_) supporting.push_back(f.vertices);
  const auto coord = [&](int id) -> const Vec& { return unit_vertices[static_cast<std::size_t>(id)]; };
  for (const auto& f : out.facets_) {
    std::vector<std::vector<int>> simplices;
    pulling_triangulation(f.vertices, static_cast<int>(n) - 1, supporting, coord, simplices);
    double area = 0.0;
    for (const auto& s : simplices) {
      std::vector<Vec> corners;
      for (int v : s) corners.push_back(out.vertices_[static_cast<std::size_t>(v)]);
      area += simplex_measure(corners);
    }
    out.facet_areas_.push_back(area);
    out.facet_triangulations_.push_back(std::move(simplices));
  }
  return out;
}

double volume(const Polytope& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.facets().size(); ++i) total += p.facet_areas()[i] * p.facets()[i].support;
  return total / p.dim();
}

Polytope polar(const Polytope& p) {
  std::vector<Vec> pts;
  pts.reserve(p.facets().size());
  for (const auto& f : p.facets()) pts.push_back(f.normal / f.support);
  return hull_from_points(pts);
}

double support(const Polytope& p, const Vec& u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices()) best = std::max(best, u.dot(v));
  return best;
}

double p_surface_area(const Polytope& p, double exponent) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.facets().size(); ++i)
    total += p.facet_areas()[i] * std::pow(p.facets()[i].support, 1.0 - exponent);
  return total;
}

SimplicialComplex central_triangulation(const Polytope& p) {
  SimplicialComplex c;
  c.dim = p.dim();
  c.vertices.push_back(Vec::Zero(p.dim()));
  for (const auto& v : p.vertices()) c.vertices.push_back(v);
  for (const auto& facet_simplices : p.facet_triangulations()) {
    for (const auto& s : facet_simplices) {
      std::vector<int> simplex{0};
      for (int v : s) simplex.push_back(v + 1);
      c.simplices.push_back(std::move(simplex));
    }
  }
  return c;
}

Polytope apply_unimodular(const Polytope& p, const Mat& phi, LinearMapMode mode) {
  if (phi.rows() != p.dim() || phi.cols() != p.dim())
    throw Error(ErrorCode::InvalidInput, "matrix dimension does not match the polytope");
  const double det = phi.determinant();
  if (std::abs(det) <= kEps) throw Error(ErrorCode::Singular, "det(phi) = 0");
  if (mode == LinearMapMode::Special && std::abs(det - 1.0) >= kEps)
    throw Error(ErrorCode::InvalidInput, "phi is not in SL(n)");
  std::vector<Vec> pts;
  for (const auto& v : p.vertices()) pts.push_back(phi * v);
  return hull_from_points(pts);
}

Polytope scale(const Polytope& p, double lambda) {
  std::vector<Vec> pts;
  for (const auto& v : p.vertices()) pts.push_back(lambda * v);
  return hull_from_points(pts);
}

std::vector<Vec> AnchoredPolytope::vertices() const {
  std::vector<Vec> out;
  for (const auto& v : shape_.vertices()) out.push_back(v + offset_);
  return out;
}

AnchoredPolytope translate(const Polytope& p, const Vec& t) { return AnchoredPolytope(p, t); }

AnchoredPolytope translate(const AnchoredPolytope& p, const Vec& t) {
  return AnchoredPolytope(p.shape(), p.offset() + t);
}

Polytope random_polytope(std::uint64_t seed, int n, int k) {
  if (n < 1 || k < n + 1) throw Error(ErrorCode::InvalidInput, "random_polytope needs k >= n + 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> jitter(0.7, 1.3);
  constexpr int kAttempts = 64;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Vec> pts;
    for (int i = 0; i < k; ++i) {
      Vec x(n);
      for (int j = 0; j < n; ++j) x[j] = gauss(rng);
      if (x.norm() < 1e-6) {
        --i;
        continue;
      }
      pts.push_back(x.normalized() * jitter(rng));
    }
    try {
      Polytope p = hull_from_points(pts);
      double min_support = std::numeric_limits<double>::infinity();
      for (const auto& f : p.facets()) min_support = std::min(min_support, f.support);
      if (min_support > 0.05) return p;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::Degenerate, "random_polytope: no valid hull after bounded attempts");
}

std::vector<std::string> check_invariants(const Polytope& p, double eps) {
  std::vector<std::string> bad;
  double radius = 0.0;
  for (const auto& v : p.vertices()) radius = std::max(radius, v.norm());
  const double tol = eps * std::max(radius, 1.0);
  for (std::size_t i = 0; i < p.facets().size(); ++i) {
    const auto& f = p.facets()[i];
    std::ostringstream where;
    where << "facet " << i << ": ";
    if (!(f.support > 0.0)) bad.push_back(where.str() + "support not positive");
    if (std::abs(f.normal.norm() - 1.0) > eps) bad.push_back(where.str() + "normal not unit");
    std::vector<Vec> incident;
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
      const double d = f.normal.dot(p.vertices()[v]) - f.support;
      const bool listed = std::binary_search(f.vertices.begin(), f.vertices.end(), static_cast<int>(v));
      if (d > tol) bad.push_back(where.str() + "vertex " + std::to_string(v) + " violates the facet inequality");
      if (listed != (std::abs(d) <= tol))
        bad.push_back(where.str() + "incidence of vertex " + std::to_string(v) + " inconsistent");
      if (listed) incident.push_back(p.vertices()[v] / std::max(radius, 1e-300));
    }
    if (affine_rank(incident, eps) != p.dim() - 1) bad.push_back(where.str() + "incident vertices do not span a facet");
  }
  if (!(volume(p) > 0.0)) bad.push_back("volume not positive");
  return bad;
}

}  // namespace plval
