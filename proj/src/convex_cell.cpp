#include "plval/convex_cell.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace plval {

namespace {

// Fixed-width bitset sized at runtime; cells rarely carry more than a few
// dozen constraints.
class Mask {
 public:
  explicit Mask(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  Mask operator&(const Mask& o) const {
    Mask r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool contains(const Mask& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & o.words_[i]) != o.words_[i]) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

std::vector<Mask> vertex_masks(const Cell& cell, const VertexPool& pool) {
  std::vector<Mask> masks(cell.vertices.size(), Mask(cell.constraints.size()));
  for (std::size_t v = 0; v < cell.vertices.size(); ++v) {
    const Vec& x = pool.at(cell.vertices[v]);
    for (std::size_t c = 0; c < cell.constraints.size(); ++c)
      if (std::abs(cell.constraints[c].signed_distance(x)) <= pool.tol()) masks[v].set(c);
  }
  return masks;
}

// Drops constraints touching fewer than n vertices; they cannot be facets.
void prune_constraints(Cell& cell, const VertexPool& pool) {
  const auto n = static_cast<std::size_t>(pool.dim());
  std::vector<Halfspace> kept;
  kept.reserve(cell.constraints.size());
  for (const auto& h : cell.constraints) {
    std::size_t tight = 0;
    for (int v : cell.vertices)
      if (std::abs(h.signed_distance(pool.at(v))) <= pool.tol()) ++tight;
    if (tight >= n) kept.push_back(h);
  }
  cell.constraints = std::move(kept);
}

bool full_dimensional(const std::vector<int>& ids, const VertexPool& pool) {
  if (ids.size() < static_cast<std::size_t>(pool.dim()) + 1) return false;
  std::vector<Vec> pts;
  pts.reserve(ids.size());
  for (int id : ids) pts.push_back(pool.at(id));
  return affine_rank(pts, pool.tol()) == pool.dim();
}

}  // namespace

VertexPool::VertexPool(int dim, double tol) : dim_(dim), tol_(tol), bucket_(4.0 * tol) {}

std::size_t VertexPool::KeyHash::operator()(const std::vector<std::int64_t>& k) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
  return h;
}

std::vector<std::int64_t> VertexPool::key_of(const Vec& x) const {
  std::vector<std::int64_t> key(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) key[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(x[i] / bucket_));
  return key;
}

int VertexPool::intern(const Vec& x) {
  const auto key = key_of(x);
  // Visit the 3^n neighbouring buckets.
  std::vector<std::int64_t> probe(key.size());
  const int total = static_cast<int>(std::pow(3, dim_));
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (std::size_t i = 0; i < key.size(); ++i) {
      probe[i] = key[i] + (c % 3) - 1;
      c /= 3;
    }
    auto it = grid_.find(probe);
    if (it == grid_.end()) continue;
    for (int id : it->second)
      if ((points_[static_cast<std::size_t>(id)] - x).lpNorm<Eigen::Infinity>() <= tol_) return id;
  }
  const int id = static_cast<int>(points_.size());
  points_.push_back(x);
  grid_[key].push_back(id);
  return id;
}

Cell box_cell(VertexPool& pool, const Vec& lo, const Vec& hi) {
  const int n = pool.dim();
  Cell cell;
  for (int code = 0; code < (1 << n); ++code) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = (code >> i) & 1 ? hi[i] : lo[i];
    cell.vertices.push_back(pool.intern(x));
  }
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    cell.constraints.push_back({e, hi[i]});
    cell.constraints.push_back({-e, -lo[i]});
  }
  return cell;
}

Cell simplex_cell(VertexPool& pool, std::span<const Vec> vertices) {
  const auto n = static_cast<Eigen::Index>(pool.dim());
  Cell cell;
  for (const auto& v : vertices) cell.vertices.push_back(pool.intern(v));
  // Facet opposite vertex i: hyperplane through the others, oriented away
  // from vertex i.
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Mat a(n, n + 1);
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < vertices.size(); ++j) {
      if (j == i) continue;
      a.block(0, col, n, 1) = vertices[j];
      ++col;
    }
    // Normal spans the null space of the edge matrix of the facet.
    Mat edges(n, n - 1);
    for (Eigen::Index k = 1; k < n; ++k) edges.col(k - 1) = a.col(k) - a.col(0);
    Vec normal;
    if (n == 1) {
      normal = Vec::Ones(1);
    } else {
      Eigen::FullPivLU<Mat> lu(edges.transpose());
      normal = lu.kernel().col(0);
    }
    normal.normalize();
    double offset = normal.dot(a.col(0));
    if (normal.dot(vertices[i]) > offset) {
      normal = -normal;
      offset = -offset;
    }
    cell.constraints.push_back({normal, offset});
  }
  return cell;
}

std::pair<std::optional<Cell>, std::optional<Cell>> split_cell(
    const Cell& cell, VertexPool& pool, const Halfspace& plane,
    const std::function<double(int)>& dist) {
  std::vector<double> d(cell.vertices.size());
  bool has_neg = false, has_pos = false;
  for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
    const double v = dist(cell.vertices[i]);
    d[i] = v;
    has_neg |= v < 0.0;
    has_pos |= v > 0.0;
  }
  if (!has_pos) return {cell, std::nullopt};
  if (!has_neg) return {std::nullopt, cell};

  const auto masks = vertex_masks(cell, pool);
  std::vector<int> inside, outside;
  for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
    if (d[i] <= 0.0) inside.push_back(cell.vertices[i]);
    if (d[i] >= 0.0) outside.push_back(cell.vertices[i]);
  }
  for (std::size_t a = 0; a < cell.vertices.size(); ++a) {
    if (d[a] >= 0.0) continue;
    for (std::size_t b = 0; b < cell.vertices.size(); ++b) {
      if (d[b] <= 0.0) continue;
      const Mask common = masks[a] & masks[b];
      int on_face = 0;
      for (const auto& m : masks)
        if (m.contains(common)) ++on_face;
      if (on_face != 2) continue;
      // Canonical orientation keeps the cut point bit-identical in every
      // cell that shares this edge.
      std::size_t lo = a, hi = b;
      if (cell.vertices[lo] > cell.vertices[hi]) std::swap(lo, hi);
      const double t = d[lo] / (d[lo] - d[hi]);
      const Vec& xl = pool.at(cell.vertices[lo]);
      const Vec& xh = pool.at(cell.vertices[hi]);
      const Vec x = xl + t * (xh - xl);
      const int id = pool.intern(x);
      inside.push_back(id);
      outside.push_back(id);
    }
  }
  auto finish = [&](std::vector<int> ids, const Halfspace& extra) -> std::optional<Cell> {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (!full_dimensional(ids, pool)) return std::nullopt;
    Cell out;
    out.vertices = std::move(ids);
    out.constraints = cell.constraints;
    out.constraints.push_back(extra);
    prune_constraints(out, pool);
    return out;
  };
  return {finish(std::move(inside), plane), finish(std::move(outside), Halfspace{-plane.normal, -plane.offset})};
}

std::pair<std::optional<Cell>, std::optional<Cell>> split_cell(const Cell& cell, VertexPool& pool,
                                                               const Halfspace& plane) {
  return split_cell(cell, pool, plane, [&](int id) {
    const double d = plane.signed_distance(pool.at(id));
    return std::abs(d) <= pool.tol() ? 0.0 : d;
  });
}

std::vector<std::vector<int>> tight_sets(const Cell& cell, const VertexPool& pool) {
  std::vector<std::vector<int>> sets;
  sets.reserve(cell.constraints.size());
  for (const auto& h : cell.constraints) {
    std::vector<int> s;
    for (int v : cell.vertices)
      if (std::abs(h.signed_distance(pool.at(v))) <= pool.tol()) s.push_back(v);
    std::sort(s.begin(), s.end());
    sets.push_back(std::move(s));
  }
  return sets;
}

void pulling_triangulation(std::vector<int> face, int dim,
                           const std::vector<std::vector<int>>& supporting,
                           const std::function<const Vec&(int)>& coord,
                           std::vector<std::vector<int>>& out) {
  std::sort(face.begin(), face.end());
  if (face.size() == static_cast<std::size_t>(dim) + 1) {
    out.push_back(face);
    return;
  }
  int apex = face.front();
  for (int v : face)
    if (lex_less(coord(v), coord(apex))) apex = v;

  std::set<std::vector<int>> facets;
  for (const auto& s : supporting) {
    std::vector<int> g;
    std::set_intersection(face.begin(), face.end(), s.begin(), s.end(), std::back_inserter(g));
    if (g.size() < static_cast<std::size_t>(dim) || g.size() == face.size()) continue;
    if (std::binary_search(g.begin(), g.end(), apex)) continue;
    std::vector<Vec> pts;
    for (int v : g) pts.push_back(coord(v));
    if (affine_rank(pts) != dim - 1) continue;
    facets.insert(std::move(g));
  }
  for (const auto& g : facets) {
    std::vector<std::vector<int>> sub;
    pulling_triangulation(g, dim - 1, supporting, coord, sub);
    for (auto& simplex : sub) {
      simplex.push_back(apex);
      std::sort(simplex.begin(), simplex.end());
      out.push_back(std::move(simplex));
    }
  }
}

std::vector<std::vector<int>> triangulate_cell(const Cell& cell, const VertexPool& pool) {
  std::vector<std::vector<int>> out;
  pulling_triangulation(cell.vertices, pool.dim(), tight_sets(cell, pool),
                        [&](int id) -> const Vec& { return pool.at(id); }, out);
  return out;
}

double cell_volume(const Cell& cell, const VertexPool& pool) {
  double total = 0.0;
  for (const auto& s : triangulate_cell(cell, pool)) {
    std::vector<Vec> pts;
    for (int v : s) pts.push_back(pool.at(v));
    total += std::abs(signed_simplex_volume(pts));
  }
  return total;
}

}  // namespace plval
