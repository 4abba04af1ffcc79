#include "plval/pl_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace plval {

std::vector<Vec> SimplicialComplex::simplex_points(std::size_t s) const {
  std::vector<Vec> pts;
  pts.reserve(simplices[s].size());
  for (int v : simplices[s]) pts.push_back(vertices[static_cast<std::size_t>(v)]);
  return pts;
}

double SimplicialComplex::simplex_volume(std::size_t s) const {
  return std::abs(signed_simplex_volume(simplex_points(s)));
}

double SimplicialComplex::total_volume() const {
  double total = 0.0;
  for (std::size_t s = 0; s < simplices.size(); ++s) total += simplex_volume(s);
  return total;
}

PLFunction zero_function(int n) {
  PLFunction f;
  f.complex.dim = n;
  return f;
}

PLEvaluator::PLEvaluator(const PLFunction& f) : f_(&f) {
  const auto& c = f.complex;
  const auto n = static_cast<Eigen::Index>(c.dim);
  entries_.reserve(c.simplices.size());
  gradients_.reserve(c.simplices.size());
  for (std::size_t s = 0; s < c.simplices.size(); ++s) {
    const auto pts = c.simplex_points(s);
    Mat edges(n, n);
    for (Eigen::Index i = 0; i < n; ++i) edges.col(i) = pts[static_cast<std::size_t>(i + 1)] - pts[0];
    Entry e;
    e.inverse_edges = edges.inverse();
    e.origin = pts[0];
    e.lo = pts[0];
    e.hi = pts[0];
    for (const auto& p : pts) {
      e.lo = e.lo.cwiseMin(p);
      e.hi = e.hi.cwiseMax(p);
    }
    entries_.push_back(std::move(e));
    gradients_.push_back(simplex_gradient(c, f.values, s));
    origin_values_.push_back(f.values[static_cast<std::size_t>(c.simplices[s][0])]);
  }
}

std::optional<std::size_t> PLEvaluator::locate(const Vec& x) const {
  constexpr double kBaryTol = 1e-11;
  std::optional<std::size_t> best;
  double best_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < entries_.size(); ++s) {
    const auto& e = entries_[s];
    const Vec slack = (e.hi - e.lo) * 1e-9;
    if (((x - e.lo).array() < -slack.array()).any() || ((x - e.hi).array() > slack.array()).any()) continue;
    const Vec lambda = e.inverse_edges * (x - e.origin);
    const double margin = std::min(lambda.minCoeff(), 1.0 - lambda.sum());
    if (margin >= 0.0) return s;
    if (margin >= -kBaryTol && margin > best_margin) {
      best_margin = margin;
      best = s;
    }
  }
  return best;
}

double PLEvaluator::affine_value(std::size_t s, const Vec& x) const {
  return origin_values_[s] + gradients_[s].dot(x - entries_[s].origin);
}

double PLEvaluator::operator()(const Vec& x) const {
  const auto s = locate(x);
  return s ? affine_value(*s, x) : 0.0;
}

double evaluate(const PLFunction& f, const Vec& x) { return PLEvaluator(f)(x); }

Vec simplex_gradient(const SimplicialComplex& c, const std::vector<double>& values, std::size_t s) {
  const auto n = static_cast<Eigen::Index>(c.dim);
  const auto& simplex = c.simplices[s];
  const Vec& v0 = c.vertices[static_cast<std::size_t>(simplex[0])];
  Mat edges(n, n);
  Vec rise(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto vi = static_cast<std::size_t>(simplex[static_cast<std::size_t>(i + 1)]);
    edges.row(i) = (c.vertices[vi] - v0).transpose();
    rise[i] = values[vi] - values[static_cast<std::size_t>(simplex[0])];
  }
  return edges.partialPivLu().solve(rise);
}

std::vector<SimplexGradient> gradient_field(const PLFunction& f) {
  std::vector<SimplexGradient> out;
  out.reserve(f.complex.simplices.size());
  for (std::size_t s = 0; s < f.complex.simplices.size(); ++s)
    out.push_back({s, simplex_gradient(f.complex, f.values, s)});
  return out;
}

PLFunction cone_function(const Polytope& p) {
  PLFunction f;
  f.complex = central_triangulation(p);
  f.values.assign(f.complex.vertices.size(), 0.0);
  f.values[0] = 1.0;
  return f;
}

PLFunction scale_values(PLFunction f, double s) {
  for (auto& v : f.values) v *= s;
  return f;
}

PLFunction compose_affine(const PLFunction& f, const Mat& phi, const Vec& t) {
  if (std::abs(phi.determinant()) <= kEps * std::pow(phi.norm(), phi.rows()))
    throw Error(ErrorCode::Singular, "det(phi) = 0");
  PLFunction out = f;
  for (auto& v : out.complex.vertices) v = phi * v + t;
  return out;
}

PLFunction translate(const PLFunction& f, const Vec& t) {
  PLFunction out = f;
  for (auto& v : out.complex.vertices) v += t;
  return out;
}

std::vector<int> boundary_vertices(const SimplicialComplex& c) {
  std::map<std::vector<int>, int> face_count;
  for (const auto& s : c.simplices) {
    for (std::size_t skip = 0; s.size() > skip; ++skip) {
      std::vector<int> face;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != skip) face.push_back(s[i]);
      std::sort(face.begin(), face.end());
      ++face_count[face];
    }
  }
  std::vector<int> out;
  for (const auto& [face, count] : face_count)
    if (count == 1) out.insert(out.end(), face.begin(), face.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Vertices of the intersection of two n-simplices, by enumerating n-subsets
// of their 2(n+1) facet inequalities. Coordinates are already normalized.
std::vector<Vec> intersection_vertices(const std::vector<Vec>& a, const std::vector<Vec>& b, double tol) {
  const auto n = a.front().size();
  std::vector<std::pair<Vec, double>> rows;  // normal . x <= offset
  for (const auto* simplex : {&a, &b}) {
    for (std::size_t i = 0; i < simplex->size(); ++i) {
      // Barycentric coordinate i is affine; lambda_i >= 0 is the facet inequality.
      Mat edges(n, n);
      for (Eigen::Index k = 0; k < n; ++k) edges.col(k) = (*simplex)[static_cast<std::size_t>(k + 1)] - (*simplex)[0];
      const Mat inv = edges.inverse();
      Vec normal;
      double offset;
      if (i == 0) {
        // lambda_0 = 1 - sum(inv (x - v0)) >= 0
        normal = inv.colwise().sum().transpose();
        offset = 1.0 + normal.dot((*simplex)[0]);
      } else {
        normal = -inv.row(static_cast<Eigen::Index>(i - 1)).transpose();
        offset = normal.dot((*simplex)[0]);
      }
      const double norm = normal.norm();
      rows.emplace_back(normal / norm, offset / norm);
    }
  }
  std::vector<Vec> out;
  const int m = static_cast<int>(rows.size());
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = static_cast<int>(i);
  while (true) {
    Mat a_mat(n, n);
    Vec rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      a_mat.row(i) = rows[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].first.transpose();
      rhs[i] = rows[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].second;
    }
    Eigen::FullPivLU<Mat> lu(a_mat);
    // Facets of the two simplices along a shared face are parallel up to
    // roundoff; such pairs must not produce a vertex.
    lu.setThreshold(1e-8);
    if (lu.rank() == n) {
      const Vec x = lu.solve(rhs);
      bool feasible = true;
      for (const auto& [normal, offset] : rows)
        if (normal.dot(x) - offset > tol) feasible = false;
      if (feasible) {
        bool dup = false;
        for (const auto& y : out)
          if ((x - y).lpNorm<Eigen::Infinity>() <= tol) dup = true;
        if (!dup) out.push_back(x);
      }
    }
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - static_cast<int>(n) + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < static_cast<int>(n); ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace

std::vector<std::string> check_complex(const SimplicialComplex& c, const ComplexCheckOptions& opts) {
  std::vector<std::string> bad;
  const auto n = static_cast<std::size_t>(c.dim);
  if (c.simplices.empty()) return bad;
  Vec lo = c.vertices.front(), hi = c.vertices.front();
  for (const auto& v : c.vertices) {
    if (static_cast<std::size_t>(v.size()) != n) {
      bad.push_back("vertex of wrong dimension");
      return bad;
    }
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vec center = (lo + hi) / 2.0;
  const double extent = std::max((hi - lo).maxCoeff() / 2.0, 1e-300);
  std::vector<Vec> unit;
  for (const auto& v : c.vertices) unit.push_back((v - center) / extent);

  std::vector<std::vector<Vec>> pts(c.simplices.size());
  std::vector<Vec> blo(c.simplices.size()), bhi(c.simplices.size());
  for (std::size_t s = 0; s < c.simplices.size(); ++s) {
    const auto& simplex = c.simplices[s];
    std::ostringstream where;
    where << "simplex " << s;
    if (simplex.size() != n + 1) {
      bad.push_back(where.str() + " has wrong arity");
      return bad;
    }
    for (int v : simplex)
      if (v < 0 || static_cast<std::size_t>(v) >= c.vertices.size()) {
        bad.push_back(where.str() + " references a missing vertex");
        return bad;
      }
    for (int v : simplex) pts[s].push_back(unit[static_cast<std::size_t>(v)]);
    const double det = std::abs(signed_simplex_volume(pts[s])) * factorial(static_cast<int>(n));
    if (!(det > opts.min_determinant)) bad.push_back(where.str() + " is degenerate");
    blo[s] = pts[s][0];
    bhi[s] = pts[s][0];
    for (const auto& p : pts[s]) {
      blo[s] = blo[s].cwiseMin(p);
      bhi[s] = bhi[s].cwiseMax(p);
    }
  }
  if (!bad.empty() || !opts.conforming) return bad;

  for (std::size_t a = 0; a < c.simplices.size(); ++a) {
    for (std::size_t b = a + 1; b < c.simplices.size(); ++b) {
      if (((blo[a] - bhi[b]).array() > opts.eps).any() || ((blo[b] - bhi[a]).array() > opts.eps).any()) continue;
      const auto meet = intersection_vertices(pts[a], pts[b], opts.eps);
      std::ostringstream where;
      where << "simplices " << a << " and " << b;
      if (meet.size() > n && affine_rank(meet, opts.eps) == static_cast<int>(n)) {
        bad.push_back(where.str() + " overlap");
        continue;
      }
      // The intersection must be the convex hull of the shared vertices.
      std::vector<int> shared;
      std::set_intersection(c.simplices[a].begin(), c.simplices[a].end(), c.simplices[b].begin(),
                            c.simplices[b].end(), std::back_inserter(shared));
      if (!std::is_sorted(c.simplices[a].begin(), c.simplices[a].end()) ||
          !std::is_sorted(c.simplices[b].begin(), c.simplices[b].end())) {
        shared.clear();
        for (int v : c.simplices[a])
          if (std::find(c.simplices[b].begin(), c.simplices[b].end(), v) != c.simplices[b].end()) shared.push_back(v);
      }
      for (const auto& x : meet) {
        bool is_shared = false;
        for (int v : shared)
          if ((unit[static_cast<std::size_t>(v)] - x).lpNorm<Eigen::Infinity>() <= 1e3 * opts.eps) is_shared = true;
        if (!is_shared) {
          bad.push_back(where.str() + " are not conforming");
          break;
        }
      }
    }
  }
  return bad;
}

std::vector<std::string> check_function(const PLFunction& f, const ComplexCheckOptions& opts) {
  auto bad = check_complex(f.complex, opts);
  if (f.values.size() != f.complex.vertices.size()) {
    bad.push_back("value count does not match vertex count");
    return bad;
  }
  double scale = 0.0;
  for (double v : f.values) scale = std::max(scale, std::abs(v));
  for (int v : boundary_vertices(f.complex))
    if (std::abs(f.values[static_cast<std::size_t>(v)]) > opts.eps * std::max(scale, 1.0))
      bad.push_back("boundary vertex " + std::to_string(v) + " has nonzero value");
  return bad;
}

}  // namespace plval
