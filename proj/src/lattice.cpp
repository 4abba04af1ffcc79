#include "plval/lattice.hpp"

#include "plval/convex_cell.hpp"
#include "plval/pl_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>

namespace plval {

namespace {

struct Frame {
  Vec center;
  double extent = 1.0;

  Vec to_unit(const Vec& x) const { return (x - center) / extent; }
  Vec from_unit(const Vec& u) const { return u * extent + center; }
};

Frame frame_of(std::initializer_list<const PLFunction*> fs, int n) {
  Vec lo = Vec::Constant(n, std::numeric_limits<double>::infinity());
  Vec hi = -lo;
  for (const auto* f : fs)
    for (const auto& v : f->complex.vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  Frame fr;
  if (!lo.allFinite()) {
    fr.center = Vec::Zero(n);
    return fr;
  }
  fr.center = (lo + hi) / 2.0;
  fr.extent = std::max((hi - lo).maxCoeff() / 2.0, 1e-300);
  return fr;
}

PLFunction to_frame(const PLFunction& f, const Frame& fr) {
  PLFunction out = f;
  for (auto& v : out.complex.vertices) v = fr.to_unit(v);
  return out;
}

// Facet hyperplanes of simplex s, oriented outward.
std::vector<Halfspace> simplex_facets(const SimplicialComplex& c, std::size_t s) {
  VertexPool scratch(c.dim, kEps);
  const auto pts = c.simplex_points(s);
  return simplex_cell(scratch, pts).constraints;
}

// Sign-canonical hyperplane: first clearly nonzero normal component positive.
Halfspace canonical(Halfspace h) {
  for (Eigen::Index i = 0; i < h.normal.size(); ++i) {
    if (std::abs(h.normal[i]) > 1e-12) {
      if (h.normal[i] < 0) {
        h.normal = -h.normal;
        h.offset = -h.offset;
      }
      break;
    }
  }
  return h;
}

void add_unique(std::vector<Halfspace>& planes, const Halfspace& h) {
  const Halfspace c = canonical(h);
  for (const auto& p : planes)
    if ((p.normal - c.normal).lpNorm<Eigen::Infinity>() <= 1e-11 && std::abs(p.offset - c.offset) <= 1e-11) return;
  planes.push_back(c);
}

bool boxes_disjoint(const PLFunction& f, const PLFunction& g, double tol) {
  if (f.empty() || g.empty()) return true;
  const int n = f.dim();
  Vec flo = Vec::Constant(n, std::numeric_limits<double>::infinity()), fhi = -flo;
  Vec glo = flo, ghi = fhi;
  for (const auto& v : f.complex.vertices) {
    flo = flo.cwiseMin(v);
    fhi = fhi.cwiseMax(v);
  }
  for (const auto& v : g.complex.vertices) {
    glo = glo.cwiseMin(v);
    ghi = ghi.cwiseMax(v);
  }
  return ((flo - ghi).array() > tol).any() || ((glo - fhi).array() > tol).any();
}

bool all_nonnegative(const PLFunction& f) {
  return std::all_of(f.values.begin(), f.values.end(), [](double v) { return v >= 0.0; });
}

PLFunction disjoint_union(const PLFunction& f, const PLFunction& g) {
  PLFunction out = f;
  if (out.complex.simplices.empty()) out.complex.dim = g.dim();
  const int shift = static_cast<int>(out.complex.vertices.size());
  out.complex.vertices.insert(out.complex.vertices.end(), g.complex.vertices.begin(), g.complex.vertices.end());
  out.values.insert(out.values.end(), g.values.begin(), g.values.end());
  for (auto s : g.complex.simplices) {
    for (auto& v : s) v += shift;
    out.complex.simplices.push_back(std::move(s));
  }
  return out;
}

// Collects simplices over pool ids into a PLFunction in original
// coordinates, dropping unused vertices.
class Assembler {
 public:
  Assembler(const VertexPool& pool, const Frame& fr, int n) : pool_(pool), frame_(fr) { out_.complex.dim = n; }

  void add(const std::vector<int>& simplex, const std::function<double(int)>& value) {
    std::vector<int> local;
    for (int id : simplex) {
      auto [it, inserted] = index_.try_emplace(id, static_cast<int>(out_.complex.vertices.size()));
      if (inserted) {
        out_.complex.vertices.push_back(frame_.from_unit(pool_.at(id)));
        out_.values.push_back(value(id));
      }
      local.push_back(it->second);
    }
    out_.complex.simplices.push_back(std::move(local));
  }

  PLFunction take() { return std::move(out_); }

 private:
  const VertexPool& pool_;
  Frame frame_;
  std::map<int, int> index_;
  PLFunction out_;
};

double unit_det(const VertexPool& pool, const std::vector<int>& simplex) {
  std::vector<Vec> pts;
  for (int id : simplex) pts.push_back(pool.at(id));
  return std::abs(signed_simplex_volume(pts)) * factorial(pool.dim());
}

void enforce_strict(const PLFunction& f, const char* what) {
  // Arrangements in n >= 3 legitimately contain thin cells, so only
  // numerically flat simplices count as degenerate here.
  ComplexCheckOptions opts;
  opts.eps = 1e-12;
  opts.min_determinant = 1e-16;
  const auto bad = check_function(f, opts);
  if (!bad.empty()) throw Error(ErrorCode::OverlayFailure, std::string(what) + ": " + bad.front());
}

}  // namespace

namespace {

// Upper and lower envelopes of k functions on one common refinement: the
// arrangement of every input simplex facet hyperplane, with each cell cut
// along {f_i = f_j} for all pairs. Every f_i - f_j is continuous, so the
// cuts agree on shared faces and the result is conforming.
LatticePair envelopes(std::span<const PLFunction> fs, bool want_join, bool want_meet, const OverlayOptions& opts) {
  const int n = fs.front().dim();
  const std::size_t k = fs.size();
  Vec lo_all = Vec::Constant(n, std::numeric_limits<double>::infinity()), hi_all = -lo_all;
  for (const auto& f : fs)
    for (const auto& v : f.complex.vertices) {
      lo_all = lo_all.cwiseMin(v);
      hi_all = hi_all.cwiseMax(v);
    }
  Frame fr;
  fr.center = (lo_all + hi_all) / 2.0;
  fr.extent = std::max((hi_all - lo_all).maxCoeff() / 2.0, 1e-300);

  std::vector<PLFunction> us;
  for (const auto& f : fs) us.push_back(to_frame(f, fr));
  std::vector<PLEvaluator> evals;
  evals.reserve(k);
  for (const auto& u : us) evals.emplace_back(u);

  double value_scale = 0.0, grad_scale = 0.0;
  std::vector<std::pair<Vec, Vec>> boxes;
  for (std::size_t i = 0; i < k; ++i) {
    for (double v : us[i].values) value_scale = std::max(value_scale, std::abs(v));
    for (std::size_t s = 0; s < us[i].complex.simplices.size(); ++s)
      grad_scale = std::max(grad_scale, evals[i].gradient(s).norm());
    Vec lo = Vec::Constant(n, std::numeric_limits<double>::infinity()), hi = -lo;
    for (const auto& v : us[i].complex.vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    boxes.emplace_back(lo, hi);
  }

  VertexPool pool(n, opts.snap_tol);
  const double margin = 1e-3;
  std::vector<Cell> cells{box_cell(pool, Vec::Constant(n, -1.0 - margin), Vec::Constant(n, 1.0 + margin))};
  auto centroid = [&](const Cell& c) {
    Vec m = Vec::Zero(n);
    for (int v : c.vertices) m += pool.at(v);
    return Vec(m / static_cast<double>(c.vertices.size()));
  };
  auto locate_any = [&](const Vec& x, std::size_t upto) {
    for (std::size_t i = 0; i <= upto; ++i)
      if (evals[i].locate(x)) return true;
    return false;
  };

  // Planes are applied input by input. Between rounds, cells that lie
  // outside the supports seen so far and miss the boxes of the remaining
  // inputs can never carry a nonzero value and are dropped.
  std::vector<Halfspace> seen;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Halfspace> fresh;
    for (std::size_t s = 0; s < us[i].complex.simplices.size(); ++s)
      for (const auto& h : simplex_facets(us[i].complex, s)) {
        const auto before = seen.size();
        add_unique(seen, h);
        if (seen.size() > before) fresh.push_back(seen.back());
      }
    for (const auto& h : fresh) {
      std::vector<Cell> next;
      next.reserve(cells.size() + 8);
      for (const auto& c : cells) {
        auto [in, out] = split_cell(c, pool, h);
        if (in) next.push_back(std::move(*in));
        if (out) next.push_back(std::move(*out));
      }
      cells = std::move(next);
    }
    std::erase_if(cells, [&](const Cell& c) {
      if (locate_any(centroid(c), i)) return false;
      Vec lo = pool.at(c.vertices.front()), hi = lo;
      for (int v : c.vertices) {
        lo = lo.cwiseMin(pool.at(v));
        hi = hi.cwiseMax(pool.at(v));
      }
      for (std::size_t j = i + 1; j < k; ++j) {
        const auto& [blo, bhi] = boxes[j];
        if (!(((lo - bhi).array() > opts.snap_tol).any() || ((blo - hi).array() > opts.snap_tol).any())) return false;
      }
      return true;
    });
  }

  std::map<int, std::vector<double>> values;
  auto value_at = [&](int id) -> const std::vector<double>& {
    auto it = values.find(id);
    if (it == values.end()) {
      std::vector<double> v(k);
      for (std::size_t i = 0; i < k; ++i) v[i] = evals[i](pool.at(id));
      it = values.emplace(id, std::move(v)).first;
    }
    return it->second;
  };

  Assembler join_out(pool, fr, n), meet_out(pool, fr, n);
  const double zero_tol = 1e-13 * std::max(value_scale, 1e-300);
  auto snapped = [&](double v) { return std::abs(v) <= zero_tol ? 0.0 : v; };
  auto join_value = [&](int id) {
    const auto& v = value_at(id);
    return snapped(*std::max_element(v.begin(), v.end()));
  };
  auto meet_value = [&](int id) {
    const auto& v = value_at(id);
    return snapped(*std::min_element(v.begin(), v.end()));
  };

  auto emit = [&](const Cell& piece) {
    for (const auto& simplex : triangulate_cell(piece, pool)) {
      if (unit_det(pool, simplex) <= 1e-16) continue;
      bool join_nonzero = false, meet_nonzero = false;
      for (int id : simplex) {
        join_nonzero |= want_join && join_value(id) != 0.0;
        meet_nonzero |= want_meet && meet_value(id) != 0.0;
      }
      if (join_nonzero) join_out.add(simplex, join_value);
      if (meet_nonzero) meet_out.add(simplex, meet_value);
    }
  };

  std::vector<std::optional<std::size_t>> piece_of(k);
  for (const auto& c : cells) {
    const Vec mid = centroid(c);
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
      piece_of[i] = evals[i].locate(mid);
      any = any || piece_of[i].has_value();
    }
    if (!any) continue;
    std::vector<Cell> pieces{c};
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        if (!piece_of[i] && !piece_of[j]) continue;
        // f_i - f_j is affine on the cell; cut along its zero set.
        Vec slope = Vec::Zero(n);
        if (piece_of[i]) slope += evals[i].gradient(*piece_of[i]);
        if (piece_of[j]) slope -= evals[j].gradient(*piece_of[j]);
        const double slope_norm = slope.norm();
        if (slope_norm <= 1e-12 * std::max(grad_scale, 1e-300)) continue;
        auto dist = [&](int id) {
          const auto& v = value_at(id);
          const double d = v[i] - v[j];
          if (std::abs(d) <= zero_tol) return 0.0;
          const double geometric = d / slope_norm;
          return std::abs(geometric) <= pool.tol() ? 0.0 : geometric;
        };
        const double at_mid = (piece_of[i] ? evals[i].affine_value(*piece_of[i], mid) : 0.0) -
                              (piece_of[j] ? evals[j].affine_value(*piece_of[j], mid) : 0.0);
        const Halfspace cut{slope / slope_norm, (slope.dot(mid) - at_mid) / slope_norm};
        std::vector<Cell> next;
        for (const auto& piece : pieces) {
          auto [below, above] = split_cell(piece, pool, cut, dist);
          if (below) next.push_back(std::move(*below));
          if (above) next.push_back(std::move(*above));
        }
        pieces = std::move(next);
      }
    for (const auto& piece : pieces) emit(piece);
  }

  LatticePair result{join_out.take(), meet_out.take()};
  if (opts.strict) {
    if (want_join) enforce_strict(result.join, "join");
    if (want_meet) enforce_strict(result.meet, "meet");
  }
  return result;
}

void require_same_dimension(std::span<const PLFunction> fs) {
  for (const auto& f : fs)
    if (f.dim() != fs.front().dim()) throw Error(ErrorCode::InvalidInput, "join/meet of functions of different dimension");
}

}  // namespace

LatticePair join_meet(const PLFunction& f, const PLFunction& g, const OverlayOptions& opts) {
  const std::vector<PLFunction> both{f, g};
  require_same_dimension(both);
  const int n = f.dim();
  if (boxes_disjoint(f, g, 0.0) && all_nonnegative(f) && all_nonnegative(g))
    return {disjoint_union(f, g), zero_function(n)};
  if (f.empty() && g.empty()) return {zero_function(n), zero_function(n)};
  return envelopes(both, true, true, opts);
}

PLFunction join(const PLFunction& f, const PLFunction& g, const OverlayOptions& opts) {
  return join_meet(f, g, opts).join;
}

PLFunction meet(const PLFunction& f, const PLFunction& g, const OverlayOptions& opts) {
  return join_meet(f, g, opts).meet;
}

PLFunction join_all(std::span<const PLFunction> fs, const OverlayOptions& opts) {
  if (fs.empty()) throw Error(ErrorCode::InvalidInput, "join of no functions");
  require_same_dimension(fs);
  if (fs.size() == 1) return fs.front();
  // Nonnegative inputs with pairwise disjoint boxes are simply collected.
  bool separate = true;
  for (std::size_t i = 0; i < fs.size() && separate; ++i) {
    separate = all_nonnegative(fs[i]);
    for (std::size_t j = i + 1; j < fs.size() && separate; ++j) separate = boxes_disjoint(fs[i], fs[j], 0.0);
  }
  if (separate) {
    PLFunction acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = disjoint_union(acc, fs[i]);
    return acc;
  }
  std::vector<PLFunction> nonempty;
  for (const auto& f : fs)
    if (!f.empty()) nonempty.push_back(f);
  if (nonempty.empty()) return zero_function(fs.front().dim());
  return envelopes(nonempty, true, false, opts).join;
}

PLFunction meet_all(std::span<const PLFunction> fs, const OverlayOptions& opts) {
  if (fs.empty()) throw Error(ErrorCode::InvalidInput, "meet of no functions");
  require_same_dimension(fs);
  if (fs.size() == 1) return fs.front();
  return envelopes(fs, false, true, opts).meet;
}

namespace {

// Tent over one simplex: max(0, A(x) - K * sum_j max(0, viol_j(x))), where A
// is f's affine piece and viol_j the signed distance beyond facet j. The
// support lies inside the simplex scaled by 1 + delta about its centroid.
PLFunction make_tent(const SimplicialComplex& c, const std::vector<double>& values, std::size_t s,
                     double delta, double lipschitz) {
  const int n = c.dim;
  const auto pts = c.simplex_points(s);
  double peak = 0.0;
  for (int v : c.simplices[s]) peak = std::max(peak, values[static_cast<std::size_t>(v)]);
  if (peak <= 0.0) return zero_function(n);

  Vec centroid = Vec::Zero(n);
  for (const auto& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  std::vector<Vec> grown;
  for (const auto& p : pts) grown.push_back(centroid + (1.0 + delta) * (p - centroid));

  // Work in coordinates where the grown simplex spans the unit box.
  PLFunction frame_probe;
  frame_probe.complex.dim = n;
  frame_probe.complex.vertices = grown;
  const Frame fr = frame_of({&frame_probe}, n);
  std::vector<Vec> unit_pts, unit_grown;
  for (const auto& p : pts) unit_pts.push_back(fr.to_unit(p));
  for (const auto& p : grown) unit_grown.push_back(fr.to_unit(p));

  VertexPool scratch(n, kEps);
  const auto facets = simplex_cell(scratch, unit_pts).constraints;
  const Vec gradient = simplex_gradient(c, values, s) * fr.extent;
  const double base = values[static_cast<std::size_t>(c.simplices[s][0])];
  const Vec origin = unit_pts[0];
  auto affine = [&](const Vec& x) { return base + gradient.dot(x - origin); };

  double diameter = 0.0, inner = std::numeric_limits<double>::infinity();
  const Vec unit_centroid = fr.to_unit(centroid);
  for (const auto& p : unit_pts) diameter = std::max(diameter, (p - unit_centroid).norm() * 2.0);
  for (const auto& h : facets) inner = std::min(inner, -h.signed_distance(unit_centroid));
  const double lip = lipschitz * fr.extent;
  const double steep =
      (peak + gradient.norm() * delta * diameter) / (delta * inner) + 2.0 * lip + gradient.norm();

  auto tent_raw = [&](const Vec& x) {
    double excess = 0.0;
    for (const auto& h : facets) excess += std::max(0.0, h.signed_distance(x));
    return affine(x) - steep * excess;
  };

  VertexPool pool(n, kEps);
  std::vector<Cell> cells{simplex_cell(pool, unit_grown)};
  for (const auto& h : facets) {
    std::vector<Cell> next;
    for (const auto& cell : cells) {
      auto [in, out] = split_cell(cell, pool, h);
      if (in) next.push_back(std::move(*in));
      if (out) next.push_back(std::move(*out));
    }
    cells = std::move(next);
  }

  const double zero_tol = 1e-13 * peak;
  Assembler out(pool, fr, n);
  auto value = [&](int id) {
    const double v = tent_raw(pool.at(id));
    return v <= zero_tol ? 0.0 : v;
  };
  for (const auto& cell : cells) {
    Vec mid = Vec::Zero(n);
    for (int v : cell.vertices) mid += pool.at(v);
    mid /= static_cast<double>(cell.vertices.size());
    Vec slope = gradient;
    for (const auto& h : facets)
      if (h.signed_distance(mid) > 0.0) slope -= steep * h.normal;
    const double slope_norm = slope.norm();
    std::optional<Cell> positive = cell;
    if (slope_norm > 0.0) {
      const Halfspace cut{-slope / slope_norm, (tent_raw(mid) - slope.dot(mid)) / slope_norm};
      auto dist = [&](int id) {
        const double v = tent_raw(pool.at(id));
        if (std::abs(v) <= zero_tol) return 0.0;
        const double geometric = -v / slope_norm;
        return std::abs(geometric) <= pool.tol() ? 0.0 : geometric;
      };
      positive = split_cell(cell, pool, cut, dist).first;
    }
    if (!positive) continue;
    for (const auto& simplex : triangulate_cell(*positive, pool)) {
      if (unit_det(pool, simplex) <= 1e-16) continue;
      bool nonzero = false;
      for (int id : simplex) nonzero |= value(id) != 0.0;
      if (nonzero) out.add(simplex, value);
    }
  }
  return out.take();
}

bool verify_tents(const PLFunction& f, const std::vector<PLFunction>& tents, const TentOptions& opts) {
  const int n = f.dim();
  const PLEvaluator ef(f);
  std::vector<PLEvaluator> et;
  et.reserve(tents.size());
  for (const auto& t : tents) et.emplace_back(t);

  Vec lo = f.complex.vertices.front(), hi = lo;
  for (const auto& v : f.complex.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vec pad = (hi - lo) * 0.05;
  lo -= pad;
  hi += pad;
  double scale = 0.0;
  for (double v : f.values) scale = std::max(scale, std::abs(v));
  const double tol = 1e-9 * scale;

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto sample_box = [&] {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    return x;
  };
  // Join identity.
  for (int k = 0; k < opts.samples; ++k) {
    const Vec x = sample_box();
    double best = 0.0;
    for (const auto& e : et) best = std::max(best, e(x));
    if (std::abs(best - ef(x)) > tol) return false;
  }
  // Midpoint concavity on each tent's support.
  for (std::size_t i = 0; i < tents.size(); ++i) {
    if (tents[i].empty()) continue;
    const auto& verts = tents[i].complex.vertices;
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    for (int k = 0; k < opts.samples / static_cast<int>(tents.size()) + 16; ++k) {
      // Random points in the support via convex combinations of its vertices.
      auto point = [&] {
        Vec x = Vec::Zero(n);
        double total = 0.0;
        for (int j = 0; j <= n; ++j) {
          const double w = unit(rng) + 1e-3;
          x += w * verts[pick(rng)];
          total += w;
        }
        return Vec(x / total);
      };
      const Vec a = point(), b = point();
      const double mid = et[i]((a + b) / 2.0);
      if (mid < (et[i](a) + et[i](b)) / 2.0 - tol) return false;
    }
  }
  return true;
}

}  // namespace

TentDecomposition tent_decomposition(const PLFunction& f, const TentOptions& opts) {
  for (double v : f.values)
    if (v < 0.0) throw Error(ErrorCode::NotNonnegative, "tent decomposition needs f >= 0");
  if (f.empty() || std::all_of(f.values.begin(), f.values.end(), [](double v) { return v == 0.0; }))
    throw Error(ErrorCode::InvalidInput, "tent decomposition of the zero function");

  double lipschitz = 0.0;
  for (const auto& g : gradient_field(f)) lipschitz = std::max(lipschitz, g.gradient.norm());

  double delta = opts.delta;
  for (int attempt = 0; attempt <= opts.max_halvings; ++attempt, delta /= 2.0) {
    TentDecomposition out;
    out.delta = delta;
    for (std::size_t s = 0; s < f.complex.simplices.size(); ++s)
      out.tents.push_back(make_tent(f.complex, f.values, s, delta, lipschitz));
    if (verify_tents(f, out.tents, opts)) return out;
  }
  throw Error(ErrorCode::Degenerate, "tent decomposition failed verification at every enlargement");
}

}  // namespace plval
