#include "oracles.hpp"

#include "plval/polytope.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plval;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

Polytope square() { return hull_from_points(std::vector<Vec>{v2(-1, -1), v2(1, -1), v2(1, 1), v2(-1, 1)}); }

std::vector<oracle::P2> as_p2(const std::vector<Vec>& vs) {
  std::vector<oracle::P2> out;
  for (const auto& v : vs) out.emplace_back(v[0], v[1]);
  return out;
}

}  // namespace

TEST(Polytope, SquareFunctionals) {
  const Polytope p = square();
  EXPECT_EQ(p.vertices().size(), 4u);
  EXPECT_EQ(p.facets().size(), 4u);
  EXPECT_NEAR(volume(p), 4.0, 1e-14);
  EXPECT_NEAR(volume(polar(p)), 2.0, 1e-14);
  EXPECT_NEAR(support(p, v2(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(support(p, v2(1, 1) / std::sqrt(2.0)), std::sqrt(2.0), 1e-15);
  // Every facet has support 1 and length 2, so S_p = 8 for every p.
  for (double e : {1.0, 1.5, 2.0, 3.0}) EXPECT_NEAR(p_surface_area(p, e), 8.0, 1e-13);
  EXPECT_TRUE(check_invariants(p).empty());
}

TEST(Polytope, InteriorPointsAreDiscarded) {
  const Polytope p = hull_from_points(std::vector<Vec>{v2(-1, -1), v2(1, -1), v2(1, 1), v2(-1, 1), v2(0.2, 0.3), v2(0, 1)});
  EXPECT_EQ(p.vertices().size(), 4u);
  EXPECT_NEAR(volume(p), 4.0, 1e-14);
}

TEST(Polytope, Errors) {
  try {
    hull_from_points(std::vector<Vec>{v2(0.5, 0.5), v2(2, 0.5), v2(2, 2), v2(0.5, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OriginNotInterior);
  }
  try {
    hull_from_points(std::vector<Vec>{v2(-1, -1), v2(0, 0), v2(1, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Degenerate);
  }
  // Origin on the boundary is not interior.
  EXPECT_THROW(hull_from_points(std::vector<Vec>{v2(0, -1), v2(1, -1), v2(1, 1), v2(0, 1)}), Error);
  Mat singular = Mat::Zero(2, 2);
  singular(0, 0) = 1.0;
  try {
    apply_unimodular(square(), singular, LinearMapMode::General);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(Polytope, RandomPolygonsAgainstMonotoneChain) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Polytope p = random_polytope(seed, 2, 3 + seed % 9);
    ASSERT_TRUE(check_invariants(p).empty()) << seed;
    const auto hull = oracle::hull2(as_p2(p.vertices()));
    EXPECT_EQ(hull.size(), p.vertices().size());
    const double area = oracle::polygon_area(hull);
    EXPECT_NEAR(volume(p), area, 1e-12 * area);
    // The polar polygon from the oracle: vertices are edge normals divided
    // by the edge support.
    std::vector<oracle::P2> dual;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto& a = hull[i];
      const auto& b = hull[(i + 1) % hull.size()];
      const oracle::P2 normal(b.y() - a.y(), a.x() - b.x());
      dual.push_back(normal / normal.dot(a));
    }
    const double dual_area = oracle::polygon_area(oracle::hull2(dual));
    EXPECT_NEAR(volume(polar(p)), dual_area, 1e-10 * dual_area) << seed;
    // Perimeter-type functional: sum of edge length times support^(1-p).
    for (double e : {1.0, 1.5, 2.0}) {
      double s = 0.0;
      for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        const oracle::P2 normal = oracle::P2(b.y() - a.y(), a.x() - b.x()).normalized();
        s += (b - a).norm() * std::pow(normal.dot(a), 1.0 - e);
      }
      EXPECT_NEAR(p_surface_area(p, e), s, 1e-11 * s);
    }
  }
}

TEST(Polytope, PolarIsAnInvolution) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (int n : {2, 3}) {
      const Polytope p = random_polytope(seed, n, n + 5);
      EXPECT_NEAR(volume(polar(polar(p))), volume(p), 1e-9 * volume(p));
    }
  }
}

TEST(Polytope, KnownSolids) {
  // Cube [-1,1]^3: volume 8, polar is the cross-polytope of volume 4/3.
  std::vector<Vec> cube;
  for (int m = 0; m < 8; ++m) cube.push_back(v3(m & 1 ? 1 : -1, m & 2 ? 1 : -1, m & 4 ? 1 : -1));
  const Polytope c = hull_from_points(cube);
  EXPECT_EQ(c.facets().size(), 6u);
  EXPECT_NEAR(volume(c), 8.0, 1e-13);
  EXPECT_NEAR(volume(polar(c)), 4.0 / 3.0, 1e-13);
  EXPECT_NEAR(p_surface_area(c, 1.0), 24.0, 1e-12);
  // Simplex with vertices e1, e2, e3 and -(1,1,1): determinant formula.
  const std::vector<Vec> s{v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1), v3(-1, -1, -1)};
  Mat edges(3, 3);
  for (int i = 0; i < 3; ++i) edges.col(i) = s[static_cast<std::size_t>(i)] - s[3];
  EXPECT_NEAR(volume(hull_from_points(s)), std::abs(edges.determinant()) / 6.0, 1e-14);
}

TEST(Polytope, VolumeMonteCarlo3d) {
  // Sampled fraction of the bounding box inside P (membership by facet
  // inequalities of a hull recomputed from the same points) agrees with the
  // exact volume to a few standard errors.
  const Polytope p = random_polytope(11, 3, 12);
  Vec lo = p.vertices().front(), hi = lo;
  for (const auto& v : p.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int samples = 200000;
  int inside = 0;
  for (int i = 0; i < samples; ++i) {
    Vec x(3);
    for (int k = 0; k < 3; ++k) x[k] = lo[k] + (hi[k] - lo[k]) * u(rng);
    bool in = true;
    for (const auto& f : p.facets()) in = in && f.normal.dot(x) <= f.support;
    inside += in ? 1 : 0;
  }
  const double box = (hi - lo).prod();
  const double frac = static_cast<double>(inside) / samples;
  const double sigma = box * std::sqrt(frac * (1 - frac) / samples);
  EXPECT_NEAR(volume(p), box * frac, 5 * sigma);
}

TEST(Polytope, UnimodularAndScaling) {
  std::mt19937_64 rng(3);
  for (int n : {2, 3}) {
    const Polytope p = random_polytope(4, n, n + 4);
    Mat phi = Mat::Identity(n, n);
    phi(0, n - 1) = 1.7;
    phi(n - 1, 0) = -0.4;
    phi = phi * (1.0 / std::pow(std::abs(phi.determinant()), 1.0 / n));
    EXPECT_NEAR(volume(apply_unimodular(p, phi)), volume(p), 1e-11 * volume(p));
    EXPECT_NEAR(volume(scale(p, 0.5)), std::pow(0.5, n) * volume(p), 1e-13);
    // Polar of a dilate is the reciprocal dilate of the polar.
    EXPECT_NEAR(volume(polar(scale(p, 2.0))), std::pow(0.5, n) * volume(polar(p)), 1e-11 * volume(polar(p)));
  }
  Mat stretch = Mat::Identity(2, 2);
  stretch(0, 0) = 2.0;
  EXPECT_THROW(apply_unimodular(square(), stretch), Error);
  EXPECT_NEAR(volume(apply_unimodular(square(), stretch, LinearMapMode::General)), 8.0, 1e-13);
}

TEST(Polytope, TranslationKeepsShape) {
  const AnchoredPolytope a = translate(square(), v2(10, -3));
  EXPECT_NEAR(a.volume(), 4.0, 1e-14);
  const auto vs = a.vertices();
  double minx = 1e9;
  for (const auto& v : vs) minx = std::min(minx, v[0]);
  EXPECT_NEAR(minx, 9.0, 1e-14);
  const AnchoredPolytope b = translate(a, v2(-10, 3));
  EXPECT_NEAR(b.offset().norm(), 0.0, 1e-14);
}

TEST(Polytope, CentralTriangulationCoversP) {
  for (int n : {2, 3}) {
    const Polytope p = random_polytope(9, n, n + 6);
    const SimplicialComplex c = central_triangulation(p);
    EXPECT_NEAR(c.total_volume(), volume(p), 1e-12 * volume(p));
    EXPECT_TRUE(check_complex(c).empty());
    EXPECT_NEAR(c.vertices[0].norm(), 0.0, 0.0);
  }
}

TEST(Polytope, RandomIsDeterministic) {
  const Polytope a = random_polytope(42, 3, 9), b = random_polytope(42, 3, 9);
  ASSERT_EQ(a.vertices().size(), b.vertices().size());
  for (std::size_t i = 0; i < a.vertices().size(); ++i) EXPECT_EQ((a.vertices()[i] - b.vertices()[i]).norm(), 0.0);
}
