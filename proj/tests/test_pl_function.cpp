#include "oracles.hpp"

#include "plval/pl_function.hpp"
#include "plval/random.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plval;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

}  // namespace

TEST(PLFunction, ConeFunctionMatchesGauge) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Polytope p = random_polytope(seed, 2, 5 + seed % 4);
    const PLFunction f = cone_function(p);
    EXPECT_TRUE(check_function(f).empty());
    std::vector<oracle::P2> pts;
    for (const auto& v : p.vertices()) pts.emplace_back(v[0], v[1]);
    const auto hull = oracle::hull2(pts);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const PLEvaluator eval(f);
    for (int i = 0; i < 500; ++i) {
      const Vec x = v2(u(rng), u(rng));
      const double expected = std::max(0.0, 1.0 - oracle::gauge2(hull, oracle::P2(x[0], x[1])));
      EXPECT_NEAR(evaluate(f, x), expected, 1e-12);
      EXPECT_NEAR(eval(x), expected, 1e-12);
    }
    EXPECT_NEAR(evaluate(f, Vec::Zero(2)), 1.0, 1e-15);
    for (const auto& v : p.vertices()) EXPECT_NEAR(evaluate(f, v), 0.0, 1e-14);
  }
}

TEST(PLFunction, GradientOfConeIsNormalOverSupport) {
  const Polytope p = random_polytope(3, 3, 9);
  const PLFunction f = cone_function(p);
  // Each cone simplex lies over one facet, where grad l_P = -u / h.
  for (const auto& g : gradient_field(f)) {
    bool matched = false;
    for (const auto& facet : p.facets())
      matched = matched || (g.gradient + facet.normal / facet.support).norm() < 1e-10;
    EXPECT_TRUE(matched);
  }
}

TEST(PLFunction, ScaleComposeTranslate) {
  std::mt19937_64 rng(8);
  const PLFunction f = random_cone_function(rng, 2);
  const PLFunction g = scale_values(f, -1.5);
  Mat phi(2, 2);
  phi << 1.0, 0.7, 0.0, 1.0;
  const Vec t = v2(0.3, -2.0);
  const PLFunction moved = compose_affine(f, phi, t);
  const PLFunction shifted = translate(f, t);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 300; ++i) {
    const Vec x = v2(u(rng), u(rng));
    EXPECT_NEAR(evaluate(g, x), -1.5 * evaluate(f, x), 1e-14);
    EXPECT_NEAR(evaluate(moved, phi * x + t), evaluate(f, x), 1e-12);
    EXPECT_NEAR(evaluate(shifted, x + t), evaluate(f, x), 1e-12);
  }
  EXPECT_THROW(compose_affine(f, Mat::Zero(2, 2), t), Error);
}

TEST(PLFunction, OutsideSupportIsZero) {
  std::mt19937_64 rng(2);
  const PLFunction f = random_cone_function(rng, 3);
  Vec far = Vec::Constant(3, 50.0);
  EXPECT_EQ(evaluate(f, far), 0.0);
  EXPECT_EQ(evaluate(zero_function(2), v2(0, 0)), 0.0);
}

TEST(PLFunction, CheckerCatchesViolations) {
  // Hanging vertex: the edge (0,0)-(2,0) of the lower triangle carries a
  // vertex of the upper pair.
  PLFunction f;
  f.complex.dim = 2;
  f.complex.vertices = {v2(0, 0), v2(2, 0), v2(1, -1), v2(1, 0), v2(1, 1)};
  f.complex.simplices = {{0, 1, 2}, {0, 3, 4}, {1, 3, 4}};
  f.values = {0, 0, 0, 0, 0};
  EXPECT_FALSE(check_complex(f.complex).empty());

  // Nonzero value on the boundary of the support.
  PLFunction g;
  g.complex.dim = 2;
  g.complex.vertices = {v2(0, 0), v2(1, 0), v2(0, 1)};
  g.complex.simplices = {{0, 1, 2}};
  g.values = {1, 0, 0};
  EXPECT_FALSE(check_function(g).empty());

  // Degenerate simplex.
  PLFunction d = g;
  d.complex.vertices[2] = v2(2, 0);
  d.values = {0, 0, 0};
  EXPECT_FALSE(check_complex(d.complex).empty());

  // Overlapping interiors.
  PLFunction o;
  o.complex.dim = 2;
  o.complex.vertices = {v2(0, 0), v2(2, 0), v2(0, 2), v2(0.5, 0.5), v2(3, 0.5), v2(0.5, 3)};
  o.complex.simplices = {{0, 1, 2}, {3, 4, 5}};
  EXPECT_FALSE(check_complex(o.complex).empty());

  // Wrong value count.
  PLFunction w = g;
  w.values = {0, 0};
  EXPECT_FALSE(check_function(w).empty());
}

TEST(PLFunction, BoundaryVerticesOfStar) {
  const PLFunction f = random_star_function(4);
  const auto b = boundary_vertices(f.complex);
  EXPECT_EQ(b.size(), 6u);
  EXPECT_TRUE(std::find(b.begin(), b.end(), 0) == b.end());
  EXPECT_TRUE(check_function(f).empty());
}
