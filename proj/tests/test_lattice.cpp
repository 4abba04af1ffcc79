#include "plval/integration.hpp"
#include "plval/lattice.hpp"
#include "plval/pl_function.hpp"
#include "plval/random.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plval;

namespace {

// Pointwise comparison of h against op(f, g) at random points of a box
// around both supports, plus every vertex of all three complexes.
template <class Op>
double max_pointwise_error(const PLFunction& h, const PLFunction& f, const PLFunction& g, Op op, std::uint64_t seed) {
  const int n = f.dim();
  Vec lo = Vec::Constant(n, 1e300), hi = Vec::Constant(n, -1e300);
  std::vector<Vec> probes;
  for (const PLFunction* u : {&f, &g, &h})
    for (const auto& v : u->complex.vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
      probes.push_back(v);
    }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-0.1, 1.1);
  for (int i = 0; i < 3000; ++i) {
    Vec x(n);
    for (int k = 0; k < n; ++k) x[k] = lo[k] + (hi[k] - lo[k]) * unit(rng);
    probes.push_back(x);
  }
  const PLEvaluator ef(f), eg(g), eh(h);
  double err = 0.0;
  for (const auto& x : probes) err = std::max(err, std::abs(eh(x) - op(ef(x), eg(x))));
  return err;
}

const auto kMax = [](double a, double b) { return std::max(a, b); };
const auto kMin = [](double a, double b) { return std::min(a, b); };

}  // namespace

TEST(Lattice, JoinMeetPointwise2d) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto [f, g] = random_pair(seed, 2);
    OverlayOptions strict;
    strict.strict = true;
    const LatticePair lp = join_meet(f, g, strict);
    EXPECT_LT(max_pointwise_error(lp.join, f, g, kMax, seed), 1e-10) << seed;
    EXPECT_LT(max_pointwise_error(lp.meet, f, g, kMin, seed), 1e-10) << seed;
    EXPECT_TRUE(check_function(lp.join).empty());
    // Integral of max + min equals integral of f + g.
    EXPECT_NEAR(lq_integral(lp.join, 1) + lq_integral(lp.meet, 1), lq_integral(f, 1) + lq_integral(g, 1), 1e-11);
  }
}

TEST(Lattice, JoinMeetPointwise3dSmall) {
  // Cube-shaped cones keep the 3D arrangement small.
  std::vector<Vec> cube;
  for (int m = 0; m < 8; ++m) {
    Vec v(3);
    v << (m & 1 ? 1 : -1), (m & 2 ? 1 : -1), (m & 4 ? 1 : -1);
    cube.push_back(v);
  }
  const PLFunction f = cone_function(hull_from_points(cube));
  Vec t(3);
  t << 0.5, 0.3, -0.2;
  const PLFunction g = scale_values(translate(f, t), 1.3);
  const LatticePair lp = join_meet(f, g);
  EXPECT_LT(max_pointwise_error(lp.join, f, g, kMax, 1), 1e-10);
  EXPECT_LT(max_pointwise_error(lp.meet, f, g, kMin, 1), 1e-10);
  EXPECT_TRUE(check_function(lp.join).empty());
  EXPECT_NEAR(lq_integral(lp.join, 2) + lq_integral(lp.meet, 2), lq_integral(f, 2) + lq_integral(g, 2), 1e-10);
}

TEST(Lattice, LatticeLaws) {
  std::mt19937_64 rng(17);
  const PLFunction f = random_cone_function(rng, 2);
  const PLFunction g = random_cone_function(rng, 2);
  // Idempotence.
  EXPECT_LT(max_pointwise_error(join(f, f), f, f, kMax, 2), 1e-12);
  EXPECT_LT(max_pointwise_error(meet(f, f), f, f, kMin, 2), 1e-12);
  // Commutativity, pointwise.
  const PLFunction fg = join(f, g), gf = join(g, f);
  EXPECT_LT(max_pointwise_error(fg, gf, gf, kMax, 3), 1e-12);
  // Absorption: f v (f ^ g) = f.
  const PLFunction absorbed = join(f, meet(f, g));
  EXPECT_LT(max_pointwise_error(absorbed, f, f, kMax, 4), 1e-12);
  // Associativity against the n-ary fold.
  const PLFunction h = random_cone_function(rng, 2);
  const std::vector<PLFunction> all{f, g, h};
  const PLFunction left = join(join(f, g), h);
  const PLFunction folded = join_all(all);
  EXPECT_LT(max_pointwise_error(folded, left, left, kMax, 5), 1e-10);
  const PLFunction low = meet_all(all);
  EXPECT_LT(max_pointwise_error(low, meet(f, g), h, kMin, 6), 1e-10);
}

TEST(Lattice, DisjointSupports) {
  std::mt19937_64 rng(23);
  const PLFunction f = random_cone_function(rng, 2);
  Vec far(2);
  far << 20.0, 0.0;
  const PLFunction g = translate(random_cone_function(rng, 2), far);
  const LatticePair lp = join_meet(f, g);
  EXPECT_TRUE(lp.meet.empty() || lq_integral(lp.meet, 1) < 1e-14);
  EXPECT_NEAR(lq_integral(lp.join, 1), lq_integral(f, 1) + lq_integral(g, 1), 1e-12);
  // Zero function is the bottom element.
  const LatticePair with_zero = join_meet(f, zero_function(2));
  EXPECT_NEAR(lq_integral(with_zero.join, 1), lq_integral(f, 1), 1e-13);
  EXPECT_TRUE(with_zero.meet.empty());
}

TEST(Lattice, DimensionMismatch) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(join(random_cone_function(rng, 2), random_cone_function(rng, 3)), Error);
  EXPECT_THROW(join_all(std::vector<PLFunction>{}), Error);
}

TEST(Lattice, TentsRebuildTheFunction) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const PLFunction f = random_star_function(seed);
    const TentDecomposition d = tent_decomposition(f);
    ASSERT_EQ(d.tents.size(), f.complex.simplices.size());
    EXPECT_GT(d.delta, 0.0);
    const PLFunction rebuilt = join_all(d.tents);
    EXPECT_LT(max_pointwise_error(rebuilt, f, f, kMax, seed), 1e-10);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (const auto& tent : d.tents) {
      EXPECT_TRUE(check_function(tent).empty());
      // Concave on its support: midpoint inequality for pairs of support
      // points.
      const PLEvaluator e(tent);
      int checked = 0;
      while (checked < 300) {
        Vec a(2), b(2);
        a << u(rng), u(rng);
        b << u(rng), u(rng);
        if (!e.locate(a) || !e.locate(b)) continue;
        ++checked;
        EXPECT_GE(e(0.5 * (a + b)) + 1e-12, 0.5 * (e(a) + e(b)));
      }
    }
  }
}

TEST(Lattice, TentErrors) {
  PLFunction f = random_star_function(3);
  try {
    tent_decomposition(scale_values(f, -1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotNonnegative);
  }
  EXPECT_THROW(tent_decomposition(zero_function(2)), Error);
}
