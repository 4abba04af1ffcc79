#include "oracles.hpp"

#include "plval/integration.hpp"
#include "plval/pl_function.hpp"
#include "plval/random.hpp"
#include "plval/valuation.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plval;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Polytope square() { return hull_from_points(std::vector<Vec>{v2(-1, -1), v2(1, -1), v2(1, 1), v2(-1, 1)}); }

}  // namespace

TEST(Kernel, Evaluation) {
  const ValuationKernel p = ValuationKernel::power(2.0, 1.5);
  EXPECT_NEAR(p(4.0), 16.0, 1e-14);
  EXPECT_NEAR(p(-4.0), 16.0, 1e-14);
  EXPECT_EQ(p(0.0), 0.0);
  // x on [0, 1], 2x - x^2 ... continued beyond the ends.
  const ValuationKernel pp(PiecewisePolyKernel{{0.0, 1.0, 2.0}, {{0.0, 1.0}, {-1.0, 2.0, 0.0}}, std::nullopt, 2.0});
  EXPECT_NEAR(pp(0.5), 0.5, 1e-15);
  EXPECT_NEAR(pp(1.5), 2.0, 1e-15);
  EXPECT_NEAR(pp(4.0), 3.0 * 4.0, 1e-12);  // 3 (x/2)^2 matched at x = 2
  EXPECT_NEAR(pp(-1.0), -1.0, 1e-15);      // polynomial continuation
  EXPECT_TRUE(pp.check_invariants().empty());
  const ValuationKernel tab(TabulatedKernel{{1.0, 2.0, 4.0}, {1.0, 4.0, 16.0}});
  EXPECT_NEAR(tab(3.0), 10.0, 1e-14);
  EXPECT_NEAR(tab(8.0), 64.0, 1e-10);  // power law through the outer pair
  EXPECT_EQ(tab(-3.0), 0.0);           // no samples on the negative side
  EXPECT_EQ(tab(0.0), 0.0);
  const ValuationKernel s = ValuationKernel::sum({p, tab});
  EXPECT_NEAR(s(2.0), p(2.0) + tab(2.0), 1e-14);
  EXPECT_NEAR(p.scaled(3.0)(1.0), 6.0, 1e-15);
  EXPECT_NEAR(pp.reflected()(-0.5), 0.5, 1e-15);
  const auto b = pp.breakpoints();
  EXPECT_TRUE(std::find(b.begin(), b.end(), 0.0) != b.end());
}

TEST(Kernel, Validation) {
  const ValuationKernel jump(PiecewisePolyKernel{{0.0, 1.0, 2.0}, {{0.0, 1.0}, {5.0}}, {}, {}});
  EXPECT_FALSE(jump.check_invariants().empty());
  EXPECT_THROW(jump.validate(), Error);
  const ValuationKernel offset(PiecewisePolyKernel{{-1.0, 1.0}, {{0.5, 1.0}}, {}, {}});
  try {
    offset.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KernelNonzeroAtZero);
  }
  EXPECT_THROW(ValuationKernel(TabulatedKernel{{2.0, 1.0}, {1.0, 1.0}}).validate(), Error);
}

TEST(Valuation, PowerKernelOnCones) {
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    for (int n : {2, 3}) {
      const Polytope p = random_polytope(seed, n, n + 4);
      for (double q : {1.0, 1.5, 2.0})
        EXPECT_NEAR(apply(ValuationKernel::power(1, q), cone_function(p)), c_pn(q, n) * volume(p), 1e-11 * volume(p));
    }
  EXPECT_NEAR(apply(ValuationKernel::power(1, 1), cone_function(square())), 4.0 / 3.0, 1e-15);
  EXPECT_EQ(apply(ValuationKernel::power(1, 2), zero_function(2)), 0.0);
  EXPECT_NEAR(apply(homogeneous_kernel(1.0, 1.5, 2), cone_function(square())), 4.0, 1e-13);
}

TEST(Valuation, FiniteDifferenceWeightsExactOnPolynomials) {
  const std::vector<double> nodes{-0.2, -0.1, 0.0, 0.1, 0.2, 0.3};
  const auto w = fd_weights(0.05, nodes, 3);
  // Cubic p(x) = 1 - 2x + x^2 + 4x^3.
  auto p = [](double x) { return 1 - 2 * x + x * x + 4 * x * x * x; };
  const double z = 0.05;
  const double exact[4] = {p(z), -2 + 2 * z + 12 * z * z, 2 + 24 * z, 24};
  for (int m = 0; m <= 3; ++m) {
    double est = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) est += w[static_cast<std::size_t>(m)][i] * p(nodes[i]);
    EXPECT_NEAR(est, exact[m], 1e-9) << m;
  }
}

TEST(Valuation, ProfileOfPowerKernel) {
  const CProfile profile = c_profile(ValuationKernel::power(1, 2), square(), uniform_grid(0.0, 1.0, 0.25));
  ASSERT_EQ(profile.s.size(), 5u);
  for (std::size_t i = 0; i < profile.s.size(); ++i) {
    const double s = profile.s[i];
    EXPECT_NEAR(profile.c[i], s * s / 6.0, 1e-15);
    EXPECT_NEAR(profile.derivatives[1][i], s / 3.0, 1e-12);
    EXPECT_NEAR(profile.derivatives[2][i], 1.0 / 3.0, 1e-11);
  }
  EXPECT_NEAR(profile.polytope_volume, 4.0, 1e-14);
  EXPECT_THROW(c_profile(ValuationKernel::power(1, 2), square(), uniform_grid(0.0, 0.3, 0.1)), Error);
  EXPECT_THROW(make_profile(2, {0.0, 0.1, 0.2, 0.35, 0.4, 0.5}, {0, 0, 0, 0, 0, 0}), Error);
}

TEST(Valuation, RecoveryRoundTrip) {
  for (double q : {1.0, 2.0, 1.5, 2.5}) {
    const CProfile profile = c_profile(ValuationKernel::power(1, q), square(), uniform_grid(0.0, 2.0, 1e-2));
    const TabulatedKernel h = recover_kernel(profile, 2);
    ASSERT_FALSE(h.s.empty());
    double worst = 0.0;
    for (std::size_t i = 0; i < h.s.size(); ++i) worst = std::max(worst, std::abs(h.h[i] / std::pow(h.s[i], q) - 1));
    EXPECT_LT(worst, q == std::floor(q) ? 1e-9 : 1e-3) << q;
  }
  // A polynomial kernel in 3D through a sum: h = s + s^3.
  std::vector<Vec> cube;
  for (int m = 0; m < 8; ++m) {
    Vec v(3);
    v << (m & 1 ? 1 : -1), (m & 2 ? 1 : -1), (m & 4 ? 1 : -1);
    cube.push_back(v);
  }
  const ValuationKernel h = ValuationKernel::sum({ValuationKernel::power(1, 1), ValuationKernel::power(1, 3)});
  const TabulatedKernel r = recover_kernel(c_profile(h, hull_from_points(cube), uniform_grid(0.0, 1.0, 0.02)), 3);
  for (std::size_t i = 0; i < r.s.size(); ++i) EXPECT_NEAR(r.h[i], h(r.s[i]), 1e-8 * h(r.s[i]));
  // Zero profile recovers the zero kernel.
  const TabulatedKernel zero = recover_kernel(make_profile(2, uniform_grid(0, 1, 0.1), std::vector<double>(11, 0.0)), 2);
  for (double v : zero.h) EXPECT_EQ(v, 0.0);
}

TEST(Valuation, PsiRecursion) {
  const ValuationKernel h = ValuationKernel::power(1, 2);
  const Polytope p = square();
  const CProfile profile = c_profile(h, p, uniform_grid(0.0, 2.0, 1e-2));
  for (int k = 1; k <= 2; ++k)
    for (double s : {0.5, 1.0, 1.5}) {
      const PropertyReport r = psi_check(h, profile, k, s);
      EXPECT_TRUE(r.passed) << k << " " << s << " " << r.residual;
    }
  // At k = n the right side is n! |P| h(s).
  const PropertyReport top = psi_check(h, profile, 2, 1.0);
  EXPECT_NEAR(top.rhs, 2.0 * 4.0 * 1.0, 1e-6);
  EXPECT_THROW(psi_check(h, profile, 1, -0.5), Error);
}

TEST(Valuation, GrowthClassification) {
  const GrowthReport inside = growth_check(ValuationKernel::power(1, 1.5), 1.0, 2);
  EXPECT_TRUE(inside.passed());
  EXPECT_NEAR(inside.low_exponent, 1.5, 1e-6);
  EXPECT_NEAR(inside.high_exponent, 1.5, 1e-6);
  const GrowthReport too_flat = growth_check(ValuationKernel::power(1, 0.5), 1.0, 2);
  EXPECT_FALSE(too_flat.low_pass);
  const GrowthReport too_steep = growth_check(ValuationKernel::power(1, 3), 1.0, 2);
  EXPECT_FALSE(too_steep.high_pass);
  // x + x^2 grows like x near 0 and like x^2 far out.
  const GrowthReport mixed =
      growth_check(ValuationKernel::sum({ValuationKernel::power(1, 1), ValuationKernel::power(1, 2)}), 1.0, 2);
  EXPECT_TRUE(mixed.passed());
  EXPECT_NEAR(mixed.low_exponent, 1.0, 0.01);
  EXPECT_NEAR(mixed.high_exponent, 2.0, 0.02);
  // Derivative classes: x h'(x) of a power kernel has the same exponent.
  EXPECT_TRUE(growth_check(ValuationKernel::power(1, 1.5), 1.0, 2, 1).passed());
  EXPECT_THROW(growth_check(ValuationKernel::power(1, 1.5), 2.0, 2), Error);
  // |x|^2 has constant second derivative on each sign, so no variation;
  // |x|^3 has h'' = 6|x|, whose variation over both windows on both signs
  // is 12 * ((1e3 - 1e1) + (1e-2 - 1e-4)).
  EXPECT_NEAR(growth_check(ValuationKernel::power(1, 2), 1.0, 2).top_derivative_variation, 0.0, 1e-3);
  EXPECT_NEAR(growth_check(ValuationKernel::power(1, 3), 1.0, 2).top_derivative_variation, 12.0 * (990.0 + 0.0099), 1e-9 * 11880.0);
  // A profile that covers neither window.
  const CProfile short_profile = c_profile(ValuationKernel::power(1, 2), square(), uniform_grid(0.0, 1.0, 0.1));
  EXPECT_THROW(growth_check(short_profile, 1.0, 2), Error);
}

TEST(Valuation, EvenOddSplit) {
  const ValuationKernel h(PiecewisePolyKernel{{-1.0, 0.0, 1.0}, {{0.0, 3.0}, {0.0, 1.0, 2.0}}, {}, {}});
  const auto [even, odd] = even_odd_split(h);
  for (double x : {-0.9, -0.3, 0.2, 0.7}) {
    EXPECT_NEAR(even(x), 0.5 * (h(x) + h(-x)), 1e-15);
    EXPECT_NEAR(odd(x), 0.5 * (h(x) - h(-x)), 1e-15);
    EXPECT_NEAR(even(x) + odd(x), h(x), 1e-15);
  }
}

TEST(Valuation, InvarianceSpotCheck) {
  std::mt19937_64 rng(12);
  const PLFunction f = random_cone_function(rng, 3);
  const Mat phi = random_special_linear(rng, 3);
  EXPECT_NEAR(std::abs(phi.determinant()), 1.0, 1e-12);
  const ValuationKernel h = ValuationKernel::power(1, 1.5);
  const double base = apply(h, f);
  EXPECT_NEAR(apply(h, compose_affine(f, phi, Vec::Zero(3))), base, 1e-10 * base);
  EXPECT_NEAR(apply(h, compose_affine(f, Mat::Identity(3, 3), Vec::Zero(3))), base, 0.0);
  EXPECT_NEAR(apply(h, translate(f, random_translation(rng, 3, 10))), base, 1e-10 * base);
}
