#include "oracles.hpp"

#include "plval/integration.hpp"
#include "plval/pl_function.hpp"
#include "plval/quadrature.hpp"
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

PLFunction square_cone() {
  return cone_function(hull_from_points(std::vector<Vec>{v2(-1, -1), v2(1, -1), v2(1, 1), v2(-1, 1)}));
}

// Planar PL function with a sign change: vertex values of mixed sign on
// a fan around the origin, zero on the rim.
PLFunction signed_fan() {
  PLFunction f;
  f.complex.dim = 2;
  f.complex.vertices = {v2(0, 0), v2(1, 0), v2(0, 1), v2(-1, 0), v2(0, -1), v2(0.4, 0.3)};
  f.complex.simplices = {{0, 1, 5}, {0, 2, 5}, {0, 2, 3}, {0, 3, 4}, {0, 1, 4}, {1, 2, 5}};
  f.values = {0.3, 0, 0, 0, 0, -0.8};
  return f;
}

double oracle_integral(const PLFunction& f, const std::function<double(double)>& g, int levels) {
  const PLEvaluator e(f);
  double total = 0.0;
  for (const auto& s : f.complex.simplices) {
    const auto& a = f.complex.vertices[static_cast<std::size_t>(s[0])];
    const auto& b = f.complex.vertices[static_cast<std::size_t>(s[1])];
    const auto& c = f.complex.vertices[static_cast<std::size_t>(s[2])];
    total += oracle::triangle_integral([&](const oracle::P2& x) { return g(e(v2(x.x(), x.y()))); },
                                       oracle::P2(a[0], a[1]), oracle::P2(b[0], b[1]), oracle::P2(c[0], c[1]), levels);
  }
  return total;
}

}  // namespace

TEST(Quadrature, GaussLegendreDegree31) {
  for (int d = 0; d <= 31; ++d) {
    const double exact = (std::pow(2.0, d + 1) - std::pow(-1.0, d + 1)) / (d + 1);
    EXPECT_NEAR(gauss_legendre16([d](double x) { return std::pow(x, d); }, -1.0, 2.0), exact, 1e-12 * std::abs(exact) + 1e-13);
  }
}

TEST(Quadrature, RoughEndpoints) {
  for (double q : {0.5, 1.5, 2.7}) {
    const double exact = 1.0 / (q + 1);
    EXPECT_NEAR(integrate_interval([q](double t) { return std::pow(t, q); }, 0.0, 1.0, Endpoint::Left), exact, 1e-13);
    EXPECT_NEAR(integrate_interval([q](double t) { return std::pow(1.0 - t, q); }, 0.0, 1.0, Endpoint::Right), exact, 1e-13);
  }
}

TEST(Integration, ConeConstantAgainstBetaIntegral) {
  // c_{p,n} = n * integral_0^1 (1-r)^p r^(n-1) dr (polar coordinates over P).
  for (int n : {1, 2, 3, 4})
    for (double p : {1.0, 1.5, 2.0, 2.7, 4.0}) {
      const double beta = n * oracle::simpson([&](double r) { return std::pow(1 - r, p) * std::pow(r, n - 1); }, 0, 1, 1e-14);
      EXPECT_NEAR(c_pn(p, n), beta, 1e-10 * beta) << p << " " << n;
    }
  EXPECT_NEAR(c_pn(2, 2), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(sobolev_conjugate(1, 2), 2.0, 1e-15);
  EXPECT_NEAR(sobolev_conjugate(1.5, 3), 3.0, 1e-15);
  EXPECT_THROW(sobolev_conjugate(2, 2), Error);
  EXPECT_THROW(sobolev_conjugate(0.5, 2), Error);
}

TEST(Integration, SquareValues) {
  const PLFunction f = square_cone();
  EXPECT_NEAR(lq_integral(f, 1), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(lq_integral(f, 2), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(grad_p_integral(f, 1), 4.0, 1e-14);
  EXPECT_NEAR(sobolev_norm(f, 1), 16.0 / 3.0, 1e-14);
  EXPECT_NEAR(level_set_volume(f, 0.5), 1.0, 1e-14);
  EXPECT_NEAR(level_set_volume(f, 1.5), 0.0, 0.0);
  EXPECT_NEAR(lq_norm(f, 2), std::sqrt(2.0 / 3.0), 1e-15);
  const Mat m = fisher_matrix(f);
  EXPECT_NEAR(m(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(m(0, 1), 0.0, 1e-14);
}

TEST(Integration, AgainstSubdivisionQuadrature) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    const PLFunction f = random_cone_function(rng, 2);
    for (double q : {1.0, 1.5, 2.0, 3.3}) {
      // |f|^q has a kink of order q along the rim, so the midpoint oracle
      // converges like h^(q+1); seven levels keep it below 2e-7 relative.
      const double ref = oracle_integral(f, [q](double v) { return std::pow(std::abs(v), q); }, 7);
      EXPECT_NEAR(lq_integral(f, q), ref, 1e-6 * ref);
    }
  }
}

TEST(Integration, SignChanges) {
  const PLFunction f = signed_fan();
  for (double q : {1.0, 1.5, 2.0}) {
    // Fine subdivision handles the kink of |f|^q along f = 0.
    const double ref = oracle_integral(f, [q](double v) { return std::pow(std::abs(v), q); }, 7);
    EXPECT_NEAR(lq_integral(f, q), ref, 2e-5 * ref) << q;
  }
  const ValuationKernel odd = ValuationKernel(PiecewisePolyKernel{{-1.0, 0.0, 1.0}, {{0.0, 1.0}, {0.0, 1.0}}, {}, {}});
  const double ref = oracle_integral(f, [](double v) { return v; }, 6);
  EXPECT_NEAR(integrate_kernel(f, odd), ref, 1e-9);
  std::vector<Vec> simplex{v2(0, 0), v2(1, 0), v2(0, 1)};
  std::vector<double> values{1.0, -0.5, 0.2};
  EXPECT_THROW(integrate_power_over_simplex(simplex, values, 2.0), Error);
}

TEST(Integration, LayerCakeIdentity) {
  // integral of f^q = q * integral_0^max t^(q-1) |{f > t}| dt.
  std::mt19937_64 rng(5);
  for (int n : {2, 3}) {
    const PLFunction f = random_cone_function(rng, n);
    double top = 0.0;
    for (double v : f.values) top = std::max(top, v);
    for (double q : {1.0, 1.5, 2.5}) {
      const double layered = q * oracle::simpson([&](double t) { return std::pow(t, q - 1) * level_set_volume(f, t); }, 1e-300, top, 1e-12);
      EXPECT_NEAR(lq_integral(f, q), layered, 1e-8 * layered) << n << " " << q;
    }
  }
}

TEST(Integration, PushforwardDensity) {
  // Uniform measure on a triangle with vertex values 0, 1, 3: the density
  // integrates to the area and its mean is the average vertex value.
  const PushforwardDensity d({0.0, 1.0, 3.0}, 0.5);
  EXPECT_NEAR(d.integrate([](double) { return 1.0; }), 0.5, 1e-14);
  EXPECT_NEAR(d.integrate([](double t) { return t; }), 0.5 * 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(oracle::simpson([&](double t) { return d(t); }, 0.0, 1.0) + oracle::simpson([&](double t) { return d(t); }, 1.0, 3.0), 0.5, 1e-10);
  // The linear B-spline with knots 0, 1, 3 is (3 - t) / 3 on [1, 3].
  EXPECT_NEAR(d.mass_above(1.0), 0.5 * 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(d.mass_above(3.0), 0.0, 1e-15);
  EXPECT_NEAR(d.mass_above(-1.0), 0.5, 1e-15);
  const PushforwardDensity point({2.0, 2.0, 2.0}, 1.5);
  EXPECT_TRUE(point.point_mass());
  EXPECT_NEAR(point.integrate([](double t) { return t * t; }), 6.0, 1e-14);
}

TEST(Integration, IntegerClosedFormMatchesDensityPath) {
  // Integer exponents use the symmetric-polynomial formula; nudging q off
  // the integer switches to the density path, which must agree closely.
  std::vector<Vec> simplex{v2(0, 0), v2(2, 0.5), v2(0.3, 1.7)};
  std::vector<double> values{0.2, 1.4, 0.7};
  for (double q : {1.0, 2.0, 3.0}) {
    const double closed = integrate_power_over_simplex(simplex, values, q);
    const double nearby = integrate_power_over_simplex(simplex, values, q + 1e-9);
    EXPECT_NEAR(closed, nearby, 1e-8 * closed);
  }
}

TEST(Integration, KernelGuards) {
  const PLFunction f = square_cone();
  const ValuationKernel shifted = ValuationKernel(PiecewisePolyKernel{{-1.0, 1.0}, {{1.0, 1.0}}, {}, {}});
  try {
    integrate_kernel(f, shifted);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KernelNonzeroAtZero);
  }
  EXPECT_EQ(lq_integral(zero_function(2), 2), 0.0);
  EXPECT_EQ(grad_p_integral(zero_function(3), 1.5), 0.0);
}
