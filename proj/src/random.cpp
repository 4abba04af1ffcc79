#include "plval/random.hpp"

#include "plval/pl_function.hpp"
#include "plval/polytope.hpp"

#include <cmath>
#include <numbers>

namespace plval {

Mat random_special_linear(std::mt19937_64& rng, int n) {
  if (n < 2) return Mat::Identity(n, n);
  std::uniform_int_distribution<int> axis(0, n - 1);
  std::uniform_real_distribution<double> amount(-2.0, 2.0);
  Mat m = Mat::Identity(n, n);
  for (int k = 0; k < 4; ++k) {
    const int i = axis(rng);
    int j = axis(rng);
    while (j == i) j = axis(rng);
    Mat shear = Mat::Identity(n, n);
    shear(i, j) = amount(rng);
    m = shear * m;
  }
  return m;
}

Vec random_translation(std::mt19937_64& rng, int n, double radius) {
  std::uniform_real_distribution<double> coord(-radius, radius);
  Vec t(n);
  for (int i = 0; i < n; ++i) t[i] = coord(rng);
  return t;
}

PLFunction random_cone_function(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> extra(1, n == 2 ? 5 : 4);
  const Polytope p = random_polytope(rng(), n, n + 1 + extra(rng));
  std::uniform_real_distribution<double> factor(0.5, 2.0);
  const double s = factor(rng);
  return translate(scale_values(cone_function(p), s), random_translation(rng, n, 0.6));
}

std::pair<PLFunction, PLFunction> random_pair(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  PLFunction f = random_cone_function(rng, n);
  PLFunction g = random_cone_function(rng, n);
  std::uniform_int_distribution<int> coin(0, 9);
  if (coin(rng) == 0) {
    Vec far = Vec::Zero(n);
    far[0] = 10.0;
    g = translate(g, far);
  }
  return {std::move(f), std::move(g)};
}

PLFunction random_star_function(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 1.5), height(0.5, 2.0), shift(-0.5, 0.5);
  PLFunction f;
  f.complex.dim = 2;
  Vec centre(2);
  centre << shift(rng), shift(rng);
  f.complex.vertices.push_back(centre);
  f.values.push_back(height(rng));
  for (int k = 0; k < 6; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 6.0;
    Vec rim(2);
    rim << std::cos(angle), std::sin(angle);
    f.complex.vertices.push_back(centre + radius(rng) * rim);
    f.values.push_back(0.0);
  }
  for (int k = 0; k < 6; ++k) f.complex.simplices.push_back({0, 1 + k, 1 + (k + 1) % 6});
  return f;
}

}  // namespace plval
