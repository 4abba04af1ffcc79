// Seeded generators of test inputs: unimodular maps, translations and
// nonnegative piecewise-affine functions.
#pragma once

#include "plval/complex.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace plval {

/// Product of 4 unit shears I + a e_i e_j^T (i != j) with a uniform in
/// [-2, 2]; determinant exactly 1 up to roundoff.
Mat random_special_linear(std::mt19937_64& rng, int n);

/// Vector with coordinates uniform in [-radius, radius].
Vec random_translation(std::mt19937_64& rng, int n, double radius);

/// Cone function of a random polytope, scaled by a factor in [0.5, 2] and
/// translated by a vector in [-0.6, 0.6]^n.
PLFunction random_cone_function(std::mt19937_64& rng, int n);

/// Two functions from random_cone_function; with probability 1/10 the
/// second is moved far away so the supports are disjoint.
std::pair<PLFunction, PLFunction> random_pair(std::uint64_t seed, int n);

/// Planar function on a star of 6 triangles around a random centre: the
/// rim radii are uniform in [0.5, 1.5], the rim values 0 and the centre
/// value uniform in [0.5, 2].
PLFunction random_star_function(std::uint64_t seed);

}  // namespace plval
