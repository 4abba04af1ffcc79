// Constructions and pointwise operations on piecewise-affine functions.
#pragma once

#include "plval/complex.hpp"
#include "plval/polytope.hpp"

namespace plval {

/// l_P: 1 at the origin, 0 on the boundary of P and outside, affine on every
/// cone over a facet of P.
PLFunction cone_function(const Polytope& p);

/// Barycentric interpolation; 0 outside the support.
double evaluate(const PLFunction& f, const Vec& x);

/// Gradient of f restricted to simplex s, solved from its n+1 vertex values.
Vec simplex_gradient(const SimplicialComplex& c, const std::vector<double>& values, std::size_t s);

struct SimplexGradient {
  std::size_t simplex;
  Vec gradient;
};

/// Constant weak gradient on every simplex.
std::vector<SimplexGradient> gradient_field(const PLFunction& f);

/// s * f on the same complex.
PLFunction scale_values(PLFunction f, double s);

/// f o (x -> phi x + t)^{-1}: vertices move to phi v + t, values stay.
/// Throws Error{Singular} when det(phi) = 0.
PLFunction compose_affine(const PLFunction& f, const Mat& phi, const Vec& t);

/// f(. - t).
PLFunction translate(const PLFunction& f, const Vec& t);

}  // namespace plval
