// Integrals over simplicial complexes: L^q and gradient norms, level-set
// volumes, compositions h(f), and the matrix of gradient outer products.
#pragma once

#include "plval/complex.hpp"
#include "plval/kernel.hpp"

#include <functional>
#include <span>

namespace plval {

/// Gamma(p+1) Gamma(n+1) / Gamma(n+p+1); equals the integral of l_P^p
/// divided by |P|.
double c_pn(double p, int n);

/// n p / (n - p). Throws Error{InvalidInput} unless 1 <= p < n.
double sobolev_conjugate(double p, int n);

/// Distribution of an affine function's values under Lebesgue measure on a
/// simplex: mass * M(t), where M is the degree n-1 B-spline density with
/// knots at the sorted vertex values. Equal knots are allowed; when all knots
/// coincide the distribution is a point mass.
class PushforwardDensity {
 public:
  PushforwardDensity(std::vector<double> values, double mass);

  const std::vector<double>& knots() const { return knots_; }
  double mass() const { return mass_; }
  bool point_mass() const { return knots_.front() == knots_.back(); }

  /// Density at t (0 off [t_0, t_n]; undefined for a point mass).
  double operator()(double t) const;
  /// Integral of g(t) against the distribution. Quadrature runs on the knot
  /// intervals refined at `extra_breaks`; endpoints in `rough_points` get
  /// graded nodes.
  double integrate(const std::function<double(double)>& g, std::span<const double> extra_breaks = {},
                   std::span<const double> rough_points = {}) const;
  /// Measure of {f > t} within the simplex.
  double mass_above(double t) const;

 private:
  std::vector<double> knots_;
  double mass_;
};

/// Integral of l^q over a simplex where l is affine with the given (>= 0)
/// vertex values. Integer q uses the closed form
/// |simplex| n! q! / (n+q)! h_q(values), with h_q the complete homogeneous
/// symmetric polynomial; other q use the pushforward density.
/// Throws Error{NegativeValues}.
double integrate_power_over_simplex(std::span<const Vec> simplex, std::span<const double> values, double q);

/// Integral of |f|^q.
double lq_integral(const PLFunction& f, double q);
/// (integral of |f|^q)^(1/q).
double lq_norm(const PLFunction& f, double q);
/// Integral of |grad f|^p.
double grad_p_integral(const PLFunction& f, double p);
double grad_p_norm(const PLFunction& f, double p);
/// (||f||_p^p + ||grad f||_p^p)^(1/p).
double sobolev_norm(const PLFunction& f, double p);

/// |{f > t}| for t > 0.
double level_set_volume(const PLFunction& f, double t);

/// Integral of h(f(x)) over R^n. Throws Error{KernelNonzeroAtZero} when
/// h(0) != 0, since the complement of the support would contribute.
double integrate_kernel(const PLFunction& f, const ValuationKernel& h);

/// Sum over simplices of |simplex| g g^T, g the simplex gradient.
Mat fisher_matrix(const PLFunction& f);

}  // namespace plval
