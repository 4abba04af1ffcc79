// The valuation z_h(f) = integral of h(f), its profile c(s) on cone
// functions, derivative recursions, growth checks and the inversion that
// recovers h from c.
#pragma once

#include "plval/complex.hpp"
#include "plval/kernel.hpp"
#include "plval/polytope.hpp"
#include "plval/report.hpp"

#include <span>
#include <utility>

namespace plval {

/// z_h(f).
double apply(const ValuationKernel& h, const PLFunction& f);

/// Finite-difference weights of Fornberg's algorithm: w[m][i] approximates
/// the m-th derivative at z from the values at nodes[i], m <= max_order.
std::vector<std::vector<double>> fd_weights(double z, std::span<const double> nodes, int max_order);

/// c(s) = z(s l_P) / |P| sampled on a uniform grid, with derivative tables.
struct CProfile {
  int dim = 0;
  double polytope_volume = 1.0;
  std::vector<double> s;
  std::vector<double> c;
  /// derivatives[j][i] estimates c^(j)(s_i), j = 0..dim.
  std::vector<std::vector<double>> derivatives;
  /// First and last grid index used by any stencil at point i.
  std::vector<std::pair<int, int>> stencil;
  /// True where every order used a centred stencil.
  std::vector<bool> centred;

  double step() const { return s.size() > 1 ? s[1] - s[0] : 0.0; }
};

/// Grid start, start + step, ..., up to stop (inclusive within step / 2).
std::vector<double> uniform_grid(double start, double stop, double step);

/// Builds derivative tables for given samples. Throws Error{GridTooCoarse}
/// for fewer than 2n+1 points and Error{NonUniformGrid} unless the grid
/// increases with constant step.
CProfile make_profile(int n, std::vector<double> s, std::vector<double> c, double polytope_volume = 1.0);

/// Profile of h on the cone function of P. Derivatives use centred
/// 4th-order stencils where they fit and shifted ones near the ends.
CProfile c_profile(const ValuationKernel& h, const Polytope& p, std::span<const double> s_grid);

/// h(s) = sum_j (1/j!) C(n, j) s^j c^(j)(s), tabulated at grid points whose
/// stencils are centred and stay on one side of s = 0.
/// Throws Error{GridTooCoarse} if no grid point qualifies.
TabulatedKernel recover_kernel(const CProfile& profile, int n);

/// Compares the two expressions of the k-th derivative recursion at grid
/// point s: n!/(n-k)! times the integral of (s-t)^(n-k) against dh (via
/// integration by parts) against sum_j C(k,j) n!/(n-k+j)! s^(n-k+j) c^(j)(s),
/// both multiplied by |P|. Requires s >= 0.
PropertyReport psi_check(const ValuationKernel& h, const CProfile& profile, int k, double s,
                         double tolerance = 1e-5);

struct GrowthOptions {
  double low_from = 1e-4, low_to = 1e-2;  ///< window near 0
  double high_from = 1e1, high_to = 1e3;  ///< window at large scale
  double slack = 0.1;                     ///< allowed exponent shortfall/excess
  int samples = 41;                       ///< log-spaced samples per kernel window
};

struct GrowthReport {
  double p = 0.0, p_star = 0.0;
  bool low_evaluated = false, high_evaluated = false;
  double low_exponent = 0.0;   ///< smallest fitted slope near 0 over both signs
  double high_exponent = 0.0;  ///< largest fitted slope at large scale
  double low_residual = 0.0, high_residual = 0.0;  ///< max log-space fit residual
  /// Discrete total variation of the n-th derivative over the sampled
  /// points. A bounded-variation heuristic only; it never affects the flags.
  double top_derivative_variation = 0.0;
  bool low_pass = true, high_pass = true;

  bool passed() const { return low_pass && high_pass; }
};

/// Log-log fit of |x^k h^(k)(x)| on both signs near 0 and at large |x|.
/// Passes iff the slope near 0 is >= p - slack and the slope at the top is
/// <= p* + slack. Throws Error{InvalidInput} unless 1 <= p < n.
GrowthReport growth_check(const ValuationKernel& h, double p, int n, int k = 0, const GrowthOptions& opts = {});
/// Same on |s^k c^(k)(s)| from a profile (positive s only); windows holding
/// less than two decades of samples are skipped. Throws
/// Error{InsufficientDecades} when both are skipped.
GrowthReport growth_check(const CProfile& profile, double p, int n, int k = 0, const GrowthOptions& opts = {});

/// (h^e, h^o) with h^e(x) = (h(x) + h(-x)) / 2 and h^o = h - h^e.
std::pair<ValuationKernel, ValuationKernel> even_odd_split(const ValuationKernel& h);

/// Power kernel C(n+q, q) c |x|^q, normalized so that z(s l_P) = c |s|^q |P|.
ValuationKernel homogeneous_kernel(double c, double q, int n);

}  // namespace plval
