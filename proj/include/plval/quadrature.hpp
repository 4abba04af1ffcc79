// One-dimensional Gauss-Legendre quadrature with endpoint grading.
#pragma once

#include <functional>

namespace plval {

/// Endpoint of an interval where the integrand may fail to be smooth (for
/// instance |t|^q at t = 0).
enum class Endpoint { None, Left, Right };

/// 16-node Gauss-Legendre rule on [a, b]; exact for polynomials of degree 31.
double gauss_legendre16(const std::function<double(double)>& f, double a, double b);

/// Gauss-Legendre on [a, b] compared against the two bisected halves. When
/// they differ by more than 1e-10 relative, the rule is applied once more on
/// quarters and that estimate is returned. With a rough endpoint the substitution
/// t = a + (b - a) u^4 (mirrored for the right end) flattens it first.
double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          Endpoint rough = Endpoint::None);

}  // namespace plval
