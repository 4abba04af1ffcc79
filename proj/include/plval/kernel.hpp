// Kernels h of valuations z(f) = integral of h(f(x)) dx.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace plval {

/// h(x) = coeff * |x|^exponent.
struct PowerKernel {
  double coeff = 1.0;
  double exponent = 1.0;
};

/// Polynomial pieces on [b_0, b_1], ..., [b_{m-1}, b_m]. Row i holds the
/// coefficients of piece i in ascending powers of x. Beyond the end
/// breakpoints h continues as |x|^e scaled to match, or as the end
/// polynomial itself when no exponent is given.
struct PiecewisePolyKernel {
  std::vector<double> breakpoints;
  std::vector<std::vector<double>> coefficients;
  std::optional<double> left_exponent;
  std::optional<double> right_exponent;
};

/// Samples (s_j, h_j) with strictly increasing s, interpolated linearly.
/// Outside the sampled range h follows the power law through the two
/// outermost samples on that side, falls to 0 at the origin, and vanishes
/// on a sign side that carries no samples.
struct TabulatedKernel {
  std::vector<double> s;
  std::vector<double> h;
};

/// One of the kernel families above, or a finite sum of kernels.
class ValuationKernel {
 public:
  using Variant = std::variant<PowerKernel, PiecewisePolyKernel, TabulatedKernel, std::vector<ValuationKernel>>;

  ValuationKernel() : impl_(PowerKernel{0.0, 1.0}) {}
  ValuationKernel(PowerKernel k) : impl_(std::move(k)) {}
  ValuationKernel(PiecewisePolyKernel k) : impl_(std::move(k)) {}
  ValuationKernel(TabulatedKernel k) : impl_(std::move(k)) {}

  static ValuationKernel power(double coeff, double exponent) { return PowerKernel{coeff, exponent}; }
  /// Pointwise sum of the given kernels.
  static ValuationKernel sum(std::vector<ValuationKernel> terms);

  double operator()(double x) const;
  /// Abscissae where h may fail to be smooth (always includes 0), sorted.
  std::vector<double> breakpoints() const;
  /// x -> factor * h(x).
  ValuationKernel scaled(double factor) const;
  /// x -> h(-x).
  ValuationKernel reflected() const;
  /// Violated kernel invariants (h(0) = 0, continuity, well-formed data).
  std::vector<std::string> check_invariants() const;
  /// Throws Error{KernelNonzeroAtZero} or Error{InvalidKernel}.
  void validate() const;

  const Variant& variant() const { return impl_; }

 private:
  Variant impl_;
};

}  // namespace plval
