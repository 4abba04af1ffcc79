#include "plval/integration.hpp"

#include "plval/pl_function.hpp"
#include "plval/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace plval {

double c_pn(double p, int n) {
  return std::exp(std::lgamma(p + 1.0) + std::lgamma(n + 1.0) - std::lgamma(n + p + 1.0));
}

double sobolev_conjugate(double p, int n) {
  if (!(p >= 1.0) || !(p < n)) throw Error(ErrorCode::InvalidInput, "the Sobolev conjugate needs 1 <= p < n");
  return n * p / (n - p);
}

PushforwardDensity::PushforwardDensity(std::vector<double> values, double mass)
    : knots_(std::move(values)), mass_(mass) {
  if (knots_.size() < 2) throw Error(ErrorCode::InvalidInput, "a simplex has at least two vertex values");
  std::sort(knots_.begin(), knots_.end());
}

double PushforwardDensity::operator()(double t) const {
  // Cox-de Boor recursion for the order-n B-spline N on knots t_0..t_n,
  // normalized to unit integral: M = n / (t_n - t_0) * N.
  const auto& k = knots_;
  const std::size_t n = k.size() - 1;
  if (t < k.front() || t >= k.back()) return 0.0;
  std::vector<double> basis(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) basis[i] = (t >= k[i] && t < k[i + 1]) ? 1.0 : 0.0;
  for (std::size_t order = 2; order <= n; ++order) {
    for (std::size_t i = 0; i + order <= n; ++i) {
      double value = 0.0;
      const double left = k[i + order - 1] - k[i];
      const double right = k[i + order] - k[i + 1];
      if (left > 0.0) value += (t - k[i]) / left * basis[i];
      if (right > 0.0) value += (k[i + order] - t) / right * basis[i + 1];
      basis[i] = value;
    }
  }
  return mass_ * static_cast<double>(n) / (k.back() - k.front()) * basis[0];
}

double PushforwardDensity::integrate(const std::function<double(double)>& g, std::span<const double> extra_breaks,
                                     std::span<const double> rough_points) const {
  if (point_mass()) return mass_ * g(knots_.front());
  const double lo = knots_.front(), hi = knots_.back();
  std::vector<double> cuts(knots_.begin(), knots_.end());
  for (double b : extra_breaks)
    if (b > lo && b < hi) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto is_rough = [&](double x) { return std::find(rough_points.begin(), rough_points.end(), x) != rough_points.end(); };
  const auto integrand = [&](double t) { return g(t) * (*this)(t); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    Endpoint end = Endpoint::None;
    if (is_rough(a)) end = Endpoint::Left;
    else if (is_rough(b)) end = Endpoint::Right;
    total += integrate_interval(integrand, a, b, end);
  }
  return total;
}

double PushforwardDensity::mass_above(double t) const {
  if (point_mass()) return knots_.front() > t ? mass_ : 0.0;
  if (t >= knots_.back()) return 0.0;
  if (t < knots_.front()) return mass_;
  std::vector<double> cuts{t};
  for (double k : knots_)
    if (k > t) cuts.push_back(k);
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += gauss_legendre16(*this, cuts[i], cuts[i + 1]);
  return total;
}

namespace {

// Complete homogeneous symmetric polynomial of degree q in the values.
double complete_homogeneous(std::span<const double> v, int q) {
  std::vector<double> h(static_cast<std::size_t>(q) + 1, 0.0);
  h[0] = 1.0;
  for (double x : v)
    for (std::size_t j = 1; j <= static_cast<std::size_t>(q); ++j) h[j] += x * h[j - 1];
  return h[static_cast<std::size_t>(q)];
}

bool is_integer(double q) { return q == std::floor(q) && q >= 0.0 && q < 64.0; }

double simplex_mass(std::span<const Vec> simplex) { return std::abs(signed_simplex_volume(simplex)); }

// Integral of |l|^q over one simplex of f.
double simplex_abs_power(const PLFunction& f, std::size_t s, double q) {
  const auto pts = f.complex.simplex_points(s);
  std::vector<double> vals;
  for (int v : f.complex.simplices[s]) vals.push_back(f.values[static_cast<std::size_t>(v)]);
  const bool nonneg = std::all_of(vals.begin(), vals.end(), [](double x) { return x >= 0.0; });
  const bool nonpos = std::all_of(vals.begin(), vals.end(), [](double x) { return x <= 0.0; });
  if (nonpos && !nonneg)
    for (double& x : vals) x = -x;
  if (nonneg || nonpos) return integrate_power_over_simplex(pts, vals, q);
  // Sign change: |t|^q is polynomial on either side of 0, so splitting the
  // value range at 0 is the same as cutting the simplex along {f = 0}.
  const PushforwardDensity density(vals, simplex_mass(pts));
  const double zero[] = {0.0};
  return density.integrate([q](double t) { return std::pow(std::abs(t), q); }, zero, zero);
}

}  // namespace

double integrate_power_over_simplex(std::span<const Vec> simplex, std::span<const double> values, double q) {
  for (double v : values)
    if (v < 0.0) throw Error(ErrorCode::NegativeValues, "integrate_power_over_simplex needs nonnegative values");
  const double mass = simplex_mass(simplex);
  const int n = static_cast<int>(simplex.size()) - 1;
  if (q == 0.0) return mass;
  if (is_integer(q)) {
    const int k = static_cast<int>(q);
    return mass * factorial(n) * factorial(k) / factorial(n + k) * complete_homogeneous(values, k);
  }
  const PushforwardDensity density(std::vector<double>(values.begin(), values.end()), mass);
  const double zero[] = {0.0};
  return density.integrate([q](double t) { return t <= 0.0 ? 0.0 : std::pow(t, q); }, zero, zero);
}

double lq_integral(const PLFunction& f, double q) {
  double total = 0.0;
  for (std::size_t s = 0; s < f.complex.simplices.size(); ++s) total += simplex_abs_power(f, s, q);
  return total;
}

double lq_norm(const PLFunction& f, double q) { return std::pow(lq_integral(f, q), 1.0 / q); }

double grad_p_integral(const PLFunction& f, double p) {
  double total = 0.0;
  for (const auto& g : gradient_field(f)) total += f.complex.simplex_volume(g.simplex) * std::pow(g.gradient.norm(), p);
  return total;
}

double grad_p_norm(const PLFunction& f, double p) { return std::pow(grad_p_integral(f, p), 1.0 / p); }

double sobolev_norm(const PLFunction& f, double p) {
  return std::pow(lq_integral(f, p) + grad_p_integral(f, p), 1.0 / p);
}

double level_set_volume(const PLFunction& f, double t) {
  double total = 0.0;
  for (std::size_t s = 0; s < f.complex.simplices.size(); ++s) {
    std::vector<double> vals;
    for (int v : f.complex.simplices[s]) vals.push_back(f.values[static_cast<std::size_t>(v)]);
    total += PushforwardDensity(vals, f.complex.simplex_volume(s)).mass_above(t);
  }
  return total;
}

double integrate_kernel(const PLFunction& f, const ValuationKernel& h) {
  if (std::abs(h(0.0)) > 1e-12) throw Error(ErrorCode::KernelNonzeroAtZero, "h(0) must vanish");
  const auto breaks = h.breakpoints();
  const double zero[] = {0.0};
  double total = 0.0;
  for (std::size_t s = 0; s < f.complex.simplices.size(); ++s) {
    std::vector<double> vals;
    for (int v : f.complex.simplices[s]) vals.push_back(f.values[static_cast<std::size_t>(v)]);
    const PushforwardDensity density(std::move(vals), f.complex.simplex_volume(s));
    total += density.integrate([&h](double t) { return h(t); }, breaks, zero);
  }
  return total;
}

Mat fisher_matrix(const PLFunction& f) {
  const int n = f.dim();
  Mat m = Mat::Zero(n, n);
  for (const auto& g : gradient_field(f)) m += f.complex.simplex_volume(g.simplex) * g.gradient * g.gradient.transpose();
  return m;
}

}  // namespace plval
