#include "plval/kernel.hpp"

#include "plval/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plval {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double horner(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double eval_piecewise(const PiecewisePolyKernel& k, double x) {
  const auto& b = k.breakpoints;
  if (b.size() < 2 || k.coefficients.empty()) return 0.0;
  auto extend = [&](std::size_t end, std::size_t row, const std::optional<double>& exponent) {
    if (!exponent) return horner(k.coefficients[row], x);
    if (b[end] == 0.0 || x * b[end] <= 0.0) return 0.0;
    return horner(k.coefficients[row], b[end]) * std::pow(x / b[end], *exponent);
  };
  if (x < b.front()) return extend(0, 0, k.left_exponent);
  if (x > b.back()) return extend(b.size() - 1, k.coefficients.size() - 1, k.right_exponent);
  const auto it = std::upper_bound(b.begin(), b.end(), x);
  std::size_t piece = static_cast<std::size_t>(it - b.begin());
  piece = std::clamp<std::size_t>(piece, 1, k.coefficients.size()) - 1;
  return horner(k.coefficients[piece], x);
}

// Exponent e with h2 / h1 = (s2 / s1)^e, or nullopt when the two samples do
// not determine a power law.
std::optional<double> fitted_exponent(double s1, double h1, double s2, double h2) {
  if (s1 * s2 <= 0.0 || h1 * h2 <= 0.0 || s1 == s2) return std::nullopt;
  const double e = std::log(h2 / h1) / std::log(s2 / s1);
  if (!std::isfinite(e)) return std::nullopt;
  return e;
}

double eval_tabulated(const TabulatedKernel& k, double x) {
  const auto& s = k.s;
  const auto& h = k.h;
  const std::size_t m = s.size();
  if (m == 0 || x == 0.0) return 0.0;
  if (x >= s.front() && x <= s.back()) {
    if (m == 1) return h.front();
    auto it = std::upper_bound(s.begin(), s.end(), x);
    std::size_t j = std::clamp<std::size_t>(static_cast<std::size_t>(it - s.begin()), 1, m - 1);
    const double t = (x - s[j - 1]) / (s[j] - s[j - 1]);
    return h[j - 1] + t * (h[j] - h[j - 1]);
  }
  // Outside the table: work on the sign side of x.
  std::vector<std::size_t> side;
  for (std::size_t j = 0; j < m; ++j)
    if (s[j] * x > 0.0) side.push_back(j);
  if (side.empty()) return 0.0;
  const bool beyond = std::abs(x) > std::abs(s[side.front()]) && std::abs(x) > std::abs(s[side.back()]);
  // Samples ordered by distance from the origin.
  std::vector<std::size_t> order = side;
  if (x < 0.0) std::reverse(order.begin(), order.end());
  if (beyond) {
    const std::size_t last = order.back();
    if (order.size() == 1) return h[last] * (x / s[last]);
    const std::size_t prev = order[order.size() - 2];
    if (auto e = fitted_exponent(s[prev], h[prev], s[last], h[last])) return h[last] * std::pow(x / s[last], *e);
    return h[last] + (x - s[last]) * (h[last] - h[prev]) / (s[last] - s[prev]);
  }
  // Between the origin and the innermost sample: decay to h(0) = 0.
  const std::size_t first = order.front();
  double e = 1.0;
  if (order.size() > 1)
    if (auto fit = fitted_exponent(s[first], h[first], s[order[1]], h[order[1]]); fit && *fit > 0.0) e = *fit;
  return h[first] * std::pow(x / s[first], e);
}

}  // namespace

ValuationKernel ValuationKernel::sum(std::vector<ValuationKernel> terms) {
  ValuationKernel k;
  k.impl_ = std::move(terms);
  return k;
}

double ValuationKernel::operator()(double x) const {
  return std::visit(Overloaded{
                        [&](const PowerKernel& k) { return x == 0.0 ? 0.0 : k.coeff * std::pow(std::abs(x), k.exponent); },
                        [&](const PiecewisePolyKernel& k) { return eval_piecewise(k, x); },
                        [&](const TabulatedKernel& k) { return eval_tabulated(k, x); },
                        [&](const std::vector<ValuationKernel>& terms) {
                          double total = 0.0;
                          for (const auto& t : terms) total += t(x);
                          return total;
                        },
                    },
                    impl_);
}

std::vector<double> ValuationKernel::breakpoints() const {
  std::vector<double> out{0.0};
  std::visit(Overloaded{
                 [&](const PowerKernel&) {},
                 [&](const PiecewisePolyKernel& k) { out.insert(out.end(), k.breakpoints.begin(), k.breakpoints.end()); },
                 [&](const TabulatedKernel& k) { out.insert(out.end(), k.s.begin(), k.s.end()); },
                 [&](const std::vector<ValuationKernel>& terms) {
                   for (const auto& t : terms) {
                     const auto b = t.breakpoints();
                     out.insert(out.end(), b.begin(), b.end());
                   }
                 },
             },
             impl_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ValuationKernel ValuationKernel::scaled(double factor) const {
  return std::visit(Overloaded{
                        [&](const PowerKernel& k) { return ValuationKernel(PowerKernel{k.coeff * factor, k.exponent}); },
                        [&](PiecewisePolyKernel k) {
                          for (auto& row : k.coefficients)
                            for (double& a : row) a *= factor;
                          return ValuationKernel(std::move(k));
                        },
                        [&](TabulatedKernel k) {
                          for (double& v : k.h) v *= factor;
                          return ValuationKernel(std::move(k));
                        },
                        [&](const std::vector<ValuationKernel>& terms) {
                          std::vector<ValuationKernel> r;
                          for (const auto& t : terms) r.push_back(t.scaled(factor));
                          return ValuationKernel::sum(std::move(r));
                        },
                    },
                    impl_);
}

ValuationKernel ValuationKernel::reflected() const {
  return std::visit(Overloaded{
                        [](const PowerKernel& k) { return ValuationKernel(k); },
                        [](const PiecewisePolyKernel& k) {
                          PiecewisePolyKernel r;
                          for (auto it = k.breakpoints.rbegin(); it != k.breakpoints.rend(); ++it) r.breakpoints.push_back(-*it);
                          for (auto it = k.coefficients.rbegin(); it != k.coefficients.rend(); ++it) {
                            std::vector<double> row = *it;
                            for (std::size_t i = 1; i < row.size(); i += 2) row[i] = -row[i];
                            r.coefficients.push_back(std::move(row));
                          }
                          r.left_exponent = k.right_exponent;
                          r.right_exponent = k.left_exponent;
                          return ValuationKernel(std::move(r));
                        },
                        [](const TabulatedKernel& k) {
                          TabulatedKernel r;
                          for (std::size_t j = k.s.size(); j-- > 0;) {
                            r.s.push_back(-k.s[j]);
                            r.h.push_back(k.h[j]);
                          }
                          return ValuationKernel(std::move(r));
                        },
                        [](const std::vector<ValuationKernel>& terms) {
                          std::vector<ValuationKernel> r;
                          for (const auto& t : terms) r.push_back(t.reflected());
                          return ValuationKernel::sum(std::move(r));
                        },
                    },
                    impl_);
}

std::vector<std::string> ValuationKernel::check_invariants() const {
  std::vector<std::string> bad;
  std::visit(Overloaded{
                 [&](const PowerKernel& k) {
                   if (!std::isfinite(k.coeff)) bad.push_back("power kernel coefficient is not finite");
                   if (!(k.exponent > 0.0) || !std::isfinite(k.exponent))
                     bad.push_back("power kernel exponent must be positive and finite");
                 },
                 [&](const PiecewisePolyKernel& k) {
                   if (k.breakpoints.size() < 2) bad.push_back("piecewise kernel needs at least two breakpoints");
                   if (k.coefficients.size() + 1 != k.breakpoints.size())
                     bad.push_back("piecewise kernel needs one coefficient row per interval");
                   if (!std::is_sorted(k.breakpoints.begin(), k.breakpoints.end()) ||
                       std::adjacent_find(k.breakpoints.begin(), k.breakpoints.end()) != k.breakpoints.end())
                     bad.push_back("piecewise kernel breakpoints must increase strictly");
                   if (!bad.empty()) return;
                   for (std::size_t i = 1; i + 1 < k.breakpoints.size(); ++i) {
                     const double x = k.breakpoints[i];
                     const double left = horner(k.coefficients[i - 1], x), right = horner(k.coefficients[i], x);
                     if (std::abs(left - right) > 1e-12 * std::max(1.0, std::abs(left))) {
                       std::ostringstream msg;
                       msg << "piecewise kernel is discontinuous at " << x;
                       bad.push_back(msg.str());
                     }
                   }
                 },
                 [&](const TabulatedKernel& k) {
                   if (k.s.empty() || k.s.size() != k.h.size()) bad.push_back("tabulated kernel needs matching nonempty s and h");
                   if (std::adjacent_find(k.s.begin(), k.s.end(), std::greater_equal<>()) != k.s.end())
                     bad.push_back("tabulated kernel abscissae must increase strictly");
                   for (std::size_t j = 0; j < std::min(k.s.size(), k.h.size()); ++j)
                     if (!std::isfinite(k.s[j]) || !std::isfinite(k.h[j])) bad.push_back("tabulated kernel has non-finite samples");
                 },
                 [&](const std::vector<ValuationKernel>& terms) {
                   for (const auto& t : terms) {
                     auto sub = t.check_invariants();
                     bad.insert(bad.end(), sub.begin(), sub.end());
                   }
                 },
             },
             impl_);
  if (bad.empty() && std::abs((*this)(0.0)) > 1e-12) bad.push_back("h(0) is not 0");
  return bad;
}

void ValuationKernel::validate() const {
  const auto bad = check_invariants();
  if (bad.empty()) return;
  if (bad.front() == "h(0) is not 0") throw Error(ErrorCode::KernelNonzeroAtZero, bad.front());
  throw Error(ErrorCode::InvalidKernel, bad.front());
}

}  // namespace plval
