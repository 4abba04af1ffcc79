#include "plval/valuation.hpp"

#include "plval/integration.hpp"
#include "plval/pl_function.hpp"
#include "plval/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plval {

double apply(const ValuationKernel& h, const PLFunction& f) { return integrate_kernel(f, h); }

std::vector<std::vector<double>> fd_weights(double z, std::span<const double> nodes, int max_order) {
  const std::size_t count = nodes.size();
  const auto orders = static_cast<std::size_t>(max_order);
  std::vector<std::vector<double>> w(orders + 1, std::vector<double>(count, 0.0));
  if (count == 0) return w;
  double c1 = 1.0;
  double c4 = nodes[0] - z;
  w[0][0] = 1.0;
  for (std::size_t i = 1; i < count; ++i) {
    const std::size_t mn = std::min(i, orders);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          w[k][i] = c1 * (static_cast<double>(k) * w[k - 1][i - 1] - c5 * w[k][i - 1]) / c2;
        w[0][i] = -c1 * c5 * w[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) w[k][j] = (c4 * w[k][j] - static_cast<double>(k) * w[k - 1][j]) / c3;
      w[0][j] = c4 * w[0][j] / c3;
    }
    c1 = c2;
  }
  return w;
}

std::vector<double> uniform_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw Error(ErrorCode::InvalidInput, "grid needs step > 0 and stop >= start");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 0.5));
  for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

namespace {

constexpr int kAccuracy = 4;

// Centred stencil half-width for a derivative of order j at accuracy 4.
int centred_half(int j) {
  if (j == 0) return 0;
  return (2 * ((j + 1) / 2) - 1 + kAccuracy - 1) / 2;
}

}  // namespace

CProfile make_profile(int n, std::vector<double> s, std::vector<double> c, double polytope_volume) {
  const auto count = static_cast<int>(s.size());
  if (s.size() != c.size()) throw Error(ErrorCode::InvalidInput, "profile needs one value per grid point");
  if (count < 2 * n + 1) throw Error(ErrorCode::GridTooCoarse, "profile needs at least 2n+1 grid points");
  const double step = s[1] - s[0];
  if (!(step > 0.0)) throw Error(ErrorCode::NonUniformGrid, "grid must increase");
  for (int i = 1; i < count; ++i)
    if (std::abs((s[static_cast<std::size_t>(i)] - s[static_cast<std::size_t>(i - 1)]) - step) > 1e-6 * step)
      throw Error(ErrorCode::NonUniformGrid, "grid step is not constant");

  CProfile out;
  out.dim = n;
  out.polytope_volume = polytope_volume;
  out.derivatives.assign(static_cast<std::size_t>(n) + 1, std::vector<double>(s.size(), 0.0));
  out.stencil.assign(s.size(), {0, 0});
  out.centred.assign(s.size(), true);
  out.derivatives[0] = c;
  for (int i = 0; i < count; ++i) out.stencil[static_cast<std::size_t>(i)] = {i, i};
  for (int j = 1; j <= n; ++j) {
    const int half = centred_half(j);
    const int width = std::min(j + kAccuracy, count);
    for (int i = 0; i < count; ++i) {
      int lo = i - half, hi = i + half;
      bool centred = lo >= 0 && hi < count;
      if (!centred) {
        lo = std::clamp(i - width / 2, 0, count - width);
        hi = lo + width - 1;
      }
      // Nodes relative to s_i in step units keep the weights well scaled.
      std::vector<double> nodes;
      for (int m = lo; m <= hi; ++m) nodes.push_back(static_cast<double>(m - i));
      const auto w = fd_weights(0.0, nodes, j);
      double acc = 0.0;
      for (int m = lo; m <= hi; ++m) acc += w[static_cast<std::size_t>(j)][static_cast<std::size_t>(m - lo)] * c[static_cast<std::size_t>(m)];
      const auto ui = static_cast<std::size_t>(i);
      out.derivatives[static_cast<std::size_t>(j)][ui] = acc / std::pow(step, j);
      out.centred[ui] = out.centred[ui] && centred;
      out.stencil[ui].first = std::min(out.stencil[ui].first, lo);
      out.stencil[ui].second = std::max(out.stencil[ui].second, hi);
    }
  }
  out.s = std::move(s);
  out.c = std::move(c);
  return out;
}

CProfile c_profile(const ValuationKernel& h, const Polytope& p, std::span<const double> s_grid) {
  h.validate();
  const PLFunction cone = cone_function(p);
  const double vol = volume(p);
  std::vector<double> s(s_grid.begin(), s_grid.end()), c;
  c.reserve(s.size());
  for (double x : s) c.push_back(x == 0.0 ? 0.0 : apply(h, scale_values(cone, x)) / vol);
  return make_profile(p.dim(), std::move(s), std::move(c), vol);
}

TabulatedKernel recover_kernel(const CProfile& profile, int n) {
  if (static_cast<int>(profile.derivatives.size()) < n + 1)
    throw Error(ErrorCode::InvalidInput, "profile lacks derivative tables up to order n");
  TabulatedKernel out;
  for (std::size_t i = 0; i < profile.s.size(); ++i) {
    const double x = profile.s[i];
    const auto [lo, hi] = profile.stencil[i];
    if (!profile.centred[i] || x == 0.0) continue;
    if (profile.s[static_cast<std::size_t>(lo)] * x <= 0.0 || profile.s[static_cast<std::size_t>(hi)] * x <= 0.0) continue;
    double value = 0.0;
    for (int j = 0; j <= n; ++j)
      value += binomial(n, j) / factorial(j) * std::pow(x, j) * profile.derivatives[static_cast<std::size_t>(j)][i];
    out.s.push_back(x);
    out.h.push_back(value);
  }
  if (out.s.empty()) throw Error(ErrorCode::GridTooCoarse, "no grid point has a centred stencil away from 0");
  return out;
}

PropertyReport psi_check(const ValuationKernel& h, const CProfile& profile, int k, double s, double tolerance) {
  const int n = profile.dim;
  std::ostringstream id;
  id << "n=" << n << " k=" << k << " s=" << s;
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidInput, "psi_check needs 1 <= k <= n");
  if (s < 0.0) throw Error(ErrorCode::InvalidInput, "psi_check runs on s >= 0; use the reflected kernel for s < 0");
  const auto it = std::find_if(profile.s.begin(), profile.s.end(),
                               [&](double x) { return std::abs(x - s) <= 1e-9 * std::max(1.0, std::abs(s)); });
  if (it == profile.s.end()) throw Error(ErrorCode::InvalidInput, "psi_check point is not on the profile grid");
  const auto i = static_cast<std::size_t>(it - profile.s.begin());
  const double vol = profile.polytope_volume;

  // Left side. With m = n - k, the Stieltjes integral of (s-t)^m against dh
  // over [0, s) integrates by parts to m * integral of (s-t)^(m-1) h(t).
  const int m = n - k;
  double left;
  if (m == 0) {
    left = factorial(n) * h(s);
  } else {
    std::vector<double> cuts{0.0, s};
    for (double b : h.breakpoints())
      if (b > 0.0 && b < s) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double integral = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c)
      integral += integrate_interval([&](double t) { return std::pow(s - t, m - 1) * h(t); }, cuts[c], cuts[c + 1],
                                     c == 0 ? Endpoint::Left : Endpoint::None);
    left = factorial(n) / factorial(m) * m * integral;
  }
  left *= vol;

  double right = 0.0;
  for (int j = 0; j <= k; ++j)
    right += binomial(k, j) * factorial(n) / factorial(n - k + j) * std::pow(s, n - k + j) *
             profile.derivatives[static_cast<std::size_t>(j)][i] * vol;
  return compare("psi", id.str(), left, right, tolerance);
}

namespace {

struct Fit {
  bool evaluated = false;
  bool all_zero = false;
  double slope = 0.0;
  double residual = 0.0;
};

Fit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  Fit fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(y[i]) > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(std::abs(x[i])));
      ly.push_back(std::log(std::abs(y[i])));
    }
  fit.evaluated = true;
  if (lx.size() < 2) {
    fit.all_zero = true;
    return fit;
  }
  const double count = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  for (std::size_t i = 0; i < lx.size(); ++i)
    fit.residual = std::max(fit.residual, std::abs(ly[i] - (my + fit.slope * (lx[i] - mx))));
  return fit;
}

std::vector<double> log_spaced(double from, double to, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(std::exp(std::log(from) + (std::log(to) - std::log(from)) * i / std::max(count - 1, 1)));
  return out;
}

// x^k h^(k)(x) by a 7-point stencil on nodes x (1 + 1e-3 j).
double weighted_derivative(const ValuationKernel& h, double x, int k) {
  if (k == 0) return h(x);
  const double step = 1e-3 * std::abs(x);
  std::vector<double> nodes;
  for (int j = -3; j <= 3; ++j) nodes.push_back(static_cast<double>(j));
  const auto w = fd_weights(0.0, nodes, k);
  double acc = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) acc += w[static_cast<std::size_t>(k)][j] * h(x + nodes[j] * step);
  return std::pow(x, k) * acc / std::pow(step, k);
}

double variation(const std::vector<double>& samples) {
  double tv = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) tv += std::abs(samples[i] - samples[i - 1]);
  return tv;
}

void combine(GrowthReport& r, const Fit& fit, bool low) {
  if (!fit.evaluated) return;
  // An identically vanishing target satisfies any growth bound.
  const double slope = fit.all_zero ? (low ? r.p : r.p_star) : fit.slope;
  if (low) {
    r.low_exponent = r.low_evaluated ? std::min(r.low_exponent, slope) : slope;
    r.low_residual = std::max(r.low_residual, fit.residual);
    r.low_evaluated = true;
  } else {
    r.high_exponent = r.high_evaluated ? std::max(r.high_exponent, slope) : slope;
    r.high_residual = std::max(r.high_residual, fit.residual);
    r.high_evaluated = true;
  }
}

void finish(GrowthReport& r, const GrowthOptions& opts) {
  r.low_pass = !r.low_evaluated || (std::isfinite(r.low_exponent) && r.low_exponent >= r.p - opts.slack);
  r.high_pass = !r.high_evaluated || (std::isfinite(r.high_exponent) && r.high_exponent <= r.p_star + opts.slack);
}

}  // namespace

GrowthReport growth_check(const ValuationKernel& h, double p, int n, int k, const GrowthOptions& opts) {
  GrowthReport r;
  r.p = p;
  r.p_star = sobolev_conjugate(p, n);
  for (double sign : {1.0, -1.0}) {
    for (bool low : {true, false}) {
      const auto xs = low ? log_spaced(opts.low_from, opts.low_to, opts.samples)
                          : log_spaced(opts.high_from, opts.high_to, opts.samples);
      std::vector<double> x, y, top;
      for (double v : xs) {
        x.push_back(v);
        y.push_back(weighted_derivative(h, sign * v, k));
        top.push_back(weighted_derivative(h, sign * v, n) / std::pow(sign * v, n));
      }
      combine(r, loglog_fit(x, y), low);
      r.top_derivative_variation += variation(top);
    }
  }
  finish(r, opts);
  return r;
}

GrowthReport growth_check(const CProfile& profile, double p, int n, int k, const GrowthOptions& opts) {
  if (k < 0 || k >= static_cast<int>(profile.derivatives.size()))
    throw Error(ErrorCode::InvalidInput, "derivative order not available in the profile");
  GrowthReport r;
  r.p = p;
  r.p_star = sobolev_conjugate(p, n);
  for (bool low : {true, false}) {
    const double from = low ? opts.low_from : opts.high_from, to = low ? opts.low_to : opts.high_to;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < profile.s.size(); ++i) {
      const double s = profile.s[i];
      if (s < from * (1 - 1e-9) || s > to * (1 + 1e-9)) continue;
      x.push_back(s);
      y.push_back(std::pow(s, k) * profile.derivatives[static_cast<std::size_t>(k)][i]);
    }
    if (x.size() < 3 || std::log10(x.back() / x.front()) < std::log10(to / from) - 1e-6) continue;
    combine(r, loglog_fit(x, y), low);
  }
  if (!r.low_evaluated && !r.high_evaluated)
    throw Error(ErrorCode::InsufficientDecades, "profile covers neither growth window with two decades of samples");
  if (n < static_cast<int>(profile.derivatives.size()))
    r.top_derivative_variation = variation(profile.derivatives[static_cast<std::size_t>(n)]);
  finish(r, opts);
  return r;
}

std::pair<ValuationKernel, ValuationKernel> even_odd_split(const ValuationKernel& h) {
  if (std::holds_alternative<PowerKernel>(h.variant())) return {h, ValuationKernel::power(0.0, 1.0)};
  const ValuationKernel mirror = h.reflected();
  return {ValuationKernel::sum({h.scaled(0.5), mirror.scaled(0.5)}),
          ValuationKernel::sum({h.scaled(0.5), mirror.scaled(-0.5)})};
}

ValuationKernel homogeneous_kernel(double c, double q, int n) {
  return ValuationKernel::power(binomial(n + q, q) * c, q);
}

}  // namespace plval
