// Reference computations used by the tests. They share no code with the
// library: hulls, areas and integrals are recomputed from scratch by
// elementary (slow but transparent) methods.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using P2 = Eigen::Vector2d;

inline double cross(const P2& o, const P2& a, const P2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Andrew's monotone chain; counter-clockwise, no collinear points.
inline std::vector<P2> hull2(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) { return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y()); });
  std::vector<P2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 1e-14) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 1e-14) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// Shoelace area of a counter-clockwise polygon.
inline double polygon_area(const std::vector<P2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

/// Minkowski gauge of a counter-clockwise polygon containing 0, from its
/// edge lines.
inline double gauge2(const std::vector<P2>& poly, const P2& x) {
  double g = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P2& a = poly[i];
    const P2& b = poly[(i + 1) % poly.size()];
    const P2 normal(b.y() - a.y(), a.x() - b.x());
    g = std::max(g, normal.dot(x) / normal.dot(a));
  }
  return g;
}

/// Adaptive Simpson on [a, b] to absolute tolerance eps.
inline double simpson(const std::function<double(double)>& f, double a, double b, double eps = 1e-12, int depth = 50) {
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double tol, int d) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
        const double right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
        return rec(lo, mid, flo, flm, fmid, left, tol / 2, d - 1) + rec(mid, hi, fmid, frm, fhi, right, tol / 2, d - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), eps, depth);
}

/// Integral of g over triangle (a, b, c) by `levels` rounds of 4-way
/// subdivision and the 3 edge-midpoint rule (exact for quadratics).
inline double triangle_integral(const std::function<double(const P2&)>& g, const P2& a, const P2& b, const P2& c,
                                int levels) {
  if (levels == 0) {
    const double area = 0.5 * std::abs(cross(a, b, c));
    return area / 3.0 * (g(0.5 * (a + b)) + g(0.5 * (b + c)) + g(0.5 * (c + a)));
  }
  const P2 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
  return triangle_integral(g, a, ab, ca, levels - 1) + triangle_integral(g, ab, b, bc, levels - 1) +
         triangle_integral(g, ca, bc, c, levels - 1) + triangle_integral(g, ab, bc, ca, levels - 1);
}

/// Integral over the square [lo, hi]^2 by splitting into two triangles.
inline double square_integral(const std::function<double(const P2&)>& g, double lo, double hi, int levels) {
  return triangle_integral(g, P2(lo, lo), P2(hi, lo), P2(hi, hi), levels) +
         triangle_integral(g, P2(lo, lo), P2(hi, hi), P2(lo, hi), levels);
}

}  // namespace oracle
