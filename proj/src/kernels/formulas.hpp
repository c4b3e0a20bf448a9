#pragma once

// Per-pixel formulas shared by the scalar kernels and the scalar tails of the
// SIMD kernels. Header-private to src/kernels; no standard headers so the
// AVX2 translation unit does not instantiate shared inline code.

namespace sife::kernels {
namespace {

// Same selection rule as the x86 maxpd/minpd instructions.
inline double vmax(double a, double b) { return a > b ? a : b; }
inline double vmin(double a, double b) { return a < b ? a : b; }

inline double minmod(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return vmin(vmin(a, b), c);
  if (a < 0.0 && b < 0.0 && c < 0.0) return vmax(vmax(a, b), c);
  return 0.0;
}

inline double rt_dilate(double c, double e, double w, double s, double n, double h, double tau) {
  const double gx = vmax(vmax(0.0, (e - c) / h), (w - c) / h);
  const double gy = vmax(vmax(0.0, (s - c) / h), (n - c) / h);
  return c + tau * __builtin_sqrt(gx * gx + gy * gy);
}

inline double rt_erode(double c, double e, double w, double s, double n, double h, double tau) {
  const double gx = vmax(vmax(0.0, (c - e) / h), (c - w) / h);
  const double gy = vmax(vmax(0.0, (c - s) / h), (c - n) / h);
  return c - tau * __builtin_sqrt(gx * gx + gy * gy);
}

inline double sild_bracket(double m2, double m1, double c, double p1, double p2, double h) {
  const double dp2 = (p2 - p1) / h;
  const double dp1 = (p1 - c) / h;
  const double dm1 = (c - m1) / h;
  const double dm2 = (m1 - m2) / h;
  return minmod(dp2, dp1, dm1) - minmod(dp1, dm1, dm2);
}

}  // namespace
}  // namespace sife::kernels
