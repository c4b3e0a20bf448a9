// AVX2 row kernels, four doubles per lane group. Compiled with -mavx2 and
// without FMA contraction; remainders go through the scalar reference so the
// results match it bit for bit.

#include "sife/kernels.hpp"

#if defined(SIFE_HAVE_AVX2)

#include <immintrin.h>

namespace sife::kernels {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d load(const double* p) { return _mm256_loadu_pd(p); }

// Operand order mirrors vmax/vmin in the scalar formulas.
inline __m256d rt_dilate(__m256d c, __m256d e, __m256d w, __m256d s, __m256d n, __m256d h,
                         __m256d tau) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d gx = _mm256_max_pd(_mm256_max_pd(zero, _mm256_div_pd(_mm256_sub_pd(e, c), h)),
                                   _mm256_div_pd(_mm256_sub_pd(w, c), h));
  const __m256d gy = _mm256_max_pd(_mm256_max_pd(zero, _mm256_div_pd(_mm256_sub_pd(s, c), h)),
                                   _mm256_div_pd(_mm256_sub_pd(n, c), h));
  const __m256d norm =
      _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(gx, gx), _mm256_mul_pd(gy, gy)));
  return _mm256_add_pd(c, _mm256_mul_pd(tau, norm));
}

inline __m256d rt_erode(__m256d c, __m256d e, __m256d w, __m256d s, __m256d n, __m256d h,
                        __m256d tau) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d gx = _mm256_max_pd(_mm256_max_pd(zero, _mm256_div_pd(_mm256_sub_pd(c, e), h)),
                                   _mm256_div_pd(_mm256_sub_pd(c, w), h));
  const __m256d gy = _mm256_max_pd(_mm256_max_pd(zero, _mm256_div_pd(_mm256_sub_pd(c, s), h)),
                                   _mm256_div_pd(_mm256_sub_pd(c, n), h));
  const __m256d norm =
      _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(gx, gx), _mm256_mul_pd(gy, gy)));
  return _mm256_sub_pd(c, _mm256_mul_pd(tau, norm));
}

inline __m256d minmod(__m256d a, __m256d b, __m256d c) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d pos = _mm256_and_pd(
      _mm256_and_pd(_mm256_cmp_pd(a, zero, _CMP_GT_OQ), _mm256_cmp_pd(b, zero, _CMP_GT_OQ)),
      _mm256_cmp_pd(c, zero, _CMP_GT_OQ));
  const __m256d neg = _mm256_and_pd(
      _mm256_and_pd(_mm256_cmp_pd(a, zero, _CMP_LT_OQ), _mm256_cmp_pd(b, zero, _CMP_LT_OQ)),
      _mm256_cmp_pd(c, zero, _CMP_LT_OQ));
  const __m256d lo = _mm256_min_pd(_mm256_min_pd(a, b), c);
  const __m256d hi = _mm256_max_pd(_mm256_max_pd(a, b), c);
  return _mm256_or_pd(_mm256_and_pd(pos, lo), _mm256_and_pd(neg, hi));
}

inline __m256d sild_bracket(__m256d m2, __m256d m1, __m256d c, __m256d p1, __m256d p2,
                            __m256d h) {
  const __m256d dp2 = _mm256_div_pd(_mm256_sub_pd(p2, p1), h);
  const __m256d dp1 = _mm256_div_pd(_mm256_sub_pd(p1, c), h);
  const __m256d dm1 = _mm256_div_pd(_mm256_sub_pd(c, m1), h);
  const __m256d dm2 = _mm256_div_pd(_mm256_sub_pd(m1, m2), h);
  return _mm256_sub_pd(minmod(dp2, dp1, dm1), minmod(dp1, dm1, dm2));
}

void rt_step(const double* north, const double* centre, const double* south, double* out,
             std::size_t n, double h, double tau, Direction dir) {
  const __m256d vh = _mm256_set1_pd(h);
  const __m256d vtau = _mm256_set1_pd(tau);
  std::size_t x = 0;
  if (dir == Direction::dilate) {
    for (; x + kLanes <= n; x += kLanes) {
      _mm256_storeu_pd(out + x, rt_dilate(load(centre + x), load(centre + x + 1),
                                          load(centre + x - 1), load(south + x), load(north + x),
                                          vh, vtau));
    }
  } else {
    for (; x + kLanes <= n; x += kLanes) {
      _mm256_storeu_pd(out + x, rt_erode(load(centre + x), load(centre + x + 1),
                                         load(centre + x - 1), load(south + x), load(north + x),
                                         vh, vtau));
    }
  }
  if (x < n) scalar().rt_step(north + x, centre + x, south + x, out + x, n - x, h, tau, dir);
}

void sife_update(const double* u, const double* dil_r, const double* dil_2r, const double* ero_r,
                 const double* ero_2r, double* out, std::size_t n, double r, double tau) {
  const __m256d vr = _mm256_set1_pd(r);
  const __m256d tau_over_r = _mm256_set1_pd(tau / r);
  std::size_t x = 0;
  for (; x + kLanes <= n; x += kLanes) {
    const __m256d vu = load(u + x);
    const __m256d d1 = load(dil_r + x);
    const __m256d e1 = load(ero_r + x);
    const __m256d a = _mm256_div_pd(_mm256_sub_pd(load(dil_2r + x), d1), vr);
    const __m256d b = _mm256_div_pd(_mm256_sub_pd(d1, vu), vr);
    const __m256d c = _mm256_div_pd(_mm256_sub_pd(vu, e1), vr);
    const __m256d d = _mm256_div_pd(_mm256_sub_pd(e1, load(ero_2r + x)), vr);
    const __m256d upper = _mm256_min_pd(_mm256_min_pd(a, b), c);
    const __m256d lower = _mm256_min_pd(_mm256_min_pd(b, c), d);
    _mm256_storeu_pd(out + x,
                     _mm256_sub_pd(vu, _mm256_mul_pd(tau_over_r, _mm256_sub_pd(upper, lower))));
  }
  if (x < n) {
    scalar().sife_update(u + x, dil_r + x, dil_2r + x, ero_r + x, ero_2r + x, out + x, n - x, r,
                         tau);
  }
}

void sild_step(const double* const* rows, double* out, std::size_t n, double h, double tau) {
  const __m256d vh = _mm256_set1_pd(h);
  const __m256d tau_over_h = _mm256_set1_pd(tau / h);
  const double* c = rows[2];
  std::size_t x = 0;
  for (; x + kLanes <= n; x += kLanes) {
    const __m256d vc = load(c + x);
    const __m256d bx =
        sild_bracket(load(c + x - 2), load(c + x - 1), vc, load(c + x + 1), load(c + x + 2), vh);
    const __m256d by = sild_bracket(load(rows[0] + x), load(rows[1] + x), vc, load(rows[3] + x),
                                    load(rows[4] + x), vh);
    _mm256_storeu_pd(out + x, _mm256_sub_pd(vc, _mm256_mul_pd(tau_over_h, _mm256_add_pd(bx, by))));
  }
  if (x < n) {
    const double* shifted[5] = {rows[0] + x, rows[1] + x, rows[2] + x, rows[3] + x, rows[4] + x};
    scalar().sild_step(shifted, out + x, n - x, h, tau);
  }
}

void shock_step(const double* north, const double* centre, const double* south, double* out,
                std::size_t n, double h, double tau) {
  const __m256d vh = _mm256_set1_pd(h);
  const __m256d vtau = _mm256_set1_pd(tau);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t x = 0;
  for (; x + kLanes <= n; x += kLanes) {
    const __m256d c = load(centre + x);
    const __m256d e = load(centre + x + 1);
    const __m256d w = load(centre + x - 1);
    const __m256d s = load(south + x);
    const __m256d nn = load(north + x);
    const __m256d laplacian =
        _mm256_sub_pd(_mm256_add_pd(_mm256_add_pd(e, w), _mm256_add_pd(s, nn)),
                      _mm256_mul_pd(four, c));
    const __m256d dil = rt_dilate(c, e, w, s, nn, vh, vtau);
    const __m256d ero = rt_erode(c, e, w, s, nn, vh, vtau);
    __m256d result = _mm256_blendv_pd(c, dil, _mm256_cmp_pd(laplacian, zero, _CMP_LT_OQ));
    result = _mm256_blendv_pd(result, ero, _mm256_cmp_pd(laplacian, zero, _CMP_GT_OQ));
    _mm256_storeu_pd(out + x, result);
  }
  if (x < n) scalar().shock_step(north + x, centre + x, south + x, out + x, n - x, h, tau);
}

void convolve_row(const double* in, double* out, std::size_t n, const double* weights, int radius) {
  std::size_t x = 0;
  for (; x + kLanes <= n; x += kLanes) {
    const double* src = in + x - radius;
    __m256d acc = _mm256_setzero_pd();
    for (int k = 0; k <= 2 * radius; ++k) {
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(weights[k]), load(src + k)));
    }
    _mm256_storeu_pd(out + x, acc);
  }
  if (x < n) scalar().convolve_row(in + x, out + x, n - x, weights, radius);
}

void convolve_column(const double* const* rows, double* out, std::size_t n, const double* weights,
                     int radius) {
  std::size_t x = 0;
  for (; x + kLanes <= n; x += kLanes) {
    __m256d acc = _mm256_setzero_pd();
    for (int k = 0; k <= 2 * radius; ++k) {
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(weights[k]), load(rows[k] + x)));
    }
    _mm256_storeu_pd(out + x, acc);
  }
  for (; x < n; ++x) {
    double acc = 0.0;
    for (int k = 0; k <= 2 * radius; ++k) acc = acc + weights[k] * rows[k][x];
    out[x] = acc;
  }
}

constexpr RowKernels kAvx2{
    "avx2", rt_step, sife_update, sild_step, shock_step, convolve_row, convolve_column,
};

}  // namespace

const RowKernels* avx2_table() { return &kAvx2; }

}  // namespace sife::kernels

#endif  // SIFE_HAVE_AVX2
