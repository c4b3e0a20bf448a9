#pragma once

// Row kernels behind the 2-D schemes. Every variant evaluates the same
// arithmetic in the same order (no fused multiply-add), so the SIMD variants
// are bit-identical to the scalar reference.

#include <cstddef>

namespace sife::kernels {

/// +1 selects the Rouy-Tourin dilation update, -1 the erosion update.
enum class Direction : int { erode = -1, dilate = 1 };

struct RowKernels {
  const char* name;

  /// One Rouy-Tourin step for a row of n pixels. north, centre and south point
  /// at x = 0 of rows y-1, y, y+1; centre[-1] and centre[n] must be valid.
  void (*rt_step)(const double* north, const double* centre, const double* south, double* out,
                  std::size_t n, double h, double tau, Direction dir);

  /// Morphological SIFE update from u and its dilations/erosions of radius r, 2r.
  void (*sife_update)(const double* u, const double* dil_r, const double* dil_2r,
                      const double* ero_r, const double* ero_2r, double* out, std::size_t n,
                      double r, double tau);

  /// Minmod SILD step along x and y, brackets summed. rows[0..4] point at
  /// x = 0 of rows y-2..y+2; rows[2][-2..n+1] must be valid.
  void (*sild_step)(const double* const* rows, double* out, std::size_t n, double h, double tau);

  /// Shock filter step: Rouy-Tourin dilation where the 5-point Laplacian is
  /// negative, erosion where positive, identity where it is zero.
  void (*shock_step)(const double* north, const double* centre, const double* south, double* out,
                     std::size_t n, double h, double tau);

  /// out[x] = sum_k weights[k] * in[x + k - radius]; in[-radius..n+radius) valid.
  void (*convolve_row)(const double* in, double* out, std::size_t n, const double* weights,
                       int radius);

  /// out[x] = sum_k weights[k] * rows[k][x] over 2 * radius + 1 rows.
  void (*convolve_column)(const double* const* rows, double* out, std::size_t n,
                          const double* weights, int radius);
};

const RowKernels& scalar();

/// nullptr when the build or the running CPU lacks AVX2.
const RowKernels* avx2();

/// Kernels used by the library. Picks AVX2 when available unless the
/// environment variable SIFE_SIMD is set to "scalar".
const RowKernels& active();

/// Overrides the active kernels (process-wide); passing nullptr restores the
/// automatic choice.
void set_active(const RowKernels* kernels);

}  // namespace sife::kernels
