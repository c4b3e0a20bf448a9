#include "sife/kernels.hpp"

#include "formulas.hpp"

namespace sife::kernels {

namespace {

void rt_step(const double* north, const double* centre, const double* south, double* out,
             std::size_t n, double h, double tau, Direction dir) {
  if (dir == Direction::dilate) {
    for (std::size_t x = 0; x < n; ++x) {
      out[x] = rt_dilate(centre[x], centre[x + 1], centre[x - 1], south[x], north[x], h, tau);
    }
  } else {
    for (std::size_t x = 0; x < n; ++x) {
      out[x] = rt_erode(centre[x], centre[x + 1], centre[x - 1], south[x], north[x], h, tau);
    }
  }
}

void sife_update(const double* u, const double* dil_r, const double* dil_2r, const double* ero_r,
                 const double* ero_2r, double* out, std::size_t n, double r, double tau) {
  const double tau_over_r = tau / r;
  for (std::size_t x = 0; x < n; ++x) {
    const double a = (dil_2r[x] - dil_r[x]) / r;
    const double b = (dil_r[x] - u[x]) / r;
    const double c = (u[x] - ero_r[x]) / r;
    const double d = (ero_r[x] - ero_2r[x]) / r;
    const double upper = vmin(vmin(a, b), c);
    const double lower = vmin(vmin(b, c), d);
    out[x] = u[x] - tau_over_r * (upper - lower);
  }
}

void sild_step(const double* const* rows, double* out, std::size_t n, double h, double tau) {
  const double tau_over_h = tau / h;
  const double* c = rows[2];
  for (std::size_t x = 0; x < n; ++x) {
    const double bx = sild_bracket(c[x - 2], c[x - 1], c[x], c[x + 1], c[x + 2], h);
    const double by = sild_bracket(rows[0][x], rows[1][x], c[x], rows[3][x], rows[4][x], h);
    out[x] = c[x] - tau_over_h * (bx + by);
  }
}

void shock_step(const double* north, const double* centre, const double* south, double* out,
                std::size_t n, double h, double tau) {
  for (std::size_t x = 0; x < n; ++x) {
    const double c = centre[x];
    const double e = centre[x + 1];
    const double w = centre[x - 1];
    const double laplacian = ((e + w) + (south[x] + north[x])) - 4.0 * c;
    if (laplacian < 0.0) {
      out[x] = rt_dilate(c, e, w, south[x], north[x], h, tau);
    } else if (laplacian > 0.0) {
      out[x] = rt_erode(c, e, w, south[x], north[x], h, tau);
    } else {
      out[x] = c;
    }
  }
}

void convolve_row(const double* in, double* out, std::size_t n, const double* weights, int radius) {
  for (std::size_t x = 0; x < n; ++x) {
    double acc = 0.0;
    const double* src = in + x - radius;
    for (int k = 0; k <= 2 * radius; ++k) acc = acc + weights[k] * src[k];
    out[x] = acc;
  }
}

void convolve_column(const double* const* rows, double* out, std::size_t n, const double* weights,
                     int radius) {
  for (std::size_t x = 0; x < n; ++x) {
    double acc = 0.0;
    for (int k = 0; k <= 2 * radius; ++k) acc = acc + weights[k] * rows[k][x];
    out[x] = acc;
  }
}

constexpr RowKernels kScalar{
    "scalar", rt_step, sife_update, sild_step, shock_step, convolve_row, convolve_column,
};

}  // namespace

const RowKernels& scalar() { return kScalar; }

}  // namespace sife::kernels
