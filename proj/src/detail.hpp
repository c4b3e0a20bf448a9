#pragma once

// Internal helpers shared by the morphology and flow translation units.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "sife/errors.hpp"
#include "sife/grid.hpp"
#include "sife/kernels.hpp"

namespace sife::detail {

/// Relative slack when comparing a step against its stability bound, so that a
/// bound recomputed along a different arithmetic path (h / sqrt(2), r * r)
/// is still accepted.
inline constexpr double kBoundSlack = 1e-12;

inline void require_within(double value, double bound, const std::string& what) {
  if (!(value > 0.0)) throw StabilityError(what + ": step must be positive");
  if (value > bound * (1.0 + kBoundSlack)) {
    throw StabilityError(what + ": " + std::to_string(value) + " exceeds the stability bound " +
                         std::to_string(bound));
  }
}

/// Worker count: SIFE_THREADS when set (1..64), else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("SIFE_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(std::min(n, 64L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(row_begin, row_end) over [0, rows) split into contiguous bands.
/// Bands are disjoint, so results do not depend on the worker count.
template <class Fn>
void parallel_rows(std::size_t rows, Fn&& fn) {
  constexpr std::size_t kMinRowsPerBand = 16;
  const std::size_t workers =
      std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, rows / kMinRowsPerBand));
  if (workers <= 1) {
    fn(std::size_t{0}, rows);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  const std::size_t band = (rows + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = std::min(rows, w * band);
    const std::size_t end = std::min(rows, begin + band);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  fn(std::size_t{0}, std::min(rows, band));
}

/// One Rouy-Tourin sweep over a padded image (halo >= 1) into `out`.
inline void rt_sweep(const PaddedImage& src, std::span<double> out, double h, double tau,
                     kernels::Direction dir, const kernels::RowKernels& k) {
  const std::size_t w = src.width();
  parallel_rows(src.height(), [&](std::size_t y0, std::size_t y1) {
    for (std::size_t y = y0; y < y1; ++y) {
      const auto iy = static_cast<std::ptrdiff_t>(y);
      k.rt_step(src.row(iy - 1), src.row(iy), src.row(iy + 1), out.data() + y * w, w, h, tau, dir);
    }
  });
}

}  // namespace sife::detail
