#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "sife/grid.hpp"

namespace sife::test {

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double max_abs_diff(const Signal1D& a, const Signal1D& b) { return max_abs_diff(a.values(), b.values()); }
inline double max_abs_diff(const Image2D& a, const Image2D& b) { return max_abs_diff(a.values(), b.values()); }

inline Signal1D ramp(std::size_t n, double slope, double offset = 0.0, double h = 1.0) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = offset + slope * static_cast<double>(i);
  return Signal1D(std::move(v), h);
}

/// Image whose every row is `row`.
inline Image2D rows_of(const Signal1D& row, std::size_t height) {
  std::vector<double> v;
  for (std::size_t y = 0; y < height; ++y) v.insert(v.end(), row.values().begin(), row.values().end());
  return Image2D(row.size(), height, std::move(v), row.h());
}

/// Owning copy, safe to iterate when `x` is a temporary.
template <class Grid>
std::vector<double> values_of(const Grid& x) {
  return {x.values().begin(), x.values().end()};
}

inline std::vector<double> row_values(const Image2D& img, std::size_t y) {
  const auto r = img.row(y);
  return {r.begin(), r.end()};
}

}  // namespace sife::test
