#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sife/errors.hpp"

namespace sife {

/// 1-D grey-value signal on a uniform grid of spacing h.
class Signal1D {
 public:
  Signal1D() = default;
  explicit Signal1D(std::vector<double> values, double h = 1.0);

  std::size_t size() const noexcept { return values_.size(); }
  double h() const noexcept { return h_; }
  std::span<const double> values() const& noexcept { return values_; }
  // A view into a temporary would dangle.
  std::span<const double> values() const&& = delete;
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  friend bool operator==(const Signal1D&, const Signal1D&) = default;

 private:
  std::vector<double> values_{0.0};
  double h_ = 1.0;
};

/// Row-major grey-value image; pixel (x, y) lives at values[y * width + x].
class Image2D {
 public:
  Image2D() = default;
  Image2D(std::size_t width, std::size_t height, std::vector<double> values,
          double h = 1.0);
  /// Constant image.
  Image2D(std::size_t width, std::size_t height, double fill, double h = 1.0);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }
  double h() const noexcept { return h_; }
  std::span<const double> values() const& noexcept { return values_; }
  std::span<const double> values() const&& = delete;
  double at(std::size_t x, std::size_t y) const noexcept {
    return values_[y * width_ + x];
  }
  std::span<const double> row(std::size_t y) const&& = delete;
  std::span<const double> row(std::size_t y) const& noexcept {
    return std::span<const double>(values_).subspan(y * width_, width_);
  }

  friend bool operator==(const Image2D&, const Image2D&) = default;

 private:
  std::size_t width_ = 1;
  std::size_t height_ = 1;
  std::vector<double> values_{0.0};
  double h_ = 1.0;
};

enum class BoundaryMode { mirror };

/// Reflecting boundary: index -1 maps to 0, -2 to 1, n to n-1, n+1 to n-2.
struct BoundaryPolicy {
  BoundaryMode mode = BoundaryMode::mirror;
  int halo = 2;
};

/// Maps any integer index onto [0, n) by repeated half-sample reflection.
constexpr std::ptrdiff_t reflect_index(std::ptrdiff_t i, std::ptrdiff_t n) noexcept {
  const std::ptrdiff_t period = 2 * n;
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

/// Image enlarged by `halo` mirrored cells on every side. Coordinates passed
/// to at() and row() are interior coordinates and may be negative.
class PaddedImage {
 public:
  PaddedImage() = default;
  PaddedImage(std::size_t width, std::size_t height, int halo);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  int halo() const noexcept { return halo_; }
  std::size_t stride() const noexcept { return width_ + 2 * static_cast<std::size_t>(halo_); }
  std::span<const double> data() const noexcept { return data_; }

  double at(std::ptrdiff_t x, std::ptrdiff_t y) const noexcept {
    return data_[index(x, y)];
  }
  /// Pointer to interior pixel (0, y); valid from [-halo] to [width + halo).
  const double* row(std::ptrdiff_t y) const noexcept { return data_.data() + index(0, y); }
  double* row(std::ptrdiff_t y) noexcept { return data_.data() + index(0, y); }

  /// Copies `img` into the interior and rebuilds the mirrored halo. Any halo
  /// width is accepted here; reflection repeats for halos wider than the image.
  void assign(const Image2D& img);
  void assign(std::span<const double> values);

  /// Drops the halo.
  Image2D interior(double h) const;

 private:
  std::size_t index(std::ptrdiff_t x, std::ptrdiff_t y) const noexcept {
    return static_cast<std::size_t>((y + halo_) * static_cast<std::ptrdiff_t>(stride()) + x + halo_);
  }
  void fill_halo();

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  int halo_ = 0;
  std::vector<double> data_;
};

/// Mirrored extension of a signal. halo must be 1 or 2 and not exceed the
/// signal length.
std::vector<double> extend_mirrored(const Signal1D& signal, int halo);
/// Mirrored extension of an image; halo must be 1 or 2 and not exceed either
/// image dimension.
PaddedImage extend_mirrored(const Image2D& img, int halo);

std::pair<double, double> range_stats(std::span<const double> values);
inline std::pair<double, double> range_stats(const Signal1D& s) { return range_stats(s.values()); }
inline std::pair<double, double> range_stats(const Image2D& img) { return range_stats(img.values()); }

}  // namespace sife
