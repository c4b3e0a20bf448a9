#include "sife/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sife {

namespace {

void require_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidArgument("non-finite grey value at index " + std::to_string(i));
    }
  }
}

void require_spacing(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidArgument("grid spacing h must be positive and finite");
  }
}

}  // namespace

Signal1D::Signal1D(std::vector<double> values, double h) : values_(std::move(values)), h_(h) {
  if (values_.empty()) throw InvalidArgument("signal must contain at least one sample");
  require_spacing(h_);
  require_finite(values_);
}

Image2D::Image2D(std::size_t width, std::size_t height, std::vector<double> values, double h)
    : width_(width), height_(height), values_(std::move(values)), h_(h) {
  if (width_ == 0 || height_ == 0) throw InvalidArgument("image dimensions must be positive");
  if (width_ * height_ != values_.size()) {
    throw InvalidArgument("image of " + std::to_string(width_) + "x" + std::to_string(height_) +
                          " needs " + std::to_string(width_ * height_) + " values, got " +
                          std::to_string(values_.size()));
  }
  require_spacing(h_);
  require_finite(values_);
}

Image2D::Image2D(std::size_t width, std::size_t height, double fill, double h)
    : Image2D(width, height, std::vector<double>(width * height, fill), h) {}

PaddedImage::PaddedImage(std::size_t width, std::size_t height, int halo)
    : width_(width), height_(height), halo_(halo),
      data_((width + 2 * static_cast<std::size_t>(halo)) * (height + 2 * static_cast<std::size_t>(halo))) {}

void PaddedImage::assign(const Image2D& img) {
  if (img.width() != width_ || img.height() != height_) {
    throw DimensionError("padded buffer shape does not match image");
  }
  assign(img.values());
}

void PaddedImage::assign(std::span<const double> values) {
  for (std::size_t y = 0; y < height_; ++y) {
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(y * width_), width_,
                row(static_cast<std::ptrdiff_t>(y)));
  }
  fill_halo();
}

void PaddedImage::fill_halo() {
  const auto w = static_cast<std::ptrdiff_t>(width_);
  const auto hgt = static_cast<std::ptrdiff_t>(height_);
  for (std::ptrdiff_t y = 0; y < hgt; ++y) {
    double* r = row(y);
    for (std::ptrdiff_t k = 1; k <= halo_; ++k) {
      r[-k] = r[reflect_index(-k, w)];
      r[w - 1 + k] = r[reflect_index(w - 1 + k, w)];
    }
  }
  // Whole padded rows, corners included.
  const std::size_t s = stride();
  for (std::ptrdiff_t k = 1; k <= halo_; ++k) {
    std::copy_n(row(reflect_index(-k, hgt)) - halo_, s, row(-k) - halo_);
    std::copy_n(row(reflect_index(hgt - 1 + k, hgt)) - halo_, s, row(hgt - 1 + k) - halo_);
  }
}

Image2D PaddedImage::interior(double h) const {
  std::vector<double> values(width_ * height_);
  for (std::size_t y = 0; y < height_; ++y) {
    std::copy_n(row(static_cast<std::ptrdiff_t>(y)), width_, values.begin() + static_cast<std::ptrdiff_t>(y * width_));
  }
  return Image2D(width_, height_, std::move(values), h);
}

namespace {

void check_halo(int halo, std::size_t extent, const char* axis) {
  if (halo != 1 && halo != 2) throw InvalidArgument("halo must be 1 or 2");
  if (static_cast<std::size_t>(halo) > extent) {
    throw SizeError("halo " + std::to_string(halo) + " exceeds " + axis + " extent " +
                    std::to_string(extent));
  }
}

}  // namespace

std::vector<double> extend_mirrored(const Signal1D& signal, int halo) {
  check_halo(halo, signal.size(), "signal");
  const auto n = static_cast<std::ptrdiff_t>(signal.size());
  std::vector<double> out(signal.size() + 2 * static_cast<std::size_t>(halo));
  for (std::ptrdiff_t i = -halo; i < n + halo; ++i) {
    out[static_cast<std::size_t>(i + halo)] = signal[static_cast<std::size_t>(reflect_index(i, n))];
  }
  return out;
}

PaddedImage extend_mirrored(const Image2D& img, int halo) {
  check_halo(halo, img.width(), "width");
  check_halo(halo, img.height(), "height");
  PaddedImage padded(img.width(), img.height(), halo);
  padded.assign(img);
  return padded;
}

std::pair<double, double> range_stats(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("range_stats of empty input");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi};
}

}  // namespace sife
