#pragma once

// PDE-based dilation and erosion with the Rouy-Tourin upwind scheme, a flat
// (set-theoretic) dilation used as a test oracle, and morphological
// derivative approximations built from them.

#include "sife/grid.hpp"

namespace sife {

/// Largest stable Rouy-Tourin step: h in 1-D, h / sqrt(2) in 2-D.
double rt_step_limit(double h, int dims);

/// Ball radius r realised as `rt_steps` Rouy-Tourin steps of size r / rt_steps.
class StructuringRadius {
 public:
  StructuringRadius(double r, int rt_steps);

  /// Fewest steps that keep each step within rt_step_limit(h, dims).
  static StructuringRadius with_default_steps(double r, double h, int dims);

  double r() const noexcept { return r_; }
  int rt_steps() const noexcept { return rt_steps_; }
  double tau_rt() const noexcept { return r_ / rt_steps_; }

  friend bool operator==(const StructuringRadius&, const StructuringRadius&) = default;

 private:
  double r_;
  int rt_steps_;
};

// Single Rouy-Tourin steps; each throws StabilityError when tau exceeds
// rt_step_limit for the grid.
Signal1D rt_dilate_step_1d(const Signal1D& u, double tau);
Signal1D rt_erode_step_1d(const Signal1D& u, double tau);
Image2D rt_dilate_step_2d(const Image2D& u, double tau);
Image2D rt_erode_step_2d(const Image2D& u, double tau);

/// sr.rt_steps() steps of size sr.tau_rt(), mirror re-applied before each.
Signal1D dilate(const Signal1D& u, const StructuringRadius& sr);
Signal1D erode(const Signal1D& u, const StructuringRadius& sr);
Image2D dilate(const Image2D& u, const StructuringRadius& sr);
Image2D erode(const Image2D& u, const StructuringRadius& sr);

/// Max (min) over the discrete Euclidean ball {a^2 + b^2 <= radius_px^2} with
/// mirrored boundary. Reference for tests only.
Signal1D flat_dilate_oracle(const Signal1D& u, int radius_px);
Image2D flat_dilate_oracle(const Image2D& u, int radius_px);
Signal1D flat_erode_oracle(const Signal1D& u, int radius_px);
Image2D flat_erode_oracle(const Image2D& u, int radius_px);

/// (u - erode_r(u)) / r
Signal1D internal_gradient(const Signal1D& u, const StructuringRadius& sr);
Image2D internal_gradient(const Image2D& u, const StructuringRadius& sr);
/// (dilate_r(u) - u) / r
Signal1D external_gradient(const Signal1D& u, const StructuringRadius& sr);
Image2D external_gradient(const Image2D& u, const StructuringRadius& sr);

/// Morphological estimate of the second derivative along the gradient
/// direction: (external - internal gradient) / r.
Signal1D second_flowline_derivative(const Signal1D& u, const StructuringRadius& sr);
Image2D second_flowline_derivative(const Image2D& u, const StructuringRadius& sr);

}  // namespace sife
