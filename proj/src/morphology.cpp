#include "sife/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "detail.hpp"

namespace sife {

using kernels::Direction;

double rt_step_limit(double h, int dims) {
  if (dims == 1) return h;
  if (dims == 2) return h / std::sqrt(2.0);
  throw InvalidArgument("only 1-D and 2-D grids are supported");
}

StructuringRadius::StructuringRadius(double r, int rt_steps) : r_(r), rt_steps_(rt_steps) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("structuring radius must be positive");
  if (rt_steps < 1) throw InvalidArgument("structuring radius needs at least one Rouy-Tourin step");
}

StructuringRadius StructuringRadius::with_default_steps(double r, double h, int dims) {
  const double limit = rt_step_limit(h, dims);
  const int steps = std::max(1, static_cast<int>(std::ceil(r / limit * (1.0 - detail::kBoundSlack))));
  return StructuringRadius(r, steps);
}

namespace {

std::string step_label(int dims, const char* bound) {
  return std::to_string(dims) + "-D Rouy-Tourin step (tau <= " + bound + ")";
}

Signal1D rt_step_1d(const Signal1D& u, double tau, Direction dir) {
  const double h = u.h();
  detail::require_within(tau, rt_step_limit(h, 1), step_label(1, "h"));
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  std::vector<double> out(u.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double c = u[static_cast<std::size_t>(i)];
    const double right = u[static_cast<std::size_t>(reflect_index(i + 1, n))];
    const double left = u[static_cast<std::size_t>(reflect_index(i - 1, n))];
    if (dir == Direction::dilate) {
      out[static_cast<std::size_t>(i)] = c + tau * std::max({0.0, (right - c) / h, (left - c) / h});
    } else {
      out[static_cast<std::size_t>(i)] = c - tau * std::max({0.0, (c - right) / h, (c - left) / h});
    }
  }
  return Signal1D(std::move(out), h);
}

Image2D rt_steps_2d(const Image2D& u, double tau, int steps, Direction dir) {
  detail::require_within(tau, rt_step_limit(u.h(), 2), step_label(2, "h/sqrt(2)"));
  const auto& k = kernels::active();
  PaddedImage padded(u.width(), u.height(), 1);
  std::vector<double> current(u.values().begin(), u.values().end());
  for (int s = 0; s < steps; ++s) {
    padded.assign(current);
    detail::rt_sweep(padded, current, u.h(), tau, dir, k);
  }
  return Image2D(u.width(), u.height(), std::move(current), u.h());
}

Signal1D rt_steps_1d(const Signal1D& u, const StructuringRadius& sr, Direction dir) {
  Signal1D v = u;
  for (int s = 0; s < sr.rt_steps(); ++s) v = rt_step_1d(v, sr.tau_rt(), dir);
  return v;
}

template <class Cmp>
Signal1D flat_1d(const Signal1D& u, int radius_px, Cmp better) {
  if (radius_px < 0) throw InvalidArgument("flat oracle radius must be nonnegative");
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  std::vector<double> out(u.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double best = u[static_cast<std::size_t>(i)];
    for (std::ptrdiff_t a = -radius_px; a <= radius_px; ++a) {
      const double v = u[static_cast<std::size_t>(reflect_index(i + a, n))];
      if (better(v, best)) best = v;
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return Signal1D(std::move(out), u.h());
}

template <class Cmp>
Image2D flat_2d(const Image2D& u, int radius_px, Cmp better) {
  if (radius_px < 0) throw InvalidArgument("flat oracle radius must be nonnegative");
  const auto w = static_cast<std::ptrdiff_t>(u.width());
  const auto hgt = static_cast<std::ptrdiff_t>(u.height());
  const std::ptrdiff_t r2 = static_cast<std::ptrdiff_t>(radius_px) * radius_px;
  std::vector<double> out(u.size());
  for (std::ptrdiff_t y = 0; y < hgt; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      double best = u.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
      for (std::ptrdiff_t b = -radius_px; b <= radius_px; ++b) {
        for (std::ptrdiff_t a = -radius_px; a <= radius_px; ++a) {
          if (a * a + b * b > r2) continue;
          const double v = u.at(static_cast<std::size_t>(reflect_index(x + a, w)),
                                static_cast<std::size_t>(reflect_index(y + b, hgt)));
          if (better(v, best)) best = v;
        }
      }
      out[static_cast<std::size_t>(y * w + x)] = best;
    }
  }
  return Image2D(u.width(), u.height(), std::move(out), u.h());
}

std::vector<double> scaled_difference(std::span<const double> a, std::span<const double> b, double r) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] - b[i]) / r;
  return out;
}

}  // namespace

Signal1D rt_dilate_step_1d(const Signal1D& u, double tau) { return rt_step_1d(u, tau, Direction::dilate); }
Signal1D rt_erode_step_1d(const Signal1D& u, double tau) { return rt_step_1d(u, tau, Direction::erode); }
Image2D rt_dilate_step_2d(const Image2D& u, double tau) { return rt_steps_2d(u, tau, 1, Direction::dilate); }
Image2D rt_erode_step_2d(const Image2D& u, double tau) { return rt_steps_2d(u, tau, 1, Direction::erode); }

Signal1D dilate(const Signal1D& u, const StructuringRadius& sr) { return rt_steps_1d(u, sr, Direction::dilate); }
Signal1D erode(const Signal1D& u, const StructuringRadius& sr) { return rt_steps_1d(u, sr, Direction::erode); }
Image2D dilate(const Image2D& u, const StructuringRadius& sr) {
  return rt_steps_2d(u, sr.tau_rt(), sr.rt_steps(), Direction::dilate);
}
Image2D erode(const Image2D& u, const StructuringRadius& sr) {
  return rt_steps_2d(u, sr.tau_rt(), sr.rt_steps(), Direction::erode);
}

Signal1D flat_dilate_oracle(const Signal1D& u, int radius_px) { return flat_1d(u, radius_px, std::greater<>{}); }
Image2D flat_dilate_oracle(const Image2D& u, int radius_px) { return flat_2d(u, radius_px, std::greater<>{}); }
Signal1D flat_erode_oracle(const Signal1D& u, int radius_px) { return flat_1d(u, radius_px, std::less<>{}); }
Image2D flat_erode_oracle(const Image2D& u, int radius_px) { return flat_2d(u, radius_px, std::less<>{}); }

Signal1D internal_gradient(const Signal1D& u, const StructuringRadius& sr) {
  const Signal1D e = erode(u, sr);
  return Signal1D(scaled_difference(u.values(), e.values(), sr.r()), u.h());
}
Image2D internal_gradient(const Image2D& u, const StructuringRadius& sr) {
  const Image2D e = erode(u, sr);
  return Image2D(u.width(), u.height(), scaled_difference(u.values(), e.values(), sr.r()), u.h());
}
Signal1D external_gradient(const Signal1D& u, const StructuringRadius& sr) {
  const Signal1D d = dilate(u, sr);
  return Signal1D(scaled_difference(d.values(), u.values(), sr.r()), u.h());
}
Image2D external_gradient(const Image2D& u, const StructuringRadius& sr) {
  const Image2D d = dilate(u, sr);
  return Image2D(u.width(), u.height(), scaled_difference(d.values(), u.values(), sr.r()), u.h());
}

Signal1D second_flowline_derivative(const Signal1D& u, const StructuringRadius& sr) {
  const Signal1D outer = external_gradient(u, sr);
  const Signal1D inner = internal_gradient(u, sr);
  return Signal1D(scaled_difference(outer.values(), inner.values(), sr.r()), u.h());
}
Image2D second_flowline_derivative(const Image2D& u, const StructuringRadius& sr) {
  const Image2D outer = external_gradient(u, sr);
  const Image2D inner = internal_gradient(u, sr);
  return Image2D(u.width(), u.height(), scaled_difference(outer.values(), inner.values(), sr.r()), u.h());
}

}  // namespace sife
