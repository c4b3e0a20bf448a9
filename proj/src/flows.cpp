#include "sife/flows.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "detail.hpp"

namespace sife {

using kernels::Direction;

std::string_view to_string(FlowKind kind) noexcept {
  switch (kind) {
    case FlowKind::sife: return "sife";
    case FlowKind::sild: return "sild";
    case FlowKind::shock: return "shock";
  }
  return "unknown";
}

FlowKind parse_flow_kind(std::string_view name) {
  if (name == "sife") return FlowKind::sife;
  if (name == "sild") return FlowKind::sild;
  if (name == "shock") return FlowKind::shock;
  throw InvalidArgument("unknown flow '" + std::string(name) + "' (expected sife, sild or shock)");
}

FlowParams FlowParams::defaults(FlowKind kind) {
  FlowParams p;
  p.kind = kind;
  p.tau = kind == FlowKind::shock ? 0.5 : 0.2;
  return p;
}

double flow_step_limit(const FlowParams& params, double h, int dims) {
  switch (params.kind) {
    case FlowKind::sife: return params.sr.r() * params.sr.r();
    case FlowKind::sild: return dims == 1 ? h * h / 2.0 : h * h / 4.0;
    case FlowKind::shock: return rt_step_limit(h, dims);
  }
  return 0.0;
}

void validate(const FlowParams& params, double h, int dims) {
  if (dims != 1 && dims != 2) throw InvalidArgument("only 1-D and 2-D grids are supported");
  if (!(params.converge_eps >= 0.0)) throw InvalidArgument("convergence threshold must be >= 0");
  switch (params.kind) {
    case FlowKind::sife: {
      const double r = params.sr.r();
      if (dims == 1 && r > h * (1.0 + detail::kBoundSlack)) {
        throw StabilityError("1-D SIFE: radius r = " + std::to_string(r) +
                             " exceeds the bound r <= h = " + std::to_string(h));
      }
      detail::require_within(params.sr.tau_rt(), rt_step_limit(h, dims),
                             dims == 1 ? "SIFE Rouy-Tourin step (r / steps <= h)"
                                       : "SIFE Rouy-Tourin step (r / steps <= h/sqrt(2))");
      detail::require_within(params.tau, r * r, "SIFE time step (tau <= r^2)");
      break;
    }
    case FlowKind::sild:
      detail::require_within(params.tau, flow_step_limit(params, h, dims),
                             dims == 1 ? "SILD time step (tau <= h^2/2)" : "SILD time step (tau <= h^2/4)");
      break;
    case FlowKind::shock:
      if (dims != 2) throw InvalidArgument("the shock filter is only defined for images");
      detail::require_within(params.tau, rt_step_limit(h, 2), "shock time step (tau <= h/sqrt(2))");
      break;
  }
}

double FlowReport::worst_violation() const noexcept {
  double worst = 0.0;
  for (const auto& it : iterations) worst = std::max(worst, it.violation);
  return worst;
}

double minmod(double a, double b, double c) noexcept {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

Signal1D sild_step_1d(const Signal1D& u, double tau) {
  FlowParams p = FlowParams::defaults(FlowKind::sild);
  p.tau = tau;
  validate(p, u.h(), 1);
  const double h = u.h();
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  auto at = [&](std::ptrdiff_t i) { return u[static_cast<std::size_t>(reflect_index(i, n))]; };
  std::vector<double> out(u.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double c = at(i);
    const double dp2 = (at(i + 2) - at(i + 1)) / h;
    const double dp1 = (at(i + 1) - c) / h;
    const double dm1 = (c - at(i - 1)) / h;
    const double dm2 = (at(i - 1) - at(i - 2)) / h;
    out[static_cast<std::size_t>(i)] = c - (tau / h) * (minmod(dp2, dp1, dm1) - minmod(dp1, dm1, dm2));
  }
  return Signal1D(std::move(out), h);
}

Signal1D sife_step_1d(const Signal1D& u, const FlowParams& params) {
  validate(params, u.h(), 1);
  const Signal1D dil_r = dilate(u, params.sr);
  const Signal1D dil_2r = dilate(dil_r, params.sr);
  const Signal1D ero_r = erode(u, params.sr);
  const Signal1D ero_2r = erode(ero_r, params.sr);
  std::vector<double> out(u.size());
  kernels::scalar().sife_update(u.values().data(), dil_r.values().data(), dil_2r.values().data(),
                                ero_r.values().data(), ero_2r.values().data(), out.data(), u.size(),
                                params.sr.r(), params.tau);
  return Signal1D(std::move(out), u.h());
}

namespace {

/// Reusable buffers for stepping one image size with one parameter set.
class Stepper2D {
 public:
  Stepper2D(std::size_t width, std::size_t height, double h, const FlowParams& params)
      : width_(width), height_(height), h_(h), params_(params), k_(kernels::active()),
        halo1_(width, height, 1), halo2_(width, height, 2) {
    if (params.kind == FlowKind::sife) {
      for (auto* buf : {&dil_r_, &dil_2r_, &ero_r_, &ero_2r_}) buf->resize(width * height);
    }
  }

  void step(std::span<const double> in, std::span<double> out) {
    switch (params_.kind) {
      case FlowKind::sife: sife(in, out); break;
      case FlowKind::sild: sild(in, out); break;
      case FlowKind::shock: shock(in, out); break;
    }
  }

 private:
  // `steps` Rouy-Tourin sweeps starting from `from`, result in `to`.
  void rt(std::span<const double> from, std::vector<double>& to, Direction dir) {
    std::span<const double> src = from;
    for (int s = 0; s < params_.sr.rt_steps(); ++s) {
      halo1_.assign(src);
      detail::rt_sweep(halo1_, to, h_, params_.sr.tau_rt(), dir, k_);
      src = to;
    }
  }

  void sife(std::span<const double> in, std::span<double> out) {
    rt(in, dil_r_, Direction::dilate);
    rt(dil_r_, dil_2r_, Direction::dilate);
    rt(in, ero_r_, Direction::erode);
    rt(ero_r_, ero_2r_, Direction::erode);
    const double r = params_.sr.r();
    detail::parallel_rows(height_, [&](std::size_t y0, std::size_t y1) {
      const std::size_t off = y0 * width_;
      k_.sife_update(in.data() + off, dil_r_.data() + off, dil_2r_.data() + off, ero_r_.data() + off,
                     ero_2r_.data() + off, out.data() + off, (y1 - y0) * width_, r, params_.tau);
    });
  }

  void sild(std::span<const double> in, std::span<double> out) {
    halo2_.assign(in);
    detail::parallel_rows(height_, [&](std::size_t y0, std::size_t y1) {
      for (std::size_t y = y0; y < y1; ++y) {
        const auto iy = static_cast<std::ptrdiff_t>(y);
        const double* rows[5] = {halo2_.row(iy - 2), halo2_.row(iy - 1), halo2_.row(iy),
                                 halo2_.row(iy + 1), halo2_.row(iy + 2)};
        k_.sild_step(rows, out.data() + y * width_, width_, h_, params_.tau);
      }
    });
  }

  void shock(std::span<const double> in, std::span<double> out) {
    halo1_.assign(in);
    detail::parallel_rows(height_, [&](std::size_t y0, std::size_t y1) {
      for (std::size_t y = y0; y < y1; ++y) {
        const auto iy = static_cast<std::ptrdiff_t>(y);
        k_.shock_step(halo1_.row(iy - 1), halo1_.row(iy), halo1_.row(iy + 1),
                      out.data() + y * width_, width_, h_, params_.tau);
      }
    });
  }

  std::size_t width_;
  std::size_t height_;
  double h_;
  FlowParams params_;
  const kernels::RowKernels& k_;
  PaddedImage halo1_;
  PaddedImage halo2_;
  std::vector<double> dil_r_, dil_2r_, ero_r_, ero_2r_;
};

Image2D step_2d(const Image2D& u, const FlowParams& params) {
  validate(params, u.h(), 2);
  Stepper2D stepper(u.width(), u.height(), u.h(), params);
  std::vector<double> out(u.size());
  stepper.step(u.values(), out);
  return Image2D(u.width(), u.height(), std::move(out), u.h());
}

using Clock = std::chrono::steady_clock;

/// Drives `step(current, next)` and fills the report.
template <class Step>
FlowReport drive(std::vector<double>& current, const FlowParams& params, Step&& step) {
  FlowReport report;
  report.kind = params.kind;
  std::tie(report.input_min, report.input_max) = range_stats(current);
  const auto start = Clock::now();
  std::vector<double> next(current.size());
  for (std::size_t k = 1; k <= params.iterations; ++k) {
    step(std::span<const double>(current), std::span<double>(next));
    IterationRecord rec;
    rec.iteration = k;
    for (std::size_t i = 0; i < next.size(); ++i) {
      rec.max_update = std::max(rec.max_update, std::abs(next[i] - current[i]));
    }
    std::tie(rec.min, rec.max) = range_stats(next);
    rec.violation = std::max({0.0, report.input_min - rec.min, rec.max - report.input_max});
    rec.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    report.iterations.push_back(rec);
    current.swap(next);
    // An exact fixed point stays fixed, so it counts as converged even when
    // the threshold rule is disabled.
    if (rec.max_update == 0.0 || rec.max_update < params.converge_eps) {
      report.converged = true;
      break;
    }
  }
  report.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace

Image2D sild_step_2d(const Image2D& u, double tau) {
  FlowParams p = FlowParams::defaults(FlowKind::sild);
  p.tau = tau;
  return step_2d(u, p);
}

Image2D sife_step_2d(const Image2D& u, const FlowParams& params) {
  FlowParams p = params;
  p.kind = FlowKind::sife;
  return step_2d(u, p);
}

Image2D shock_step_2d(const Image2D& u, double tau) {
  FlowParams p = FlowParams::defaults(FlowKind::shock);
  p.tau = tau;
  return step_2d(u, p);
}

std::vector<double> gaussian_weights(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be >= 0");
  if (sigma == 0.0) return {1.0};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> w(2 * static_cast<std::size_t>(radius) + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    const double v = std::exp(-(static_cast<double>(k) * k) / (2.0 * sigma * sigma));
    w[static_cast<std::size_t>(k + radius)] = v;
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

Image2D gaussian_blur(const Image2D& img, double sigma) {
  const std::vector<double> weights = gaussian_weights(sigma);
  if (weights.size() == 1) return img;
  const int radius = static_cast<int>(weights.size() / 2);
  const auto& k = kernels::active();
  const std::size_t w = img.width();
  const std::size_t hgt = img.height();
  const auto sw = static_cast<std::ptrdiff_t>(w);
  const auto sh = static_cast<std::ptrdiff_t>(hgt);

  std::vector<double> rows_done(img.size());
  detail::parallel_rows(hgt, [&](std::size_t y0, std::size_t y1) {
    std::vector<double> padded(w + 2 * static_cast<std::size_t>(radius));
    for (std::size_t y = y0; y < y1; ++y) {
      const auto src = img.row(y);
      for (std::ptrdiff_t x = -radius; x < sw + radius; ++x) {
        padded[static_cast<std::size_t>(x + radius)] = src[static_cast<std::size_t>(reflect_index(x, sw))];
      }
      k.convolve_row(padded.data() + radius, rows_done.data() + y * w, w, weights.data(), radius);
    }
  });

  std::vector<double> out(img.size());
  detail::parallel_rows(hgt, [&](std::size_t y0, std::size_t y1) {
    std::vector<const double*> taps(weights.size());
    for (std::size_t y = y0; y < y1; ++y) {
      for (std::ptrdiff_t j = -radius; j <= radius; ++j) {
        const auto sy = reflect_index(static_cast<std::ptrdiff_t>(y) + j, sh);
        taps[static_cast<std::size_t>(j + radius)] = rows_done.data() + static_cast<std::size_t>(sy) * w;
      }
      k.convolve_column(taps.data(), out.data() + y * w, w, weights.data(), radius);
    }
  });
  return Image2D(w, hgt, std::move(out), img.h());
}

std::pair<Image2D, FlowReport> run_flow(const Image2D& input, const FlowParams& params) {
  validate(params, input.h(), 2);
  Stepper2D stepper(input.width(), input.height(), input.h(), params);
  std::vector<double> current(input.values().begin(), input.values().end());
  FlowReport report = drive(current, params, [&](std::span<const double> in, std::span<double> out) {
    stepper.step(in, out);
  });
  return {Image2D(input.width(), input.height(), std::move(current), input.h()), std::move(report)};
}

std::pair<Signal1D, FlowReport> run_flow(const Signal1D& input, const FlowParams& params) {
  validate(params, input.h(), 1);
  std::vector<double> current(input.values().begin(), input.values().end());
  const double h = input.h();
  FlowReport report = drive(current, params, [&](std::span<const double> in, std::span<double> out) {
    const Signal1D u(std::vector<double>(in.begin(), in.end()), h);
    const Signal1D v = params.kind == FlowKind::sife ? sife_step_1d(u, params) : sild_step_1d(u, params.tau);
    std::copy(v.values().begin(), v.values().end(), out.begin());
  });
  return {Signal1D(std::move(current), h), std::move(report)};
}

}  // namespace sife
