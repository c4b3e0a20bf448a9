#pragma once

// Sharpening evolutions: stabilised inverse flowline evolution (SIFE) with
// morphological derivatives, stabilised inverse linear diffusion (SILD) with
// the minmod scheme, and a Rouy-Tourin shock filter. Plus Gaussian blur for
// degrading test inputs and a time-stepping driver.

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "sife/grid.hpp"
#include "sife/morphology.hpp"

namespace sife {

enum class FlowKind { sife, sild, shock };

std::string_view to_string(FlowKind kind) noexcept;
/// Accepts "sife", "sild" and "shock".
FlowKind parse_flow_kind(std::string_view name);

struct FlowParams {
  FlowKind kind = FlowKind::sife;
  double tau = 0.2;
  /// Used by SIFE only. Radius 2r is realised with twice the steps of r.
  StructuringRadius sr{0.5, 1};
  /// Iteration budget.
  std::size_t iterations = 50;
  /// Stop once max |u^{k+1} - u^k| < converge_eps; 0 disables the rule.
  double converge_eps = 0.0;

  /// h = 1 defaults: r = 0.5 with one step, tau = 0.2 (SIFE, SILD) or 0.5 (shock).
  static FlowParams defaults(FlowKind kind);
};

/// Largest stable time step of a flow: r^2 for SIFE, h^2/2 (1-D) or h^2/4
/// (2-D) for SILD, h/sqrt(2) for the 2-D shock filter.
double flow_step_limit(const FlowParams& params, double h, int dims);

/// Throws StabilityError naming the violated bound, InvalidArgument for
/// unsupported combinations (shock filter in 1-D).
void validate(const FlowParams& params, double h, int dims);

struct IterationRecord {
  std::size_t iteration = 0;  // 1-based
  double max_update = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// How far the iterate left the input's [min, max] range; 0 when inside.
  double violation = 0.0;
  double elapsed_seconds = 0.0;
};

struct FlowReport {
  FlowKind kind = FlowKind::sife;
  double input_min = 0.0;
  double input_max = 0.0;
  std::vector<IterationRecord> iterations;
  bool converged = false;
  double total_seconds = 0.0;

  std::size_t iterations_run() const noexcept { return iterations.size(); }
  double worst_violation() const noexcept;
};

/// Returns the argument of smallest magnitude if all three share a strict
/// sign, otherwise 0.
double minmod(double a, double b, double c) noexcept;

Signal1D sild_step_1d(const Signal1D& u, double tau);
Image2D sild_step_2d(const Image2D& u, double tau);

/// Requires r <= h and tau <= r^2.
Signal1D sife_step_1d(const Signal1D& u, const FlowParams& params);
/// Requires each Rouy-Tourin step <= h/sqrt(2) and tau <= r^2.
Image2D sife_step_2d(const Image2D& u, const FlowParams& params);

Image2D shock_step_2d(const Image2D& u, double tau);

/// Separable Gaussian, kernel truncated at ceil(3 sigma) and renormalised,
/// mirrored boundary. sigma = 0 is the identity.
Image2D gaussian_blur(const Image2D& img, double sigma);
/// Normalised taps of gaussian_blur, length 2 * ceil(3 sigma) + 1.
std::vector<double> gaussian_weights(double sigma);

std::pair<Image2D, FlowReport> run_flow(const Image2D& input, const FlowParams& params);
std::pair<Signal1D, FlowReport> run_flow(const Signal1D& input, const FlowParams& params);

}  // namespace sife
