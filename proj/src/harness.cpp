#include "sife/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sife/io.hpp"
#include "sife/kernels.hpp"

namespace sife::harness {

double Generator::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::size_t Generator::below(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n));
}

std::vector<double> Generator::noise(std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(0.0, 255.0);
  return v;
}

Signal1D Generator::noise_signal(std::size_t n, double h) { return Signal1D(noise(n), h); }

Signal1D Generator::smooth_signal(std::size_t n, double h) {
  const Image2D row = gaussian_blur(Image2D(n, 1, noise(n), h), 2.0);
  return Signal1D(std::vector<double>(row.values().begin(), row.values().end()), h);
}

Signal1D Generator::monotone_signal(std::size_t n, bool increasing, double h) {
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double step = uniform() < 0.2 ? 0.0 : uniform() * uniform();
    v[i] = v[i - 1] + step;
  }
  if (v.back() > 0.0) {
    const double scale = 255.0 / v.back();
    for (double& x : v) x *= scale;
  }
  if (!increasing) std::reverse(v.begin(), v.end());
  return Signal1D(std::move(v), h);
}

Signal1D Generator::concave_increasing_signal(std::size_t n, double h) {
  std::vector<double> steps(n > 0 ? n - 1 : 0);
  for (double& s : steps) s = uniform(0.0, 10.0);
  std::sort(steps.begin(), steps.end(), std::greater<>{});
  std::vector<double> v(n, uniform(0.0, 50.0));
  for (std::size_t i = 1; i < n; ++i) v[i] = v[i - 1] + steps[i - 1];
  return Signal1D(std::move(v), h);
}

Signal1D Generator::binary_signal(std::size_t n, double h) {
  const double lo = uniform(0.0, 127.0);
  const double hi = uniform(128.0, 255.0);
  std::vector<double> v(n);
  for (double& x : v) x = uniform() < 0.5 ? lo : hi;
  return Signal1D(std::move(v), h);
}

Image2D Generator::noise_image(std::size_t width, std::size_t height, double h) {
  return Image2D(width, height, noise(width * height), h);
}

Image2D Generator::smooth_image(std::size_t width, std::size_t height, double h) {
  return gaussian_blur(noise_image(width, height, h), 2.0);
}

Image2D Generator::binary_image(std::size_t width, std::size_t height, double h) {
  const double lo = uniform(0.0, 127.0);
  const double hi = uniform(128.0, 255.0);
  std::vector<double> v(width * height);
  for (double& x : v) x = uniform() < 0.5 ? lo : hi;
  return Image2D(width, height, std::move(v), h);
}

std::string FlowConfig::describe() const {
  std::ostringstream os;
  os << to_string(params.kind) << dims << "d";
  if (params.kind == FlowKind::sife) os << " r=" << format_number(params.sr.r());
  os << " tau=" << format_number(params.tau) << " n=" << size << " it=" << params.iterations;
  return os.str();
}

namespace {

PropertyResult make_result(std::string name, std::size_t trials, double tolerance, std::uint64_t seed) {
  PropertyResult r;
  r.property = std::move(name);
  r.trials = trials;
  r.tolerance = tolerance;
  r.seed = seed;
  return r;
}

void record(PropertyResult& result, double violation) {
  result.worst_violation = std::max(result.worst_violation, violation);
  if (violation > result.tolerance) ++result.failures;
}

}  // namespace

PropertyResult check_maxmin(const FlowConfig& config, std::uint64_t seed, std::size_t trials) {
  PropertyResult result = make_result("maxmin " + config.describe(), trials, kExactTolerance, seed);
  Generator gen(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const bool smooth = t % 2 == 1;
    FlowReport report;
    if (config.dims == 1) {
      const Signal1D f = smooth ? gen.smooth_signal(config.size) : gen.noise_signal(config.size);
      report = run_flow(f, config.params).second;
    } else {
      const Image2D f = smooth ? gen.smooth_image(config.size, config.size)
                               : gen.noise_image(config.size, config.size);
      report = run_flow(f, config.params).second;
    }
    record(result, report.worst_violation());
  }
  return result;
}

namespace {

/// One 1-D step without the tau bound, for probing beyond it. The Rouy-Tourin
/// sub-steps keep their own limit.
Signal1D unbounded_step_1d(const Signal1D& u, const FlowParams& params) {
  if (params.kind == FlowKind::sild) {
    // SILD's bracket is linear in tau: scale a unit-fraction step.
    const double safe = u.h() * u.h() / 2.0;
    const Signal1D v = sild_step_1d(u, safe);
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + (v[i] - u[i]) * (params.tau / safe);
    return Signal1D(std::move(out), u.h());
  }
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

}  // namespace

PropertyResult check_monotonicity(const FlowConfig& config, std::uint64_t seed, std::size_t trials) {
  if (config.dims != 1) throw InvalidArgument("monotonicity is checked on 1-D signals only");
  if (config.params.kind == FlowKind::shock) throw InvalidArgument("the shock filter is 2-D only");
  const bool beyond_bound = config.params.tau > flow_step_limit(config.params, 1.0, 1) * (1.0 + 1e-12);
  PropertyResult result =
      make_result("monotonicity " + config.describe(), trials, kExactTolerance, seed);
  result.informational = beyond_bound;
  Generator gen(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const bool increasing = t % 2 == 0;
    Signal1D u = gen.monotone_signal(config.size, increasing);
    double worst = 0.0;
    for (std::size_t k = 0; k < config.params.iterations; ++k) {
      u = beyond_bound ? unbounded_step_1d(u, config.params)
                       : (config.params.kind == FlowKind::sife ? sife_step_1d(u, config.params)
                                                               : sild_step_1d(u, config.params.tau));
      for (std::size_t i = 1; i < u.size(); ++i) {
        const double d = increasing ? u[i] - u[i - 1] : u[i - 1] - u[i];
        worst = std::max(worst, -d);
      }
    }
    record(result, worst);
  }
  return result;
}

PropertyResult check_equivalence_1d(std::uint64_t seed, std::size_t trials, std::size_t length,
                                    std::size_t steps) {
  FlowParams sife = FlowParams::defaults(FlowKind::sife);
  sife.sr = StructuringRadius(1.0, 1);
  sife.tau = 0.5;
  PropertyResult result = make_result("equivalence sife1d r=1 vs sild1d tau=0.5 n=" + std::to_string(length),
                                      trials, kExactTolerance, seed);
  Generator gen(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Signal1D u = gen.monotone_signal(length, t % 2 == 0);
    double worst = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      const Signal1D a = sife_step_1d(u, sife);
      const Signal1D b = sild_step_1d(u, sife.tau);
      for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
      u = b;
    }
    record(result, worst);
  }
  return result;
}

PropertyResult check_binary_invariance(const FlowConfig& config, std::uint64_t seed,
                                       std::size_t trials) {
  PropertyResult result = make_result("binary " + config.describe(), trials, kExactTolerance, seed);
  const FlowParams& p = config.params;
  validate(p, 1.0, config.dims);
  // Stepped by hand: run_flow would stop at the first exact fixed point.
  Generator gen(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    double drift = 0.0;
    if (config.dims == 1) {
      const Signal1D f = gen.binary_signal(config.size);
      Signal1D u = f;
      for (std::size_t k = 0; k < p.iterations; ++k) {
        u = p.kind == FlowKind::sife ? sife_step_1d(u, p) : sild_step_1d(u, p.tau);
      }
      for (std::size_t i = 0; i < f.size(); ++i) drift = std::max(drift, std::abs(u[i] - f[i]));
    } else {
      const Image2D f = gen.binary_image(config.size, config.size);
      Image2D u = f;
      for (std::size_t k = 0; k < p.iterations; ++k) {
        switch (p.kind) {
          case FlowKind::sife: u = sife_step_2d(u, p); break;
          case FlowKind::sild: u = sild_step_2d(u, p.tau); break;
          case FlowKind::shock: u = shock_step_2d(u, p.tau); break;
        }
      }
      for (std::size_t i = 0; i < f.size(); ++i) {
        drift = std::max(drift, std::abs(u.values()[i] - f.values()[i]));
      }
    }
    record(result, drift);
  }
  return result;
}

double mse(const Image2D& a, const Image2D& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionError("mse: images differ in size");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values()[i] - b.values()[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

double psnr(const Image2D& a, const Image2D& b, double peak) {
  if (!(peak > 0.0)) throw InvalidArgument("psnr: peak must be positive");
  const double e = mse(a, b);
  if (e == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / e);
}

EdgeProfile edge_regularity_profile(const Image2D& img, double threshold) {
  const std::size_t w = img.width();
  const std::size_t hgt = img.height();
  std::vector<std::uint8_t> fg(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) fg[i] = img.values()[i] >= threshold ? 1 : 0;

  EdgeProfile profile;
  for (std::size_t y = 0; y < hgt; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t i = y * w + x;
      if (x + 1 < w && fg[i] != fg[i + 1]) ++profile.perimeter;
      if (y + 1 < hgt && fg[i] != fg[i + w]) ++profile.perimeter;
    }
  }

  std::vector<std::uint8_t> seen(img.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < img.size(); ++start) {
    if (seen[start]) continue;
    ++profile.regions;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      const std::size_t x = i % w;
      const std::size_t y = i / w;
      auto visit = [&](std::size_t j) {
        if (!seen[j] && fg[j] == fg[i]) {
          seen[j] = 1;
          stack.push_back(j);
        }
      };
      if (x > 0) visit(i - 1);
      if (x + 1 < w) visit(i + 1);
      if (y > 0) visit(i - w);
      if (y + 1 < hgt) visit(i + w);
    }
  }
  return profile;
}

namespace {

FlowConfig sife_1d(double r, double tau, std::size_t iterations) {
  FlowConfig c;
  c.params = FlowParams::defaults(FlowKind::sife);
  c.params.sr = StructuringRadius(r, 1);
  c.params.tau = tau;
  c.params.iterations = iterations;
  c.dims = 1;
  c.size = 64;
  return c;
}

}  // namespace

std::vector<PropertyResult> run_suite(std::string_view suite, std::uint64_t seed, std::size_t trials) {
  const bool all = suite == "all";
  if (!all && suite != "theorem1" && suite != "maxmin2d" && suite != "equivalence" && suite != "binary") {
    throw InvalidArgument("unknown suite '" + std::string(suite) +
                          "' (expected theorem1, maxmin2d, equivalence, binary or all)");
  }
  std::vector<PropertyResult> out;
  if (all || suite == "theorem1") {
    for (const double r : {0.5, 1.0}) {
      const FlowConfig c = sife_1d(r, r * r, 100);
      out.push_back(check_maxmin(c, seed, trials));
      out.push_back(check_monotonicity(c, seed, trials));
    }
    out.push_back(check_monotonicity(sife_1d(0.5, 4 * 0.25, 100), seed, trials));
  }
  if (all || suite == "maxmin2d") {
    FlowConfig c;
    c.dims = 2;
    c.size = 64;
    c.params = FlowParams::defaults(FlowKind::sife);
    c.params.tau = 0.25;
    c.params.iterations = 100;
    out.push_back(check_maxmin(c, seed, trials));

    FlowConfig sild = c;
    sild.size = 32;
    sild.params = FlowParams::defaults(FlowKind::sild);
    sild.params.tau = 0.25;
    sild.params.iterations = 100;
    out.push_back(check_maxmin(sild, seed, trials));

    FlowConfig shock = sild;
    shock.params = FlowParams::defaults(FlowKind::shock);
    shock.params.iterations = 100;
    out.push_back(check_maxmin(shock, seed, trials));
  }
  if (all || suite == "equivalence") out.push_back(check_equivalence_1d(seed, trials));
  if (all || suite == "binary") {
    out.push_back(check_binary_invariance(sife_1d(0.5, 0.25, 100), seed, trials));
    FlowConfig c;
    c.dims = 2;
    c.size = 32;
    c.params = FlowParams::defaults(FlowKind::sife);
    c.params.tau = 0.25;
    c.params.iterations = 100;
    out.push_back(check_binary_invariance(c, seed, trials));
  }
  return out;
}

std::string results_csv(std::span<const PropertyResult> results) {
  std::string out = "property,trials,failures,worst_violation,tolerance,seed,informational\n";
  for (const auto& r : results) {
    out += r.property + ',' + std::to_string(r.trials) + ',' + std::to_string(r.failures) + ',' +
           format_number(r.worst_violation) + ',' + format_number(r.tolerance) + ',' +
           std::to_string(r.seed) + ',' + (r.informational ? "1" : "0") + '\n';
  }
  return out;
}

std::string results_table(std::span<const PropertyResult> results) {
  std::size_t width = 8;
  for (const auto& r : results) width = std::max(width, r.property.size());
  std::ostringstream os;
  // At least one space after every cell, even an oversized one.
  auto pad = [&](const std::string& s, std::size_t n) { return s + std::string(n > s.size() ? n - s.size() : 1, ' '); };
  os << pad("property", width) << "  " << pad("trials", 7) << pad("fails", 7) << pad("worst", 24)
     << pad("tol", 8) << pad("seed", 8) << "status\n";
  for (const auto& r : results) {
    const char* status = r.informational ? "INFO" : (r.passed() ? "PASS" : "FAIL");
    os << pad(r.property, width) << "  " << pad(std::to_string(r.trials), 7)
       << pad(std::to_string(r.failures), 7) << pad(format_number(r.worst_violation), 24)
       << pad(format_number(r.tolerance), 8) << pad(std::to_string(r.seed), 8) << status << '\n';
  }
  return os.str();
}

}  // namespace sife::harness
