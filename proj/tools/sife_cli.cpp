// sife: command-line front end for the sharpening flows, Rouy-Tourin
// morphology and the stability property suites.
//
// Exit codes: 0 success, 1 usage or parameter error, 2 I/O or parse error,
// 3 property-suite failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sife/errors.hpp"
#include "sife/flows.hpp"
#include "sife/harness.hpp"
#include "sife/io.hpp"
#include "sife/kernels.hpp"
#include "sife/morphology.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kPropertyFailure = 3 };

struct LoadedImage {
  sife::Image2D image;
  sife::PgmMode mode;
  unsigned maxval;
};

LoadedImage load(const std::string& path) {
  const sife::PgmImage pgm = sife::decode_pgm(sife::read_file(path));
  return {sife::read_pgm(sife::encode_pgm(pgm)), pgm.mode, pgm.maxval};
}

void save(const std::string& path, const sife::Image2D& img, const LoadedImage& like) {
  sife::write_file(path, sife::write_pgm(img, like.mode, like.maxval));
}

struct SharpenOptions {
  std::string flow = "sife";
  std::optional<double> tau;
  double r = 0.5;
  int rt_steps = 1;
  std::size_t iterations = 50;
  double converge_eps = 0.0;
  std::string input, output, report;
  bool no_timing = false;
};

int run_sharpen(const SharpenOptions& o) {
  sife::FlowParams params = sife::FlowParams::defaults(sife::parse_flow_kind(o.flow));
  if (o.tau) params.tau = *o.tau;
  params.sr = sife::StructuringRadius(o.r, o.rt_steps);
  params.iterations = o.iterations;
  params.converge_eps = o.converge_eps;

  const LoadedImage in = load(o.input);
  sife::validate(params, in.image.h(), 2);
  const auto [out, report] = sife::run_flow(in.image, params);
  save(o.output, out, in);
  if (!o.report.empty()) sife::write_file(o.report, sife::flow_report_csv(report, !o.no_timing));

  std::cout << sife::to_string(params.kind) << ": " << report.iterations_run() << " iterations"
            << (report.converged ? " (converged)" : "") << ", range [" << sife::format_number(report.iterations.empty() ? report.input_min : report.iterations.back().min)
            << ", " << sife::format_number(report.iterations.empty() ? report.input_max : report.iterations.back().max)
            << "], wall-clock " << report.total_seconds << " s, kernels "
            << sife::kernels::active().name << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Image sharpening with stabilised inverse flowline evolution (SIFE), SILD and shock filtering"};
  app.require_subcommand(1);

  SharpenOptions sharpen;
  auto* cmd_sharpen = app.add_subcommand("sharpen", "Run a sharpening flow on a PGM image");
  cmd_sharpen->add_option("--flow", sharpen.flow, "sife | sild | shock")
      ->check(CLI::IsMember({"sife", "sild", "shock"}))
      ->capture_default_str();
  cmd_sharpen->add_option("--tau", sharpen.tau, "Time step (default 0.2; 0.5 for shock)");
  cmd_sharpen->add_option("--r", sharpen.r, "SIFE structuring radius")->capture_default_str();
  cmd_sharpen->add_option("--rt-steps", sharpen.rt_steps, "Rouy-Tourin steps per radius r")
      ->capture_default_str();
  cmd_sharpen->add_option("--iterations", sharpen.iterations, "Iteration budget")->capture_default_str();
  cmd_sharpen->add_option("--converge-eps", sharpen.converge_eps,
                          "Stop when the max update drops below this (0 = off)")
      ->capture_default_str();
  cmd_sharpen->add_option("--input", sharpen.input, "Input PGM")->required();
  cmd_sharpen->add_option("--output", sharpen.output, "Output PGM")->required();
  cmd_sharpen->add_option("--report", sharpen.report, "Per-iteration CSV report");
  cmd_sharpen->add_flag("--no-timing", sharpen.no_timing, "Omit wall-clock column from the report");

  double sigma = 3.0;
  std::string blur_in, blur_out;
  auto* cmd_blur = app.add_subcommand("blur", "Gaussian blur (experiment degradation)");
  cmd_blur->add_option("--sigma", sigma, "Standard deviation in pixels")->capture_default_str();
  cmd_blur->add_option("--input", blur_in, "Input PGM")->required();
  cmd_blur->add_option("--output", blur_out, "Output PGM")->required();

  std::string morph_op = "dilate", morph_in, morph_out;
  double morph_r = 0.5;
  int morph_steps = 1;
  auto* cmd_morph = app.add_subcommand("morph", "Rouy-Tourin dilation or erosion");
  cmd_morph->add_option("--op", morph_op, "dilate | erode")
      ->check(CLI::IsMember({"dilate", "erode"}))
      ->capture_default_str();
  cmd_morph->add_option("--r", morph_r, "Disk radius")->capture_default_str();
  cmd_morph->add_option("--steps", morph_steps, "Rouy-Tourin steps")->capture_default_str();
  cmd_morph->add_option("--input", morph_in, "Input PGM")->required();
  cmd_morph->add_option("--output", morph_out, "Output PGM")->required();

  std::string suite = "all", csv;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  auto* cmd_verify = app.add_subcommand("verify", "Run the stability property suites");
  cmd_verify->add_option("--suite", suite, "theorem1 | maxmin2d | equivalence | binary | all")
      ->check(CLI::IsMember({"theorem1", "maxmin2d", "equivalence", "binary", "all"}))
      ->capture_default_str();
  cmd_verify->add_option("--seed", seed, "Generator seed")->capture_default_str();
  cmd_verify->add_option("--trials", trials, "Trials per property")->capture_default_str();
  cmd_verify->add_option("--csv", csv, "Also write the results as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*cmd_sharpen) return run_sharpen(sharpen);
    if (*cmd_blur) {
      const LoadedImage in = load(blur_in);
      save(blur_out, sife::gaussian_blur(in.image, sigma), in);
      return kOk;
    }
    if (*cmd_morph) {
      const LoadedImage in = load(morph_in);
      const sife::StructuringRadius sr(morph_r, morph_steps);
      save(morph_out, morph_op == "dilate" ? sife::dilate(in.image, sr) : sife::erode(in.image, sr), in);
      return kOk;
    }
    if (*cmd_verify) {
      const auto results = sife::harness::run_suite(suite, seed, trials);
      std::cout << sife::harness::results_table(results);
      if (!csv.empty()) sife::write_file(csv, sife::harness::results_csv(results));
      for (const auto& r : results) {
        if (!r.informational && !r.passed()) return kPropertyFailure;
      }
      return kOk;
    }
  } catch (const sife::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const sife::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
