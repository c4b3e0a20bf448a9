#include <doctest.h>

#include <cstring>
#include <vector>

#include "sife/flows.hpp"
#include "sife/harness.hpp"
#include "sife/kernels.hpp"
#include "sife/morphology.hpp"

using namespace sife;
using kernels::Direction;
using kernels::RowKernels;

namespace {

constexpr std::size_t kPad = 8;

// Five rows of width n + 2 * kPad. Values are drawn from a small set of
// levels so that ties, zero differences and zero Laplacians are common.
struct Rows {
  std::size_t n;
  std::vector<std::vector<double>> data;

  Rows(harness::Generator& gen, std::size_t width, bool coarse) : n(width), data(5) {
    for (auto& row : data) {
      row.resize(n + 2 * kPad);
      for (double& v : row) v = coarse ? static_cast<double>(gen.below(3)) : gen.uniform(-50.0, 300.0);
    }
  }
  const double* at(std::size_t k) const { return data[k].data() + kPad; }
};

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void compare_tables(const RowKernels& s, const RowKernels& v, std::size_t n, bool coarse, harness::Generator& gen) {
  const Rows r(gen, n, coarse);
  std::vector<double> a(n), b(n);
  const double h = coarse ? 1.0 : gen.uniform(0.5, 2.0);

  for (const Direction dir : {Direction::dilate, Direction::erode}) {
    const double tau = h / 1.5;
    s.rt_step(r.at(1), r.at(2), r.at(3), a.data(), n, h, tau, dir);
    v.rt_step(r.at(1), r.at(2), r.at(3), b.data(), n, h, tau, dir);
    CHECK(same_bits(a, b));
  }

  s.sife_update(r.at(0), r.at(1), r.at(2), r.at(3), r.at(4), a.data(), n, 0.5, 0.25);
  v.sife_update(r.at(0), r.at(1), r.at(2), r.at(3), r.at(4), b.data(), n, 0.5, 0.25);
  CHECK(same_bits(a, b));

  const double* rows[5] = {r.at(0), r.at(1), r.at(2), r.at(3), r.at(4)};
  s.sild_step(rows, a.data(), n, h, 0.2 * h * h);
  v.sild_step(rows, b.data(), n, h, 0.2 * h * h);
  CHECK(same_bits(a, b));

  s.shock_step(r.at(1), r.at(2), r.at(3), a.data(), n, h, 0.5 * h);
  v.shock_step(r.at(1), r.at(2), r.at(3), b.data(), n, h, 0.5 * h);
  CHECK(same_bits(a, b));

  const std::vector<double> w = gaussian_weights(1.7);
  const int radius = static_cast<int>(w.size() / 2);
  REQUIRE(static_cast<std::size_t>(radius) <= kPad);
  s.convolve_row(r.at(2), a.data(), n, w.data(), radius);
  v.convolve_row(r.at(2), b.data(), n, w.data(), radius);
  CHECK(same_bits(a, b));

  std::vector<const double*> column;
  for (std::size_t k = 0; k < w.size(); ++k) column.push_back(r.at(k % 5));
  s.convolve_column(column.data(), a.data(), n, w.data(), radius);
  v.convolve_column(column.data(), b.data(), n, w.data(), radius);
  CHECK(same_bits(a, b));
}

struct KernelOverride {
  explicit KernelOverride(const RowKernels* k) { kernels::set_active(k); }
  ~KernelOverride() { kernels::set_active(nullptr); }
};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("dispatch") {
  CHECK(std::strcmp(kernels::scalar().name, "scalar") == 0);
  {
    KernelOverride o(&kernels::scalar());
    CHECK(&kernels::active() == &kernels::scalar());
  }
  if (const RowKernels* v = kernels::avx2()) {
    CHECK(std::strcmp(v->name, "avx2") == 0);
    KernelOverride o(v);
    CHECK(&kernels::active() == v);
  }
}

TEST_CASE("SIMD rows are bit-identical to the scalar reference") {
  const RowKernels* v = kernels::avx2();
  if (v == nullptr) {
    MESSAGE("AVX2 kernels unavailable on this build or CPU; skipped");
    return;
  }
  harness::Generator gen(71);
  for (std::size_t n = 1; n <= 37; ++n) {
    CAPTURE(n);
    compare_tables(kernels::scalar(), *v, n, false, gen);
    compare_tables(kernels::scalar(), *v, n, true, gen);
  }
  compare_tables(kernels::scalar(), *v, 1000, false, gen);
}

TEST_CASE("whole flows agree across kernel tables") {
  const RowKernels* v = kernels::avx2();
  if (v == nullptr) {
    MESSAGE("AVX2 kernels unavailable on this build or CPU; skipped");
    return;
  }
  harness::Generator gen(73);
  for (const FlowKind kind : {FlowKind::sife, FlowKind::sild, FlowKind::shock}) {
    CAPTURE(to_string(kind));
    const Image2D f = gen.smooth_image(37, 29);
    FlowParams p = FlowParams::defaults(kind);
    p.iterations = 15;
    if (kind == FlowKind::sife) p.sr = StructuringRadius(1.0, 2);
    Image2D a = f, b = f;
    {
      KernelOverride o(&kernels::scalar());
      a = run_flow(f, p).first;
    }
    {
      KernelOverride o(v);
      b = run_flow(f, p).first;
    }
    CHECK(std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0);
  }
  Image2D a = gen.noise_image(19, 23), b = a;
  {
    KernelOverride o(&kernels::scalar());
    a = gaussian_blur(a, 2.5);
  }
  {
    KernelOverride o(v);
    b = gaussian_blur(b, 2.5);
  }
  CHECK(a == b);
}

}  // TEST_SUITE
