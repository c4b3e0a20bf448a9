#include <doctest.h>

#include <cmath>

#include "sife/harness.hpp"
#include "sife/morphology.hpp"
#include "support.hpp"

using namespace sife;
using sife::test::max_abs_diff;

namespace {

// Direct transcription of the 2-D upwind update with explicit reflection;
// shares no code with the kernels.
Image2D naive_rt_2d(const Image2D& u, double tau, bool dilation) {
  const auto w = static_cast<std::ptrdiff_t>(u.width());
  const auto hgt = static_cast<std::ptrdiff_t>(u.height());
  const double h = u.h();
  auto at = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    return u.at(static_cast<std::size_t>(reflect_index(x, w)), static_cast<std::size_t>(reflect_index(y, hgt)));
  };
  std::vector<double> out;
  for (std::ptrdiff_t y = 0; y < hgt; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      const double c = at(x, y);
      const double s = dilation ? 1.0 : -1.0;
      const double gx = std::max({0.0, s * (at(x + 1, y) - c) / h, s * (at(x - 1, y) - c) / h});
      const double gy = std::max({0.0, s * (at(x, y + 1) - c) / h, s * (at(x, y - 1) - c) / h});
      out.push_back(c + s * tau * std::hypot(gx, gy));
    }
  }
  return Image2D(u.width(), u.height(), std::move(out), h);
}

Signal1D negate(const Signal1D& s) {
  std::vector<double> v(s.values().begin(), s.values().end());
  for (double& x : v) x = -x;
  return Signal1D(std::move(v), s.h());
}

Image2D negate(const Image2D& img) {
  std::vector<double> v(img.values().begin(), img.values().end());
  for (double& x : v) x = -x;
  return Image2D(img.width(), img.height(), std::move(v), img.h());
}

Image2D single_pixel(std::size_t n, double value) {
  std::vector<double> v(n * n, 0.0);
  v[(n / 2) * n + n / 2] = value;
  return Image2D(n, n, std::move(v));
}

const double kSqrtHalf = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_SUITE("morphology") {

TEST_CASE("1-D dilation step examples") {
  CHECK(rt_dilate_step_1d(Signal1D({5, 5, 5}), 0.5) == Signal1D({5, 5, 5}));
  CHECK(rt_dilate_step_1d(Signal1D({0, 1, 0}), 0.5) == Signal1D({0.5, 1, 0.5}));
  const Signal1D r = rt_dilate_step_1d(sife::test::ramp(10, 1.0), 0.5);
  for (std::size_t i = 0; i + 1 < 10; ++i) CHECK(r[i] == doctest::Approx(i + 0.5).epsilon(1e-15));
  // Right end of the mirrored ramp is a maximum.
  CHECK(r[9] == 9.0);
}

TEST_CASE("1-D erosion step examples") {
  CHECK(rt_erode_step_1d(Signal1D({5, 5, 5}), 0.5) == Signal1D({5, 5, 5}));
  CHECK(rt_erode_step_1d(Signal1D({0, 1, 0}), 0.5) == Signal1D({0, 0.5, 0}));
  CHECK(rt_erode_step_1d(negate(Signal1D({0, 1, 0})), 0.5) ==
        negate(rt_dilate_step_1d(Signal1D({0, 1, 0}), 0.5)));
}

TEST_CASE("1-D step size above h is refused") {
  CHECK_THROWS_AS(rt_dilate_step_1d(Signal1D({0, 1, 0}), 1.01), StabilityError);
  CHECK_THROWS_AS(rt_erode_step_1d(Signal1D({0, 1, 0}, 0.5), 0.6), StabilityError);
  CHECK_THROWS_AS(rt_dilate_step_1d(Signal1D({0, 1, 0}), 0.0), StabilityError);
  CHECK_NOTHROW(rt_dilate_step_1d(Signal1D({0, 1, 0}), 1.0));
}

TEST_CASE("2-D dilation step examples") {
  CHECK(rt_dilate_step_2d(Image2D(6, 5, 3.25), 0.5) == Image2D(6, 5, 3.25));

  const Image2D d = rt_dilate_step_2d(single_pixel(5, 1.0), 0.5);
  CHECK(d.at(2, 2) == 1.0);
  CHECK(d.at(1, 2) == 0.5);
  CHECK(d.at(3, 2) == 0.5);
  CHECK(d.at(2, 1) == 0.5);
  CHECK(d.at(2, 3) == 0.5);
  CHECK(d.at(1, 1) == 0.0);
  CHECK(d.at(3, 3) == 0.0);
  CHECK(d.at(0, 0) == 0.0);
}

TEST_CASE("2-D erosion step examples") {
  CHECK(rt_erode_step_2d(Image2D(6, 5, 3.25), 0.5) == Image2D(6, 5, 3.25));
  // Dual of the single bright pixel: a dark pixel in a bright field.
  const Image2D e = rt_erode_step_2d(negate(single_pixel(5, 1.0)), 0.5);
  CHECK(e.at(2, 2) == -1.0);
  CHECK(e.at(1, 2) == -0.5);
  CHECK(e.at(2, 3) == -0.5);
  CHECK(e.at(1, 1) == 0.0);
}

TEST_CASE("2-D step size above h/sqrt(2) is refused") {
  CHECK_THROWS_AS(rt_dilate_step_2d(Image2D(4, 4, 0.0), 0.75), StabilityError);
  CHECK_THROWS_AS(rt_erode_step_2d(Image2D(4, 4, 0.0, 2.0), 1.5), StabilityError);
  CHECK_NOTHROW(rt_dilate_step_2d(Image2D(4, 4, 0.0), kSqrtHalf));
}

TEST_CASE("2-D steps match the direct transcription") {
  harness::Generator gen(7);
  for (int t = 0; t < 20; ++t) {
    const double h = t % 3 == 0 ? 0.5 : 1.0;
    const Image2D img = gen.noise_image(1 + gen.below(23), 1 + gen.below(17), h);
    const double tau = gen.uniform(0.01, 1.0) * h * kSqrtHalf;
    CHECK(max_abs_diff(rt_dilate_step_2d(img, tau), naive_rt_2d(img, tau, true)) <= 1e-12);
    CHECK(max_abs_diff(rt_erode_step_2d(img, tau), naive_rt_2d(img, tau, false)) <= 1e-12);
  }
}

TEST_CASE("max-min principle at the largest stable step") {
  // At tau = h the neighbour of an extremum lands on it up to one rounding
  // (c - (c - m) need not equal m), hence the tolerance.
  harness::Generator gen(11);
  for (int t = 0; t < 100; ++t) {
    const Image2D img = t % 2 ? gen.smooth_image(16, 16) : gen.noise_image(16, 16);
    const auto [lo, hi] = range_stats(img);
    for (const Image2D& out : {rt_dilate_step_2d(img, kSqrtHalf), rt_erode_step_2d(img, kSqrtHalf)}) {
      const auto [olo, ohi] = range_stats(out);
      CHECK(olo >= lo - 1e-12);
      CHECK(ohi <= hi + 1e-12);
    }
    const Signal1D s = gen.noise_signal(40);
    const auto [slo, shi] = range_stats(s);
    for (const Signal1D& out : {rt_dilate_step_1d(s, 1.0), rt_erode_step_1d(s, 1.0)}) {
      const auto [olo, ohi] = range_stats(out);
      CHECK(olo >= slo - 1e-12);
      CHECK(ohi <= shi + 1e-12);
    }
  }
}

TEST_CASE("duality is exact in 1-D and 2-D") {
  harness::Generator gen(3);
  for (int t = 0; t < 50; ++t) {
    const Image2D img = gen.noise_image(13, 9);
    CHECK(rt_erode_step_2d(img, 0.6) == negate(rt_dilate_step_2d(negate(img), 0.6)));
    const Signal1D s = gen.noise_signal(31);
    CHECK(rt_erode_step_1d(s, 0.7) == negate(rt_dilate_step_1d(negate(s), 0.7)));
    const StructuringRadius sr(1.0, 2);
    CHECK(erode(img, sr) == negate(dilate(negate(img), sr)));
  }
}

TEST_CASE("multi-step dilation composes single steps") {
  const StructuringRadius sr(1.0, 2);
  CHECK(sr.tau_rt() == 0.5);
  CHECK(rt_dilate_step_1d(Signal1D({0, 0, 1, 1}), 0.5) == Signal1D({0, 0.5, 1, 1}));
  CHECK(dilate(Signal1D({0, 0, 1, 1}), sr) == Signal1D({0.25, 0.75, 1, 1}));

  const Signal1D s({3, 1, 4, 1, 5, 9, 2, 6});
  CHECK(dilate(s, StructuringRadius(0.8, 1)) == rt_dilate_step_1d(s, 0.8));
  CHECK(erode(s, StructuringRadius(0.8, 1)) == rt_erode_step_1d(s, 0.8));

  const StructuringRadius big(2.0, 4);
  CHECK(erode(dilate(Signal1D({4, 4, 4, 4}), big), big) == Signal1D({4, 4, 4, 4}));
  CHECK(erode(dilate(Image2D(5, 4, 9.0), big), big) == Image2D(5, 4, 9.0));
  CHECK_THROWS_AS(dilate(Image2D(5, 4, 9.0), StructuringRadius(2.0, 2)), StabilityError);
}

TEST_CASE("structuring radius") {
  CHECK_THROWS_AS(StructuringRadius(0.0, 1), InvalidArgument);
  CHECK_THROWS_AS(StructuringRadius(1.0, 0), InvalidArgument);
  CHECK(StructuringRadius::with_default_steps(0.5, 1.0, 2).rt_steps() == 1);
  CHECK(StructuringRadius::with_default_steps(1.0, 1.0, 1).rt_steps() == 1);
  CHECK(StructuringRadius::with_default_steps(1.0, 1.0, 2).rt_steps() == 2);
  CHECK(StructuringRadius::with_default_steps(kSqrtHalf, 1.0, 2).rt_steps() == 1);
  CHECK(StructuringRadius::with_default_steps(3.0, 1.0, 1).rt_steps() == 3);
  CHECK(rt_step_limit(2.0, 1) == 2.0);
  CHECK_THROWS_AS(rt_step_limit(1.0, 3), InvalidArgument);
}

TEST_CASE("flat dilation oracle") {
  const Signal1D s({0, 1, 0});
  CHECK(flat_dilate_oracle(s, 0) == s);
  CHECK(flat_dilate_oracle(s, 1) == Signal1D({1, 1, 1}));
  CHECK(flat_erode_oracle(Signal1D({1, 0, 1}), 1) == Signal1D({0, 0, 0}));
  CHECK_THROWS_AS(flat_dilate_oracle(s, -1), InvalidArgument);

  // Radius 1 ball is the 4-neighbour cross.
  const Image2D d = flat_dilate_oracle(single_pixel(5, 1.0), 1);
  CHECK(d.at(2, 1) == 1.0);
  CHECK(d.at(1, 1) == 0.0);
  // Radius 2: offsets (0,2) and (1,1) are inside, (2,1) is not.
  const Image2D d2 = flat_dilate_oracle(single_pixel(7, 1.0), 2);
  CHECK(d2.at(3, 1) == 1.0);
  CHECK(d2.at(2, 2) == 1.0);
  CHECK(d2.at(1, 2) == 0.0);
}

TEST_CASE("one Rouy-Tourin step with tau = h on non-decreasing data equals flat dilation") {
  harness::Generator gen(19);
  for (int t = 0; t < 30; ++t) {
    const Signal1D s = gen.monotone_signal(25, true);
    CHECK(max_abs_diff(dilate(s, StructuringRadius(1.0, 1)), flat_dilate_oracle(s, 1)) <= 1e-12);
    CHECK(max_abs_diff(erode(s, StructuringRadius(1.0, 1)), flat_erode_oracle(s, 1)) <= 1e-12);
  }
}

TEST_CASE("morphological gradients") {
  const StructuringRadius half(0.5, 1);
  for (const double v : sife::test::values_of(internal_gradient(Signal1D({2, 2, 2, 2}), half))) CHECK(v == 0.0);
  for (const double v : sife::test::values_of(external_gradient(Image2D(4, 4, 2.0), half))) CHECK(v == 0.0);

  for (const double slope : {1.0, 3.5, -2.0}) {
    const Signal1D r = sife::test::ramp(12, slope);
    const Signal1D gp = external_gradient(r, half);
    const Signal1D gm = internal_gradient(r, half);
    for (std::size_t i = 1; i + 1 < 12; ++i) {
      CHECK(gp[i] == doctest::Approx(std::abs(slope)).epsilon(1e-12));
      CHECK(gm[i] == doctest::Approx(std::abs(slope)).epsilon(1e-12));
    }
  }

  // Strict maximum at index 2.
  const Signal1D peak({0, 3, 7, 2, 1});
  CHECK(external_gradient(peak, half)[2] == 0.0);
  CHECK(internal_gradient(Signal1D({5, 3, 1, 2, 4}), half)[2] == 0.0);

  harness::Generator gen(5);
  for (int t = 0; t < 20; ++t) {
    const Image2D img = gen.noise_image(9, 7);
    for (const double v : sife::test::values_of(external_gradient(img, half))) CHECK(v >= 0.0);
    for (const double v : sife::test::values_of(internal_gradient(img, half))) CHECK(v >= 0.0);
  }
}

TEST_CASE("second derivative along the flowline") {
  const StructuringRadius half(0.5, 1);
  for (const double v : sife::test::values_of(second_flowline_derivative(Signal1D({1, 1, 1}), half))) CHECK(v == 0.0);
  for (const double v : sife::test::values_of(second_flowline_derivative(Image2D(3, 3, 1.0), half))) CHECK(v == 0.0);
  const Signal1D r = sife::test::ramp(10, 2.0);
  const Signal1D d = second_flowline_derivative(r, half);
  for (std::size_t i = 1; i + 1 < 10; ++i) CHECK(d[i] == doctest::Approx(0.0));

  std::vector<double> parabola(12);
  for (std::size_t i = 0; i < parabola.size(); ++i) parabola[i] = static_cast<double>(i * i);
  const Signal1D p = second_flowline_derivative(Signal1D(parabola), StructuringRadius(1.0, 1));
  for (std::size_t i = 1; i + 1 < parabola.size(); ++i) CHECK(p[i] == 2.0);
}

TEST_CASE("property: ordering, max-min and translation covariance") {
  harness::Generator gen(23);
  for (int t = 0; t < 40; ++t) {
    const Image2D img = t % 2 ? gen.smooth_image(12, 10) : gen.noise_image(12, 10);
    const StructuringRadius sr = StructuringRadius::with_default_steps(gen.uniform(0.1, 2.0), 1.0, 2);
    const Image2D d = dilate(img, sr);
    const Image2D e = erode(img, sr);
    const auto [lo, hi] = range_stats(img);
    for (std::size_t i = 0; i < img.size(); ++i) {
      CHECK(e.values()[i] <= img.values()[i]);
      CHECK(img.values()[i] <= d.values()[i]);
      CHECK(d.values()[i] <= hi);
      CHECK(e.values()[i] >= lo);
    }
    std::vector<double> shifted(img.values().begin(), img.values().end());
    for (double& v : shifted) v += 40.0;
    const Image2D ds = dilate(Image2D(12, 10, shifted), sr);
    for (std::size_t i = 0; i < img.size(); ++i) {
      CHECK(ds.values()[i] == doctest::Approx(d.values()[i] + 40.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: closed forms on concave increasing data") {
  harness::Generator gen(29);
  for (int t = 0; t < 100; ++t) {
    const double h = t % 4 == 3 ? 2.0 : 1.0;
    const double r = (t % 2 ? 0.5 : 1.0) * h * gen.uniform(0.2, 1.0);
    const Signal1D u = gen.concave_increasing_signal(32, h);
    const StructuringRadius sr(r, 1);
    const Signal1D d1 = dilate(u, sr);
    const Signal1D d2 = dilate(d1, sr);
    const Signal1D e1 = erode(u, sr);
    const Signal1D e2 = erode(e1, sr);
    const double q = r / h;
    for (std::size_t i = 2; i + 2 < u.size(); ++i) {
      CHECK(std::abs(d1[i] - (u[i] + q * (u[i + 1] - u[i]))) <= 1e-12);
      CHECK(std::abs(e1[i] - (u[i] - q * (u[i] - u[i - 1]))) <= 1e-12);
      CHECK(std::abs(d2[i] - (u[i] + 2 * q * (u[i + 1] - u[i]) + q * q * (u[i + 2] - 2 * u[i + 1] + u[i]))) <= 1e-12);
      CHECK(std::abs(e2[i] - (u[i] - 2 * q * (u[i] - u[i - 1]) + q * q * (u[i - 2] - 2 * u[i - 1] + u[i]))) <= 1e-12);
    }
  }
}

}  // TEST_SUITE
