#include <cmath>
#include <random>

#include "deblur/degrade.hpp"
#include "deblur/operators.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace deblur;

TEST_CASE("grad of a constant image vanishes") {
  Image u(6, 7, 1, 42.0);
  const GradientField g = grad(u);
  for (double v : g.gx.data) CHECK(v == 0.0);
  for (double v : g.gy.data) CHECK(v == 0.0);
}

TEST_CASE("grad wraps periodically") {
  Image u(1, 3, 1);
  u.at(0, 0) = 0.0;
  u.at(0, 1) = 1.0;
  u.at(0, 2) = 2.0;
  const GradientField g = grad(u);
  CHECK(g.gy.at(0, 0) == 1.0);
  CHECK(g.gy.at(0, 1) == 1.0);
  CHECK(g.gy.at(0, 2) == -2.0);
  for (double v : g.gx.data) CHECK(v == 0.0);
}

TEST_CASE("div of a constant field vanishes and div(0) = 0") {
  GradientField zero(4, 5);
  const Image z = div(zero);
  for (double v : z.data) CHECK(v == 0.0);

  GradientField constant(4, 5);
  for (double& v : constant.gx.data) v = 3.0;
  for (double& v : constant.gy.data) v = -2.0;
  const Image d = div(constant);
  for (double v : d.data) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("grad and -div are adjoint") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Image u = oracle::random_image(8, 8, rng, -50.0, 50.0);
    const GradientField p = oracle::random_field(8, 8, rng);
    const double lhs = dot(grad(u), p);
    const double rhs = -dot(u, div(p));
    const double scale = norm2(u) * norm2(p) + 1.0;
    CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
  }
}

TEST_CASE("div(grad(delta)) equals the negated laplacian spectrum action") {
  const int h = 8, w = 8;
  Image delta(h, w, 1);
  delta.at(3, 4) = 1.0;
  const Image lhs = div(grad(delta));

  Fft2D fft(h, w);
  Spectrum s = fft.forward(delta);
  const std::vector<double> lap = laplacian_spectrum(h, w);
  for (std::size_t i = 0; i < s.data.size(); ++i) s.data[i] *= -lap[i];
  const Image rhs = fft.inverse_real(s);
  for (std::size_t i = 0; i < lhs.data.size(); ++i) {
    CHECK(lhs.data[i] == doctest::Approx(rhs.data[i]).epsilon(1e-12));
  }
}

TEST_CASE("kernel spectrum of the identity kernel is all ones") {
  const Spectrum s = kernel_spectrum(Kernel(1, {1.0}), 4, 6);
  for (const auto& v : s.data) {
    CHECK(v.real() == doctest::Approx(1.0));
    CHECK(std::abs(v.imag()) < 1e-15);
  }
}

TEST_CASE("normalized kernels have unit DC gain") {
  const Spectrum s = kernel_spectrum(gaussian_kernel(5, 1.3), 16, 16);
  CHECK(std::abs(s.at(0, 0) - std::complex<double>(1.0, 0.0)) <= 1e-12);
  const Spectrum m = kernel_spectrum(motion_kernel(7, 30.0), 16, 16);
  CHECK(std::abs(m.at(0, 0) - std::complex<double>(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("kernel larger than image is rejected") {
  CHECK_THROWS_AS(kernel_spectrum(average_kernel(5), 3, 8), std::invalid_argument);
  CHECK_THROWS_AS(convolve_periodic(Image(3, 3, 1), average_kernel(5)),
                  std::invalid_argument);
}

TEST_CASE("difference spectra kill constants and match 2-2cos") {
  const auto [dx, dy] = diff_spectra(4, 4);
  const std::vector<double> lap = laplacian_spectrum(4, 4);
  CHECK(lap[0] == doctest::Approx(0.0));
  CHECK(std::norm(dx.at(0, 0)) + std::norm(dy.at(0, 0)) ==
        doctest::Approx(0.0));
  // Along one axis of length 4: |D|^2 = {0, 2, 4, 2}.
  const double expected[4] = {0.0, 2.0, 4.0, 2.0};
  for (int k = 0; k < 4; ++k) {
    CHECK(std::norm(dx.at(k, 0)) == doctest::Approx(expected[k]).epsilon(1e-12));
    CHECK(std::norm(dy.at(0, k)) == doctest::Approx(expected[k]).epsilon(1e-12));
    CHECK(lap[static_cast<std::size_t>(k) * 4] ==
          doctest::Approx(expected[k]).epsilon(1e-12));
  }
}

TEST_CASE("grad via difference spectra equals spatial grad") {
  std::mt19937 rng(11);
  const Image u = oracle::random_image(8, 8, rng);
  const GradientField g = grad(u);
  Fft2D fft(8, 8);
  const auto [dx, dy] = diff_spectra(8, 8);
  const Image gx = apply_spectrum(u, dx, fft);
  const Image gy = apply_spectrum(u, dy, fft);
  for (std::size_t i = 0; i < gx.data.size(); ++i) {
    CHECK(gx.data[i] == doctest::Approx(g.gx.data[i]).epsilon(1e-10));
    CHECK(gy.data[i] == doctest::Approx(g.gy.data[i]).epsilon(1e-10));
  }
}

TEST_CASE("identity kernel convolution returns the input") {
  std::mt19937 rng(3);
  const Image u = oracle::random_image(5, 9, rng);
  const Image out = convolve_periodic(u, Kernel(1, {1.0}));
  for (std::size_t i = 0; i < u.data.size(); ++i) {
    CHECK(out.data[i] == doctest::Approx(u.data[i]).epsilon(1e-12));
  }
}

TEST_CASE("convolution preserves constants and the mean") {
  Image c(8, 8, 1, 17.0);
  const Image out = convolve_periodic(c, gaussian_kernel(3, 0.8));
  for (double v : out.data) CHECK(v == doctest::Approx(17.0).epsilon(1e-12));

  std::mt19937 rng(5);
  const Image u = oracle::random_image(8, 8, rng);
  const Image blurred = convolve_periodic(u, average_kernel(3));
  double mean_in = 0.0, mean_out = 0.0;
  for (double v : u.data) mean_in += v;
  for (double v : blurred.data) mean_out += v;
  CHECK(std::abs(mean_in - mean_out) / u.data.size() <= 1e-9);
}

TEST_CASE("spectral convolution matches the spatial oracle") {
  std::mt19937 rng(13);
  const Image u = oracle::random_image(5, 5, rng);
  const Kernel kern = gaussian_kernel(3, 1.0);
  const Image fast = convolve_periodic(u, kern);
  const Image slow = oracle::convolve_spatial(u, kern);
  for (std::size_t i = 0; i < u.data.size(); ++i) {
    CHECK(std::abs(fast.data[i] - slow.data[i]) <= 1e-10);
  }
}

TEST_CASE("convolution is channel-wise for color images") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  Image color(6, 6, 3);
  for (double& v : color.data) v = dist(rng);
  const Kernel kern = average_kernel(3);
  const Image out = convolve_periodic(color, kern);
  const auto planes = split_channels(color);
  const auto out_planes = split_channels(out);
  for (int c = 0; c < 3; ++c) {
    const Image expect = convolve_periodic(planes[c], kern);
    for (std::size_t i = 0; i < expect.data.size(); ++i) {
      CHECK(out_planes[c].data[i] == doctest::Approx(expect.data[i]));
    }
  }
}

TEST_CASE("parseval identity holds for the transform convention") {
  std::mt19937 rng(19);
  const Image u = oracle::random_image(12, 10, rng);
  Fft2D fft(12, 10);
  const Spectrum s = fft.forward(u);
  double spatial = 0.0;
  for (double v : u.data) spatial += v * v;
  double spectral = 0.0;
  for (const auto& v : s.data) spectral += std::norm(v);
  spectral /= static_cast<double>(u.data.size());
  CHECK(spatial == doctest::Approx(spectral).epsilon(1e-9));
}
