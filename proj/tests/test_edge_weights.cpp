#include <cmath>

#include "deblur/degrade.hpp"
#include "deblur/edge_weights.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace deblur;

TEST_CASE("edge score is 1 on constant images") {
  Image u(16, 16, 1, 73.0);
  const Image e = edge_matrix(u, 5, 1.0);
  for (double v : e.data) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("edge score follows 1/(1+m) for a known smoothed gradient") {
  // Direct evaluation of the defining formula on a synthetic image, using
  // the spatial-convolution oracle as the independent path.
  std::mt19937 rng(31);
  const Image u = oracle::random_image(12, 12, rng, 0.0, 30.0);
  const int gsz = 5;
  const double spread = 1.0;
  const Image e = edge_matrix(u, gsz, spread);

  const Kernel g = gaussian_kernel(gsz, spread);
  const GradientField gr = grad(u);
  const Image sx = oracle::convolve_spatial(gr.gx, g);
  const Image sy = oracle::convolve_spatial(gr.gy, g);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      const double m = sx.at(i, j) * sx.at(i, j) + sy.at(i, j) * sy.at(i, j);
      CHECK(e.at(i, j) == doctest::Approx(1.0 / (1.0 + m)).epsilon(1e-10));
    }
  }
}

TEST_CASE("unit smoothed gradient gives score one half") {
  // A ramp of slope 1 along rows has |grad| = 1 everywhere except at the
  // wrap; far from the wrap the smoothed magnitude is exactly 1.
  const int n = 32;
  Image ramp(n, n, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) ramp.at(i, j) = static_cast<double>(i);
  }
  const Image e = edge_matrix(ramp, 5, 1.0);
  CHECK(e.at(n / 2, n / 2) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("a strong step yields near-zero score on it, near-one away") {
  const int n = 16;
  Image step(n, n, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) step.at(i, j) = (j < n / 2) ? 0.0 : 100.0;
  }
  const Image e = edge_matrix(step, 5, 1.0);
  for (int i = 0; i < n; ++i) {
    CHECK(e.at(i, n / 2 - 1) < 0.01);  // on the rise
    CHECK(e.at(i, n / 4) > 0.99);      // flat, outside G's support
  }
  for (double v : e.data) {
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("scaling an image up never raises the edge score") {
  std::mt19937 rng(37);
  const Image u = oracle::random_image(10, 10, rng, 0.0, 20.0);
  Image u2 = u;
  for (double& v : u2.data) v *= 3.0;
  const Image e1 = edge_matrix(u, 5, 1.0);
  const Image e2 = edge_matrix(u2, 5, 1.0);
  for (std::size_t i = 0; i < e1.data.size(); ++i) {
    CHECK(e2.data[i] <= e1.data[i] + 1e-12);
  }
}

TEST_CASE("binarization picks the base value strictly below tau") {
  WeightConfig cfg;
  cfg.alpha1 = 1.0;
  cfg.alpha2 = 2.0;
  cfg.theta1 = 0.5;
  cfg.theta2 = 0.25;
  cfg.tau = 0.9;

  Image e(1, 3, 1);
  e.at(0, 0) = 0.95;  // smooth branch
  e.at(0, 1) = 0.80;  // edge branch
  e.at(0, 2) = 0.90;  // boundary: >= tau takes the scaled branch
  const auto [w1, w2] = binarize_weights(e, cfg);
  CHECK(w1.at(0, 0) == 0.5);
  CHECK(w1.at(0, 1) == 1.0);
  CHECK(w1.at(0, 2) == 0.5);
  CHECK(w2.at(0, 0) == 0.5);
  CHECK(w2.at(0, 1) == 2.0);
  CHECK(w2.at(0, 2) == 0.5);
}

TEST_CASE("weight maps take at most two positive values") {
  std::mt19937 rng(41);
  const Image u = oracle::random_image(16, 16, rng);
  const Image e = edge_matrix(u, 5, 1.0);
  WeightConfig cfg;
  cfg.alpha1 = 2.0;
  cfg.theta1 = 0.3;
  const auto [w1, w2] = binarize_weights(e, cfg);
  for (double v : w1.data) {
    CHECK((v == 2.0 || v == doctest::Approx(0.6)));
    CHECK(v > 0.0);
  }
  (void)w2;
}

TEST_CASE("weight config validation") {
  WeightConfig cfg;
  cfg.alpha1 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = WeightConfig{};
  cfg.theta1 = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = WeightConfig{};
  cfg.g_size = 4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = WeightConfig{};
  cfg.theta1 = 1.0;  // allowed: uniform-weight reduction
  CHECK_NOTHROW(cfg.validate());
}
