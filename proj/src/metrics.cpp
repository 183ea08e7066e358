#include "deblur/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace deblur {

namespace {

constexpr int kWindow = 11;
constexpr double kWindowSpread = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

void check_shapes(const Image& u, const Image& v, const char* what) {
  if (!u.same_shape(v)) {
    throw std::invalid_argument(std::string(what) + ": image shapes differ");
  }
}

std::vector<double> gaussian_window_1d() {
  std::vector<double> w(kWindow);
  const int r = kWindow / 2;
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double x = i - r;
    w[i] = std::exp(-x * x / (2.0 * kWindowSpread * kWindowSpread));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

// Valid-region filtering: rows first, then columns. Output is
// (h - kWindow + 1) x (w - kWindow + 1).
std::vector<double> filter_valid(const std::vector<double>& in, int h, int w,
                                 const std::vector<double>& win) {
  const int wh = h;
  const int ww = w - kWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(wh) * ww);
  for (int i = 0; i < wh; ++i) {
    for (int j = 0; j < ww; ++j) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        s += win[k] * in[static_cast<std::size_t>(i) * w + j + k];
      }
      rows[static_cast<std::size_t>(i) * ww + j] = s;
    }
  }
  const int oh = h - kWindow + 1;
  std::vector<double> out(static_cast<std::size_t>(oh) * ww);
  for (int i = 0; i < oh; ++i) {
    for (int j = 0; j < ww; ++j) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        s += win[k] * rows[static_cast<std::size_t>(i + k) * ww + j];
      }
      out[static_cast<std::size_t>(i) * ww + j] = s;
    }
  }
  return out;
}

double ssim_plane(const Image& x, const Image& y) {
  const int h = x.height, w = x.width;
  if (h < kWindow || w < kWindow) {
    throw std::invalid_argument("ssim: image smaller than the 11x11 window");
  }
  const std::vector<double> win = gaussian_window_1d();
  const std::size_t n = x.plane_size();
  std::vector<double> xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    xx[i] = x.data[i] * x.data[i];
    yy[i] = y.data[i] * y.data[i];
    xy[i] = x.data[i] * y.data[i];
  }
  const std::vector<double> mx = filter_valid(x.data, h, w, win);
  const std::vector<double> my = filter_valid(y.data, h, w, win);
  const std::vector<double> mxx = filter_valid(xx, h, w, win);
  const std::vector<double> myy = filter_valid(yy, h, w, win);
  const std::vector<double> mxy = filter_valid(xy, h, w, win);

  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double mu_x = mx[i], mu_y = my[i];
    const double var_x = mxx[i] - mu_x * mu_x;
    const double var_y = myy[i] - mu_y * mu_y;
    const double cov = mxy[i] - mu_x * mu_y;
    const double num = (2.0 * mu_x * mu_y + kC1) * (2.0 * cov + kC2);
    const double den = (mu_x * mu_x + mu_y * mu_y + kC1) * (var_x + var_y + kC2);
    total += num / den;
  }
  return total / static_cast<double>(mx.size());
}

}  // namespace

double mse(const Image& u, const Image& v) {
  check_shapes(u, v, "mse");
  double s = 0.0;
  for (std::size_t i = 0; i < u.data.size(); ++i) {
    const double d = u.data[i] - v.data[i];
    s += d * d;
  }
  return s / static_cast<double>(u.data.size());
}

double psnr(const Image& u, const Image& v) {
  const double m = mse(u, v);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / m);
}

double ssim(const Image& u, const Image& v) {
  check_shapes(u, v, "ssim");
  if (u.channels == 1) return ssim_plane(u, v);
  const std::vector<Image> us = split_channels(u);
  const std::vector<Image> vs = split_channels(v);
  double s = 0.0;
  for (std::size_t c = 0; c < us.size(); ++c) s += ssim_plane(us[c], vs[c]);
  return s / static_cast<double>(us.size());
}

QualityReport evaluate(const Image& reference, const Image& test) {
  check_shapes(reference, test, "evaluate");
  QualityReport report;
  report.mse = mse(reference, test);
  report.psnr = psnr(reference, test);
  report.ssim = ssim(reference, test);
  if (reference.channels > 1) {
    const std::vector<Image> rs = split_channels(reference);
    const std::vector<Image> ts = split_channels(test);
    for (std::size_t c = 0; c < rs.size(); ++c) {
      report.mse_per_channel.push_back(mse(rs[c], ts[c]));
      report.psnr_per_channel.push_back(psnr(rs[c], ts[c]));
      report.ssim_per_channel.push_back(ssim(rs[c], ts[c]));
    }
  }
  return report;
}

}  // namespace deblur
