#pragma once

#include <vector>

#include "deblur/image.hpp"

namespace deblur {

// Mean squared error over all samples (channels pooled).
double mse(const Image& u, const Image& v);

// 10*log10(255^2 / MSE); +infinity when the images are identical.
double psnr(const Image& u, const Image& v);

// Mean local structural similarity: 11x11 Gaussian window (spread 1.5),
// K1 = 0.01, K2 = 0.03, L = 255, windows fully inside the image (no
// padding), channel mean for color.
double ssim(const Image& u, const Image& v);

struct QualityReport {
  double psnr = 0.0;
  double ssim = 0.0;
  double mse = 0.0;
  std::vector<double> psnr_per_channel;
  std::vector<double> ssim_per_channel;
  std::vector<double> mse_per_channel;
};

QualityReport evaluate(const Image& reference, const Image& test);

}  // namespace deblur
