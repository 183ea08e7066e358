#include "deblur/edge_weights.hpp"

#include <stdexcept>
#include <string>

#include "deblur/degrade.hpp"

namespace deblur {

void WeightConfig::validate() const {
  if (!(alpha1 > 0.0)) throw std::invalid_argument("weights: alpha1 must be > 0");
  if (!(alpha2 >= 0.0)) throw std::invalid_argument("weights: alpha2 must be >= 0");
  if (!(theta1 > 0.0 && theta1 <= 1.0)) {
    throw std::invalid_argument("weights: theta1 must be in (0,1]");
  }
  if (!(theta2 > 0.0 && theta2 <= 1.0)) {
    throw std::invalid_argument("weights: theta2 must be in (0,1]");
  }
  if (!(tau > 0.0)) throw std::invalid_argument("weights: tau must be > 0");
  if (g_size < 1 || g_size % 2 == 0) {
    throw std::invalid_argument("weights: g_size must be odd, got " +
                                std::to_string(g_size));
  }
  if (!(g_spread > 0.0)) throw std::invalid_argument("weights: g_spread must be > 0");
}

Image edge_matrix(const GradientField& grad_u, const Spectrum& g_hat,
                  Fft2D& fft) {
  Image sx = apply_spectrum(grad_u.gx, g_hat, fft);
  Image sy = apply_spectrum(grad_u.gy, g_hat, fft);
  Image e(sx.height, sx.width, 1);
  for (std::size_t i = 0; i < e.data.size(); ++i) {
    const double m = sx.data[i] * sx.data[i] + sy.data[i] * sy.data[i];
    e.data[i] = 1.0 / (1.0 + m);
  }
  return e;
}

Image edge_matrix(const Image& u, int g_size, double g_spread) {
  if (u.channels != 1) {
    throw std::invalid_argument("edge_matrix: expects a single-channel image");
  }
  Kernel g = gaussian_kernel(g_size, g_spread);
  Fft2D fft(u.height, u.width);
  Spectrum g_hat = kernel_spectrum(g, u.height, u.width);
  return edge_matrix(grad(u), g_hat, fft);
}

std::pair<Image, Image> binarize_weights(const Image& edge_score,
                                         const WeightConfig& cfg) {
  Image w1(edge_score.height, edge_score.width, 1);
  Image w2(edge_score.height, edge_score.width, 1);
  for (std::size_t i = 0; i < edge_score.data.size(); ++i) {
    const bool smooth = edge_score.data[i] >= cfg.tau;
    w1.data[i] = smooth ? cfg.theta1 * cfg.alpha1 : cfg.alpha1;
    w2.data[i] = smooth ? cfg.theta2 * cfg.alpha2 : cfg.alpha2;
  }
  return {std::move(w1), std::move(w2)};
}

}  // namespace deblur
