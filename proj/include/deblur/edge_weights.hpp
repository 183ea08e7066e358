#pragma once

#include <utility>

#include "deblur/fft.hpp"
#include "deblur/image.hpp"
#include "deblur/operators.hpp"

namespace deblur {

// Parameters of the spatially adaptive regularization weights. Each map
// takes the base value alpha_m where the edge score is below tau and the
// scaled value theta_m * alpha_m elsewhere.
struct WeightConfig {
  double alpha1 = 1.0;   // base TV weight, > 0
  double alpha2 = 1.0;   // base quadratic-gradient weight, >= 0
  double theta1 = 0.5;   // scaling in (0,1]
  double theta2 = 0.5;   // scaling in (0,1]
  double tau = 0.9;      // threshold on the edge score, > 0
  int g_size = 5;        // smoothing Gaussian, odd
  double g_spread = 1.0;

  void validate() const;  // throws std::invalid_argument
};

// Edge score E = 1 / (1 + |G (*) grad(u)|^2), in (0,1]; 1 on flat regions,
// small across strong edges. The gradient components are each smoothed by
// the Gaussian G before the magnitude is taken.
Image edge_matrix(const Image& u, int g_size, double g_spread);

// Same, from a precomputed gradient and Gaussian transfer function.
Image edge_matrix(const GradientField& grad_u, const Spectrum& g_hat,
                  Fft2D& fft);

// Pointwise: alpha_m where E < tau, theta_m * alpha_m where E >= tau.
std::pair<Image, Image> binarize_weights(const Image& edge_score,
                                         const WeightConfig& cfg);

}  // namespace deblur
