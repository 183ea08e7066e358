#pragma once

#include <cstdint>
#include <string>

#include "deblur/image.hpp"

namespace deblur {

enum class KernelKind { Gaussian, Motion, Average };

// Blur family plus its parameters; the CLI spelling is kind:size:param
// (gaussian:9:5, motion:20:60, average:9).
struct BlurSpec {
  KernelKind kind = KernelKind::Gaussian;
  int size = 9;             // gaussian, average
  double spread = 5.0;      // gaussian
  double length = 9.0;      // motion
  double angle_deg = 0.0;   // motion
};

struct DegradeSpec {
  BlurSpec blur;
  double noise_sigma = 0.0;  // 0-255 scale
  std::uint64_t seed = 0;
};

Kernel gaussian_kernel(int size, double spread);
Kernel motion_kernel(double length, double angle_deg);
Kernel average_kernel(int size);
Kernel make_blur_kernel(const BlurSpec& spec);

BlurSpec parse_blur_spec(const std::string& text);
std::string to_string(const BlurSpec& spec);
std::string to_string(KernelKind kind);

// Adds i.i.d. N(0, sigma^2) per sample. The stream is fully specified:
// mt19937_64 seeded with `seed`, Box-Muller pairs consumed in planar
// row-major sample order. Values are not clamped.
Image add_gaussian_noise(const Image& img, double sigma, std::uint64_t seed);

// f = A (*) u + noise, channel-wise periodic convolution.
Image degrade(const Image& u, const DegradeSpec& spec);

// Ten-ellipse head phantom (high-contrast variant) on [0,255], n x n.
Image shepp_logan_phantom(int n);

}  // namespace deblur
