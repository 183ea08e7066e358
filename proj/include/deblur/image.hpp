#pragma once

#include <cstddef>
#include <vector>

namespace deblur {

// Planar real-valued raster. Channel planes are stored back to back, each
// plane row-major. Intensities live on the nominal 0-255 scale; processing
// may push values outside that range, clamping happens only when encoding
// to disk.
struct Image {
  int height = 0;
  int width = 0;
  int channels = 1;
  std::vector<double> data;

  Image() = default;
  Image(int h, int w, int c = 1, double fill = 0.0);

  double& at(int i, int j, int c = 0) {
    return data[(static_cast<std::size_t>(c) * height + i) * width + j];
  }
  double at(int i, int j, int c = 0) const {
    return data[(static_cast<std::size_t>(c) * height + i) * width + j];
  }

  std::size_t plane_size() const {
    return static_cast<std::size_t>(height) * width;
  }
  std::size_t size() const { return plane_size() * channels; }

  bool same_shape(const Image& other) const {
    return height == other.height && width == other.width &&
           channels == other.channels;
  }
  bool all_finite() const;
};

// Square convolution kernel with odd side length so the center tap is
// well-defined. Taps are non-negative and sum to 1 (unit DC gain); the
// constructor enforces both.
struct Kernel {
  int size = 1;
  std::vector<double> taps;

  Kernel() : taps{1.0} {}
  Kernel(int size_, std::vector<double> taps_);

  double at(int i, int j) const {
    return taps[static_cast<std::size_t>(i) * size + j];
  }
  int radius() const { return size / 2; }
};

std::vector<Image> split_channels(const Image& img);
Image merge_channels(const std::vector<Image>& planes);

}  // namespace deblur
