#include "deblur/image.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace deblur {

Image::Image(int h, int w, int c, double fill) {
  if (h < 1 || w < 1) {
    throw std::invalid_argument("Image dimensions must be at least 1x1");
  }
  if (c != 1 && c != 3) {
    throw std::invalid_argument("Image must have 1 or 3 channels, got " +
                                std::to_string(c));
  }
  height = h;
  width = w;
  channels = c;
  data.assign(size(), fill);
}

bool Image::all_finite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Kernel::Kernel(int size_, std::vector<double> taps_) {
  if (size_ < 1 || size_ % 2 == 0) {
    throw std::invalid_argument("Kernel size must be odd and positive, got " +
                                std::to_string(size_));
  }
  if (taps_.size() != static_cast<std::size_t>(size_) * size_) {
    throw std::invalid_argument("Kernel tap count does not match size");
  }
  double sum = 0.0;
  for (double t : taps_) {
    if (!(t >= 0.0)) {
      throw std::invalid_argument("Kernel taps must be non-negative");
    }
    sum += t;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("Kernel taps must sum to 1, got " +
                                std::to_string(sum));
  }
  size = size_;
  taps = std::move(taps_);
}

std::vector<Image> split_channels(const Image& img) {
  std::vector<Image> planes;
  planes.reserve(img.channels);
  for (int c = 0; c < img.channels; ++c) {
    Image plane(img.height, img.width, 1);
    for (int i = 0; i < img.height; ++i) {
      for (int j = 0; j < img.width; ++j) {
        plane.at(i, j) = img.at(i, j, c);
      }
    }
    planes.push_back(std::move(plane));
  }
  return planes;
}

Image merge_channels(const std::vector<Image>& planes) {
  if (planes.empty()) {
    throw std::invalid_argument("merge_channels: no planes given");
  }
  for (const Image& p : planes) {
    if (p.channels != 1) {
      throw std::invalid_argument("merge_channels: planes must be single-channel");
    }
    if (p.height != planes[0].height || p.width != planes[0].width) {
      throw std::invalid_argument("merge_channels: plane dimensions differ");
    }
  }
  Image out(planes[0].height, planes[0].width, static_cast<int>(planes.size()));
  for (int c = 0; c < out.channels; ++c) {
    for (int i = 0; i < out.height; ++i) {
      for (int j = 0; j < out.width; ++j) {
        out.at(i, j, c) = planes[c].at(i, j);
      }
    }
  }
  return out;
}

}  // namespace deblur
