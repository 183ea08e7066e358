#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "deblur/image.hpp"

namespace deblur {

// Frequency-domain representation of an image-sized signal. Forward
// transforms are unnormalized; the inverse carries the 1/(h*w) factor.
struct Spectrum {
  int height = 0;
  int width = 0;
  std::vector<std::complex<double>> data;

  Spectrum() = default;
  Spectrum(int h, int w)
      : height(h), width(w), data(static_cast<std::size_t>(h) * w) {}

  std::complex<double>& at(int i, int j) {
    return data[static_cast<std::size_t>(i) * width + j];
  }
  std::complex<double> at(int i, int j) const {
    return data[static_cast<std::size_t>(i) * width + j];
  }
};

// 2-D complex FFT for one image size, wrapping FFTW plans. Plan creation is
// serialized internally; instances own scratch buffers and therefore must
// not be shared across threads - use one per thread.
class Fft2D {
 public:
  Fft2D(int height, int width);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  Spectrum forward(const Image& plane);
  // Real part of the inverse transform, scaled by 1/(h*w).
  Image inverse_real(const Spectrum& s);

  int height() const;
  int width() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace deblur
