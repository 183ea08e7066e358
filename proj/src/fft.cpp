#include "deblur/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace deblur {

namespace {
// FFTW planner state is global and not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft2D::Impl {
  int h = 0, w = 0;
  fftw_complex* buf_in = nullptr;
  fftw_complex* buf_out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  Impl(int height, int width) : h(height), w(width) {
    if (h < 1 || w < 1) {
      throw std::invalid_argument("Fft2D: dimensions must be positive");
    }
    const std::size_t n = static_cast<std::size_t>(h) * w;
    buf_in = fftw_alloc_complex(n);
    buf_out = fftw_alloc_complex(n);
    if (!buf_in || !buf_out) {
      fftw_free(buf_in);
      fftw_free(buf_out);
      throw std::runtime_error("Fft2D: allocation failed");
    }
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_2d(h, w, buf_in, buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_2d(h, w, buf_in, buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf_in);
    fftw_free(buf_out);
  }
};

Fft2D::Fft2D(int height, int width) : impl_(std::make_unique<Impl>(height, width)) {}
Fft2D::~Fft2D() = default;

int Fft2D::height() const { return impl_->h; }
int Fft2D::width() const { return impl_->w; }

Spectrum Fft2D::forward(const Image& plane) {
  if (plane.channels != 1 || plane.height != impl_->h || plane.width != impl_->w) {
    throw std::invalid_argument("Fft2D::forward: plane shape mismatch");
  }
  const std::size_t n = plane.plane_size();
  for (std::size_t i = 0; i < n; ++i) {
    impl_->buf_in[i][0] = plane.data[i];
    impl_->buf_in[i][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  Spectrum s(impl_->h, impl_->w);
  for (std::size_t i = 0; i < n; ++i) {
    s.data[i] = {impl_->buf_out[i][0], impl_->buf_out[i][1]};
  }
  return s;
}

Image Fft2D::inverse_real(const Spectrum& s) {
  if (s.height != impl_->h || s.width != impl_->w) {
    throw std::invalid_argument("Fft2D::inverse_real: spectrum shape mismatch");
  }
  const std::size_t n = s.data.size();
  for (std::size_t i = 0; i < n; ++i) {
    impl_->buf_in[i][0] = s.data[i].real();
    impl_->buf_in[i][1] = s.data[i].imag();
  }
  fftw_execute(impl_->bwd);
  Image out(impl_->h, impl_->w, 1);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.data[i] = impl_->buf_out[i][0] * scale;
  }
  return out;
}

}  // namespace deblur
