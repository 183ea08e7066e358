#pragma once

#include <utility>
#include <vector>

#include "deblur/fft.hpp"
#include "deblur/image.hpp"

namespace deblur {

// Pair of first-difference planes sharing the image's dimensions. Also used
// for the gradient splitting variable and the Lagrange multiplier field.
struct GradientField {
  Image gx;  // difference along rows:    gx(i,j) = u(i+1,j) - u(i,j)
  Image gy;  // difference along columns: gy(i,j) = u(i,j+1) - u(i,j)

  GradientField() = default;
  GradientField(int h, int w) : gx(h, w, 1), gy(h, w, 1) {}

  int height() const { return gx.height; }
  int width() const { return gx.width; }
  bool all_finite() const { return gx.all_finite() && gy.all_finite(); }
};

// Forward differences with periodic wrap, so that grad, div and the spectral
// solves below are built from the same circulant operators.
GradientField grad(const Image& u);

// Negative adjoint of grad: <grad(u), p> == <u, -div(p)> exactly.
Image div(const GradientField& p);

// Transfer function of the kernel on an h-by-w grid: taps are embedded with
// the center tap wrapped to index (0,0), so convolution has zero phase
// shift. conj(result) is the transfer function of the adjoint.
Spectrum kernel_spectrum(const Kernel& kern, int h, int w);

// Spectra of the periodic forward-difference kernels along rows and columns.
std::pair<Spectrum, Spectrum> diff_spectra(int h, int w);

// |Dx|^2 + |Dy|^2, the (real, non-negative) spectrum of -div(grad(.)).
// Zero at zero frequency.
std::vector<double> laplacian_spectrum(int h, int w);

// Circular convolution via the frequency domain, channel-wise.
Image convolve_periodic(const Image& img, const Kernel& kern);

// F^{-1}(filter .* F(plane)) for a precomputed transfer function.
Image apply_spectrum(const Image& plane, const Spectrum& filter, Fft2D& fft);

double dot(const Image& a, const Image& b);
double dot(const GradientField& a, const GradientField& b);
double norm2(const Image& a);
double norm2(const GradientField& a);

}  // namespace deblur
