#include "deblur/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace deblur {

GradientField grad(const Image& u) {
  if (u.channels != 1) {
    throw std::invalid_argument("grad: expects a single-channel image");
  }
  const int h = u.height, w = u.width;
  GradientField g(h, w);
  for (int i = 0; i < h; ++i) {
    const int inext = (i + 1 == h) ? 0 : i + 1;
    for (int j = 0; j < w; ++j) {
      const int jnext = (j + 1 == w) ? 0 : j + 1;
      g.gx.at(i, j) = u.at(inext, j) - u.at(i, j);
      g.gy.at(i, j) = u.at(i, jnext) - u.at(i, j);
    }
  }
  return g;
}

Image div(const GradientField& p) {
  const int h = p.height(), w = p.width();
  Image out(h, w, 1);
  for (int i = 0; i < h; ++i) {
    const int iprev = (i == 0) ? h - 1 : i - 1;
    for (int j = 0; j < w; ++j) {
      const int jprev = (j == 0) ? w - 1 : j - 1;
      out.at(i, j) = p.gx.at(i, j) - p.gx.at(iprev, j) +
                     p.gy.at(i, j) - p.gy.at(i, jprev);
    }
  }
  return out;
}

Spectrum kernel_spectrum(const Kernel& kern, int h, int w) {
  if (kern.size > h || kern.size > w) {
    throw std::invalid_argument("kernel_spectrum: kernel larger than image");
  }
  Image padded(h, w, 1);
  const int r = kern.radius();
  for (int ki = 0; ki < kern.size; ++ki) {
    const int di = ((ki - r) % h + h) % h;
    for (int kj = 0; kj < kern.size; ++kj) {
      const int dj = ((kj - r) % w + w) % w;
      padded.at(di, dj) += kern.at(ki, kj);
    }
  }
  Fft2D fft(h, w);
  return fft.forward(padded);
}

std::pair<Spectrum, Spectrum> diff_spectra(int h, int w) {
  if (h < 1 || w < 1) {
    throw std::invalid_argument("diff_spectra: dimensions must be positive");
  }
  // Forward difference along rows: taps -1 at (0,0) and +1 at (-1,0); the
  // wrapped +1 lands on row h-1. Likewise for columns.
  Image dx(h, w, 1), dy(h, w, 1);
  dx.at(0, 0) -= 1.0;
  dx.at(h - 1, 0) += 1.0;
  dy.at(0, 0) -= 1.0;
  dy.at(0, w - 1) += 1.0;
  Fft2D fft(h, w);
  return {fft.forward(dx), fft.forward(dy)};
}

std::vector<double> laplacian_spectrum(int h, int w) {
  // |e^{i*2*pi*k/n} - 1|^2 = 2 - 2*cos(2*pi*k/n), accumulated per axis.
  std::vector<double> lap(static_cast<std::size_t>(h) * w);
  const double two_pi = 2.0 * M_PI;
  for (int i = 0; i < h; ++i) {
    const double li = 2.0 - 2.0 * std::cos(two_pi * i / h);
    for (int j = 0; j < w; ++j) {
      const double lj = 2.0 - 2.0 * std::cos(two_pi * j / w);
      lap[static_cast<std::size_t>(i) * w + j] = li + lj;
    }
  }
  return lap;
}

Image apply_spectrum(const Image& plane, const Spectrum& filter, Fft2D& fft) {
  Spectrum s = fft.forward(plane);
  for (std::size_t i = 0; i < s.data.size(); ++i) {
    s.data[i] *= filter.data[i];
  }
  return fft.inverse_real(s);
}

Image convolve_periodic(const Image& img, const Kernel& kern) {
  if (kern.size > img.height || kern.size > img.width) {
    throw std::invalid_argument("convolve_periodic: kernel larger than image");
  }
  Spectrum khat = kernel_spectrum(kern, img.height, img.width);
  Fft2D fft(img.height, img.width);
  if (img.channels == 1) {
    return apply_spectrum(img, khat, fft);
  }
  std::vector<Image> planes = split_channels(img);
  for (Image& p : planes) {
    p = apply_spectrum(p, khat, fft);
  }
  return merge_channels(planes);
}

double dot(const Image& a, const Image& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
  return s;
}

double dot(const GradientField& a, const GradientField& b) {
  return dot(a.gx, b.gx) + dot(a.gy, b.gy);
}

double norm2(const Image& a) { return std::sqrt(dot(a, a)); }

double norm2(const GradientField& a) { return std::sqrt(dot(a, a)); }

}  // namespace deblur
