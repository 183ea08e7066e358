#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "deblur/degrade.hpp"

namespace deblur {

namespace {

struct Ellipse {
  double value;      // additive intensity
  double a, b;       // semi-axes
  double x0, y0;     // center
  double phi_deg;    // rotation
};

// High-contrast ten-ellipse head phantom on the [-1,1]^2 square.
constexpr Ellipse kEllipses[] = {
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.605, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
};

}  // namespace

Image shepp_logan_phantom(int n) {
  if (n < 2) {
    throw std::invalid_argument("shepp_logan_phantom: size must be >= 2");
  }
  Image img(n, n, 1);
  const double step = 2.0 / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double y = 1.0 - i * step;  // top row is y = +1
    for (int j = 0; j < n; ++j) {
      const double x = -1.0 + j * step;
      double v = 0.0;
      for (const Ellipse& e : kEllipses) {
        const double phi = e.phi_deg * M_PI / 180.0;
        const double c = std::cos(phi), s = std::sin(phi);
        const double xr = (x - e.x0) * c + (y - e.y0) * s;
        const double yr = -(x - e.x0) * s + (y - e.y0) * c;
        if (xr * xr / (e.a * e.a) + yr * yr / (e.b * e.b) <= 1.0) {
          v += e.value;
        }
      }
      img.at(i, j) = 255.0 * std::clamp(v, 0.0, 1.0);
    }
  }
  return img;
}

}  // namespace deblur
