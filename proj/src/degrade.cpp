#include "deblur/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "deblur/operators.hpp"

namespace deblur {

Kernel gaussian_kernel(int size, double spread) {
  if (size < 1 || size % 2 == 0) {
    throw std::invalid_argument("gaussian_kernel: size must be odd");
  }
  if (!(spread > 0.0)) {
    throw std::invalid_argument("gaussian_kernel: spread must be positive");
  }
  const int r = size / 2;
  std::vector<double> taps(static_cast<std::size_t>(size) * size);
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const double x = i - r, y = j - r;
      const double v = std::exp(-(x * x + y * y) / (2.0 * spread * spread));
      taps[static_cast<std::size_t>(i) * size + j] = v;
      sum += v;
    }
  }
  for (double& t : taps) t /= sum;
  return Kernel(size, std::move(taps));
}

Kernel average_kernel(int size) {
  if (size < 1 || size % 2 == 0) {
    throw std::invalid_argument("average_kernel: size must be odd");
  }
  std::vector<double> taps(static_cast<std::size_t>(size) * size,
                           1.0 / (static_cast<double>(size) * size));
  return Kernel(size, std::move(taps));
}

namespace {

// Length of the segment p0 + s*(p1-p0), s in [0,1], clipped to an
// axis-aligned box (Liang-Barsky).
double clipped_length(double x0, double y0, double x1, double y1,
                      double xmin, double xmax, double ymin, double ymax) {
  const double dx = x1 - x0, dy = y1 - y0;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {x0 - xmin, xmax - x0, y0 - ymin, ymax - y0};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return 0.0;
      continue;
    }
    const double r = q[k] / p[k];
    if (p[k] < 0.0) {
      if (r > t1) return 0.0;
      t0 = std::max(t0, r);
    } else {
      if (r < t0) return 0.0;
      t1 = std::min(t1, r);
    }
  }
  if (t1 <= t0) return 0.0;
  return (t1 - t0) * std::hypot(dx, dy);
}

}  // namespace

Kernel motion_kernel(double length, double angle_deg) {
  if (!(length >= 1.0)) {
    throw std::invalid_argument("motion_kernel: length must be >= 1");
  }
  // Uniform-density segment of the given length through the kernel center;
  // tap weight = length of the segment clipped to that pixel's unit cell,
  // normalized so the taps sum to 1. Axis-aligned angles reduce to exact
  // uniform rows/columns, and kernel(theta) == kernel(theta + 180).
  double dx = std::cos(angle_deg * M_PI / 180.0);
  double dy = -std::sin(angle_deg * M_PI / 180.0);
  if (std::abs(dx) < 1e-12) dx = 0.0;
  if (std::abs(dy) < 1e-12) dy = 0.0;
  const double dnorm = std::hypot(dx, dy);
  dx /= dnorm;
  dy /= dnorm;
  const double half = length / 2.0;
  const double x0 = -half * dx, y0 = -half * dy;
  const double x1 = half * dx, y1 = half * dy;

  const int rmax = static_cast<int>(std::ceil(half + 0.5));
  const int side = 2 * rmax + 1;
  std::vector<double> mass(static_cast<std::size_t>(side) * side, 0.0);
  int used = 0;
  for (int i = -rmax; i <= rmax; ++i) {
    for (int j = -rmax; j <= rmax; ++j) {
      // Cell (i,j) spans [j-0.5, j+0.5] x [i-0.5, i+0.5] in (x, y).
      const double len = clipped_length(x0, y0, x1, y1, j - 0.5, j + 0.5,
                                        i - 0.5, i + 0.5);
      if (len > 0.0) {
        mass[static_cast<std::size_t>(i + rmax) * side + (j + rmax)] = len;
        used = std::max({used, std::abs(i), std::abs(j)});
      }
    }
  }
  // Trim to the smallest odd square holding every nonzero tap.
  const int r = used;
  const int s = 2 * r + 1;
  std::vector<double> taps(static_cast<std::size_t>(s) * s, 0.0);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    for (int j = -r; j <= r; ++j) {
      const double v =
          mass[static_cast<std::size_t>(i + rmax) * side + (j + rmax)];
      taps[static_cast<std::size_t>(i + r) * s + (j + r)] = v;
      sum += v;
    }
  }
  for (double& t : taps) t /= sum;
  return Kernel(s, std::move(taps));
}

Kernel make_blur_kernel(const BlurSpec& spec) {
  switch (spec.kind) {
    case KernelKind::Gaussian:
      return gaussian_kernel(spec.size, spec.spread);
    case KernelKind::Motion:
      return motion_kernel(spec.length, spec.angle_deg);
    case KernelKind::Average:
      return average_kernel(spec.size);
  }
  throw std::logic_error("make_blur_kernel: bad kind");
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Gaussian: return "gaussian";
    case KernelKind::Motion: return "motion";
    case KernelKind::Average: return "average";
  }
  return "?";
}

namespace {

std::string trim_number(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

std::string to_string(const BlurSpec& spec) {
  switch (spec.kind) {
    case KernelKind::Gaussian:
      return "gaussian:" + std::to_string(spec.size) + ":" + trim_number(spec.spread);
    case KernelKind::Motion:
      return "motion:" + trim_number(spec.length) + ":" + trim_number(spec.angle_deg);
    case KernelKind::Average:
      return "average:" + std::to_string(spec.size);
  }
  return "?";
}

BlurSpec parse_blur_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t colon = text.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  auto num = [&](std::size_t idx) {
    try {
      std::size_t pos = 0;
      double v = std::stod(parts.at(idx), &pos);
      if (pos != parts[idx].size()) throw std::invalid_argument(parts[idx]);
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad kernel spec '" + text + "'");
    }
  };

  BlurSpec spec;
  if (parts.empty()) throw std::invalid_argument("empty kernel spec");
  if (parts[0] == "gaussian") {
    if (parts.size() != 3) {
      throw std::invalid_argument("kernel spec wants gaussian:size:spread");
    }
    spec.kind = KernelKind::Gaussian;
    spec.size = static_cast<int>(num(1));
    spec.spread = num(2);
    if (spec.size != num(1)) throw std::invalid_argument("kernel size must be integral");
  } else if (parts[0] == "motion") {
    if (parts.size() != 3) {
      throw std::invalid_argument("kernel spec wants motion:length:angle");
    }
    spec.kind = KernelKind::Motion;
    spec.length = num(1);
    spec.angle_deg = num(2);
  } else if (parts[0] == "average") {
    if (parts.size() != 2) {
      throw std::invalid_argument("kernel spec wants average:size");
    }
    spec.kind = KernelKind::Average;
    spec.size = static_cast<int>(num(1));
    if (spec.size != num(1)) throw std::invalid_argument("kernel size must be integral");
  } else {
    throw std::invalid_argument("unknown kernel kind '" + parts[0] + "'");
  }
  return spec;
}

Image add_gaussian_noise(const Image& img, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("add_gaussian_noise: sigma must be >= 0");
  }
  Image out = img;
  if (sigma == 0.0) return out;

  std::mt19937_64 rng(seed);
  // Box-Muller; u1 in (0,1] so the log is finite. One normal per sample,
  // the pair's second value is carried over.
  bool have_spare = false;
  double spare = 0.0;
  auto next_normal = [&]() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double scale = 1.0 / 9007199254740992.0;  // 2^-53
    const double u1 = 1.0 - static_cast<double>(rng() >> 11) * scale;
    const double u2 = static_cast<double>(rng() >> 11) * scale;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare = radius * std::sin(2.0 * M_PI * u2);
    have_spare = true;
    return radius * std::cos(2.0 * M_PI * u2);
  };
  for (double& v : out.data) {
    v += sigma * next_normal();
  }
  return out;
}

Image degrade(const Image& u, const DegradeSpec& spec) {
  Kernel kern = make_blur_kernel(spec.blur);
  Image blurred = convolve_periodic(u, kern);
  return add_gaussian_noise(blurred, spec.noise_sigma, spec.seed);
}

}  // namespace deblur
