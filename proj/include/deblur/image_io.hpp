#pragma once

#include <string>

#include "deblur/image.hpp"

namespace deblur {

// Binary PGM (P5) / PPM (P6) with maxval up to 255. Bytes map to intensities
// one to one; no rescaling.
Image load_image(const std::string& path);

// Clamps to [0,255], rounds half away from zero, writes P5 for one channel
// and P6 for three. save followed by load is the identity for integer-valued
// images already inside [0,255].
void save_image(const Image& img, const std::string& path);

}  // namespace deblur
