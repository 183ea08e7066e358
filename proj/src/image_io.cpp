#include "deblur/image_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace deblur {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) continue;
    tok.push_back(static_cast<char>(c));
    while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#') {
      tok.push_back(static_cast<char>(in.get()));
    }
    return tok;
  }
  return tok;
}

int parse_positive_int(const std::string& tok, const std::string& what,
                       const std::string& path) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("malformed " + what + " in " + path);
  }
}

std::uint8_t encode_byte(double v) {
  if (v < 0.0) v = 0.0;
  if (v > 255.0) v = 255.0;
  return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

}  // namespace

Image load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("unreadable file: " + path);
  }
  std::string magic = next_token(in);
  int channels;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw std::runtime_error("unsupported format (want P5/P6): " + path);
  }
  int w = parse_positive_int(next_token(in), "width", path);
  int h = parse_positive_int(next_token(in), "height", path);
  int maxval = parse_positive_int(next_token(in), "maxval", path);
  if (w < 1 || h < 1) {
    throw std::runtime_error("zero-dimension image: " + path);
  }
  if (maxval < 1 || maxval > 255) {
    throw std::runtime_error("unsupported maxval (want <= 255): " + path);
  }
  in.get();  // single whitespace after maxval

  std::vector<std::uint8_t> raw(static_cast<std::size_t>(w) * h * channels);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw std::runtime_error("truncated pixel data: " + path);
  }

  Image img(h, w, channels);
  // Raster order is row-major with interleaved samples; storage is planar.
  std::size_t idx = 0;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      for (int c = 0; c < channels; ++c) {
        img.at(i, j, c) = static_cast<double>(raw[idx++]);
      }
    }
  }
  return img;
}

void save_image(const Image& img, const std::string& path) {
  if (img.channels != 1 && img.channels != 3) {
    throw std::invalid_argument("save_image: image must have 1 or 3 channels");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("unwritable path: " + path);
  }
  out << (img.channels == 1 ? "P5" : "P6") << "\n"
      << img.width << " " << img.height << "\n255\n";
  std::vector<std::uint8_t> raw;
  raw.reserve(img.size());
  for (int i = 0; i < img.height; ++i) {
    for (int j = 0; j < img.width; ++j) {
      for (int c = 0; c < img.channels; ++c) {
        raw.push_back(encode_byte(img.at(i, j, c)));
      }
    }
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace deblur
