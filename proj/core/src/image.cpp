#include "mhm/image.hpp"

#include <algorithm>
#include <cmath>

#include "mhm/error.hpp"

namespace mhm {

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, int bit_depth, bool has_alpha)
    : width_(width), height_(height), bit_depth_(bit_depth), rgb_(3 * width * height, 0.0) {
  if (bit_depth != 8 && bit_depth != 16) {
    throw InvalidArgument("unsupported bit depth " + std::to_string(bit_depth));
  }
  if (has_alpha) alpha_.assign(width * height, 1.0);
}

double quantize(double value, double max_code) {
  const double clamped = std::clamp(value, 0.0, 1.0);
  return std::floor(clamped * max_code + 0.5) / max_code;
}

}  // namespace mhm
