#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mhm/channel.hpp"
#include "mhm/colorspace.hpp"

namespace mhm {

/// Decoded raster with RGB intensities normalized to [0,1].
///
/// Samples are interleaved RGB in row-major order. The bit depth records the
/// code range of the source file (8 or 16) so that results can be quantized
/// back to it. Alpha, when present, is carried alongside and never touched by
/// color operations.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(std::size_t width, std::size_t height, int bit_depth = 8, bool has_alpha = false);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return width_ * height_; }
  bool empty() const noexcept { return pixel_count() == 0; }

  int bit_depth() const noexcept { return bit_depth_; }
  /// Largest code value at this bit depth (255 or 65535).
  double max_code() const noexcept { return static_cast<double>((1u << bit_depth_) - 1u); }

  bool has_alpha() const noexcept { return !alpha_.empty(); }

  RgbTriple pixel(std::size_t i) const {
    return {rgb_[3 * i], rgb_[3 * i + 1], rgb_[3 * i + 2]};
  }
  RgbTriple pixel(std::size_t x, std::size_t y) const { return pixel(y * width_ + x); }

  void set_pixel(std::size_t i, const RgbTriple& p) {
    rgb_[3 * i] = p.r;
    rgb_[3 * i + 1] = p.g;
    rgb_[3 * i + 2] = p.b;
  }
  void set_pixel(std::size_t x, std::size_t y, const RgbTriple& p) { set_pixel(y * width_ + x, p); }

  /// CMY intensity of one channel at pixel i.
  double dye(std::size_t i, Channel c) const { return 1.0 - rgb_[3 * i + index_of(c)]; }

  std::span<const double> rgb() const noexcept { return rgb_; }
  std::span<double> rgb() noexcept { return rgb_; }
  std::span<const double> alpha() const noexcept { return alpha_; }
  std::span<double> alpha() noexcept { return alpha_; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  int bit_depth_ = 8;
  std::vector<double> rgb_;
  std::vector<double> alpha_;
};

/// Round-half-up of a [0,1] intensity to the nearest code at `max_code`,
/// returned as a normalized value. Inputs are clamped to [0,1] first.
double quantize(double value, double max_code);

}  // namespace mhm
