#pragma once

// Synthetic test material: random "clean" images and known monotone dye
// degradations whose exact inverse is the ground-truth restoring transform.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "mhm/image.hpp"
#include "mhm/transfer.hpp"

namespace mhm {

/// Power-law degradation of each dye: damaged = clean^gamma. The restoring
/// curve is x^(1/gamma). A gamma above 1 thins that dye out, as a faded cyan
/// layer does.
struct CurveSpec {
  std::array<double, 3> gamma{1.0, 1.0, 1.0};

  /// Parses "c=1.8,m=1.0,y=1.05" (any subset; missing channels stay 1).
  /// Throws InvalidArgument on syntax errors or a non-increasing curve
  /// (gamma not finite and positive).
  static CurveSpec parse(std::string_view text);

  /// Throws InvalidArgument unless every gamma is finite and positive.
  void validate() const;

  std::string to_string() const;
};

/// Multiplies each gamma by exp(jitter * u), u uniform on [-1,1], drawn from
/// a generator seeded with `seed`.
CurveSpec jittered(const CurveSpec& spec, double jitter, std::uint64_t seed);

double degrade_dye(double dye, double gamma);

/// Degrades every pixel's dyes through `spec` and quantizes to the image's
/// bit depth. Alpha is copied.
ImageBuffer degrade(const ImageBuffer& clean, const CurveSpec& spec);

/// The exact restoring transform for `spec`, sampled on the grid.
TransformSet ground_truth(const CurveSpec& spec, std::size_t intervals = kDefaultGridIntervals);

/// Random image with per-channel power-shaped intensity distributions that
/// cover [0,1]; deterministic in `seed`.
ImageBuffer random_image(std::size_t width, std::size_t height, std::uint64_t seed,
                         int bit_depth = 8);

}  // namespace mhm
