#pragma once

// Median histogram matching: per-pair percentile-matched dye curves,
// pointwise-median aggregation, and application to images.

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mhm/channel.hpp"
#include "mhm/error.hpp"
#include "mhm/histogram.hpp"
#include "mhm/image.hpp"

namespace mhm {

inline constexpr std::size_t kDefaultGridIntervals = 255;

/// A curve violates y(0)=0, y(1)=1, monotonicity or the [0,1] range.
class TransformInvariantError : public Error {
 public:
  using Error::Error;
};

/// Monotone piecewise-linear map [0,1] -> [0,1] sampled on the uniform grid
/// x_k = k/G, k = 0..G.
class ChannelTransform {
 public:
  /// Validates the curve invariants; throws TransformInvariantError.
  ChannelTransform(Channel channel, std::vector<double> outputs);

  static ChannelTransform identity(Channel channel, std::size_t intervals = kDefaultGridIntervals);

  Channel channel() const noexcept { return channel_; }
  std::size_t intervals() const noexcept { return outputs_.size() - 1; }
  std::span<const double> outputs() const noexcept { return outputs_; }
  double grid_point(std::size_t k) const noexcept {
    return static_cast<double>(k) / static_cast<double>(intervals());
  }

  /// Throws InvalidArgument for x outside [0,1] (including NaN).
  double evaluate(double x) const;
  double evaluate_clamped(double x) const noexcept;

  friend bool operator==(const ChannelTransform&, const ChannelTransform&) = default;

 private:
  Channel channel_;
  std::vector<double> outputs_;
};

/// Cyan, magenta and yellow curves on a shared grid plus free-form metadata
/// ("source", "created", ...).
class TransformSet {
 public:
  using Metadata = std::map<std::string, std::string>;

  /// Throws MismatchError if the curves are on different grids or are not
  /// ordered cyan, magenta, yellow.
  TransformSet(std::array<ChannelTransform, 3> channels, Metadata metadata = {});

  static TransformSet identity(std::size_t intervals = kDefaultGridIntervals);

  const ChannelTransform& operator[](Channel c) const noexcept { return channels_[index_of(c)]; }
  const std::array<ChannelTransform, 3>& channels() const noexcept { return channels_; }
  std::size_t intervals() const noexcept { return channels_[0].intervals(); }

  const Metadata& metadata() const noexcept { return metadata_; }
  Metadata& metadata() noexcept { return metadata_; }

  /// Curves only; metadata is ignored.
  bool same_curves(const TransformSet& other) const { return channels_ == other.channels_; }

  friend bool operator==(const TransformSet&, const TransformSet&) = default;

 private:
  std::array<ChannelTransform, 3> channels_;
  Metadata metadata_;
};

struct EstimateOptions {
  std::size_t quantiles = kDefaultQuantileCount;  // K
  std::size_t intervals = kDefaultGridIntervals;  // G
};

/// Builds one channel curve from matched quantile profiles: points
/// (damaged_k, reference_k), endpoints pinned to (0,0) and (1,1), repeated
/// damaged values collapsed to the mean reference value, linear interpolation
/// in between, resampled on the G-interval grid. A damaged channel with a
/// single distinct interior value yields a warning.
ChannelTransform match_quantiles(const QuantileProfile& damaged, const QuantileProfile& reference,
                                 std::size_t intervals, std::vector<std::string>* warnings = nullptr);

TransformSet estimate_pair(const ImageBuffer& damaged, const ImageBuffer& reference,
                           const EstimateOptions& options = {},
                           std::vector<std::string>* warnings = nullptr);

/// Pointwise median of the curves (mean of the two central values for even
/// counts). Throws InvalidArgument on an empty list and MismatchError on
/// differing grids.
TransformSet aggregate_median(std::span<const TransformSet> estimates);

/// Per-channel lookup from source code value to restored intensity, built
/// once and reused across a batch of images with the same bit depth.
class TransformLut {
 public:
  TransformLut(const TransformSet& transforms, int bit_depth);

  int bit_depth() const noexcept { return bit_depth_; }

  /// Maps every pixel through RGB -> CMY -> curve -> RGB and quantizes to the
  /// source bit depth (round half up). Alpha is copied unchanged. Throws
  /// MismatchError if the image bit depth differs from the table's.
  ImageBuffer apply(const ImageBuffer& image) const;

 private:
  int bit_depth_;
  double max_code_;
  std::array<std::vector<double>, 3> table_;
};

ImageBuffer apply(const ImageBuffer& image, const TransformSet& transforms);

}  // namespace mhm
