#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mhm/channel.hpp"
#include "mhm/image.hpp"

namespace mhm {

inline constexpr std::size_t kDefaultQuantileCount = 256;
inline constexpr std::size_t kDefaultDensityBins = 256;

/// Empirical quantile function of one dye channel sampled at probabilities
/// k/K for k = 0..K.
struct QuantileProfile {
  Channel channel = Channel::Cyan;
  std::vector<double> probabilities;
  std::vector<double> values;

  std::size_t intervals() const noexcept { return values.empty() ? 0 : values.size() - 1; }
};

/// Histogram of one dye channel over B uniform bins on [0,1], normalized to
/// unit total mass.
struct DensityProfile {
  Channel channel = Channel::Cyan;
  std::vector<double> mass;

  std::size_t bins() const noexcept { return mass.size(); }

  /// Mass in [lo, hi], treating the density as constant within each bin.
  double mass_between(double lo, double hi) const;
};

/// CMY intensities of `channel` for every pixel, in raster order.
std::vector<double> dye_values(const ImageBuffer& image, Channel channel);

/// Type-7 quantiles (linear interpolation between order statistics) of an
/// arbitrary sample. Sorts `sample` in place.
std::vector<double> sample_quantiles(std::span<double> sample, std::size_t count);

QuantileProfile quantiles(const ImageBuffer& image, Channel channel,
                          std::size_t count = kDefaultQuantileCount);

DensityProfile density(const ImageBuffer& image, Channel channel,
                       std::size_t bins = kDefaultDensityBins);

/// Bin index of an intensity; 1.0 falls in the last bin.
std::size_t density_bin(double value, std::size_t bins);

}  // namespace mhm
