#include "mhm/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "mhm/error.hpp"

namespace mhm {

double DensityProfile::mass_between(double lo, double hi) const {
  const std::size_t n = mass.size();
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, 0.0, 1.0);
  if (n == 0 || hi <= lo) return 0.0;
  const double width = 1.0 / static_cast<double>(n);
  const std::size_t first = density_bin(lo, n);
  const std::size_t last = density_bin(hi, n);
  double total = 0.0;
  for (std::size_t b = first; b <= last; ++b) {
    const double left = std::max(lo, static_cast<double>(b) * width);
    const double right = std::min(hi, static_cast<double>(b + 1) * width);
    if (right > left) total += mass[b] * (right - left) / width;
  }
  return total;
}

std::vector<double> dye_values(const ImageBuffer& image, Channel channel) {
  std::vector<double> out(image.pixel_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = image.dye(i, channel);
  return out;
}

std::vector<double> sample_quantiles(std::span<double> sample, std::size_t count) {
  if (sample.empty()) throw EmptyImageError();
  if (count < 2) throw InvalidArgument("quantile count must be at least 2");
  std::sort(sample.begin(), sample.end());

  const std::size_t n = sample.size();
  const double last = static_cast<double>(n - 1);
  std::vector<double> values(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    const double p = static_cast<double>(k) / static_cast<double>(count);
    const double h = last * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= n) {
      values[k] = sample[n - 1];
    } else {
      const double frac = h - static_cast<double>(lo);
      values[k] = sample[lo] + frac * (sample[lo + 1] - sample[lo]);
    }
  }
  // Interpolation can round a hair below its left neighbour on flat runs.
  for (std::size_t k = 1; k <= count; ++k) values[k] = std::max(values[k], values[k - 1]);
  return values;
}

QuantileProfile quantiles(const ImageBuffer& image, Channel channel, std::size_t count) {
  if (image.empty()) throw EmptyImageError();
  std::vector<double> sample = dye_values(image, channel);
  QuantileProfile profile;
  profile.channel = channel;
  profile.values = sample_quantiles(sample, count);
  profile.probabilities.resize(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    profile.probabilities[k] = static_cast<double>(k) / static_cast<double>(count);
  }
  return profile;
}

std::size_t density_bin(double value, std::size_t bins) {
  const double scaled = std::clamp(value, 0.0, 1.0) * static_cast<double>(bins);
  return std::min(static_cast<std::size_t>(scaled), bins - 1);
}

DensityProfile density(const ImageBuffer& image, Channel channel, std::size_t bins) {
  if (image.empty()) throw EmptyImageError();
  if (bins < 1) throw InvalidArgument("density needs at least one bin");
  std::vector<std::size_t> counts(bins, 0);
  for (std::size_t i = 0; i < image.pixel_count(); ++i) {
    ++counts[density_bin(image.dye(i, channel), bins)];
  }
  DensityProfile profile;
  profile.channel = channel;
  profile.mass.resize(bins);
  const double n = static_cast<double>(image.pixel_count());
  for (std::size_t b = 0; b < bins; ++b) profile.mass[b] = static_cast<double>(counts[b]) / n;
  return profile;
}

}  // namespace mhm
