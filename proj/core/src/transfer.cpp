#include "mhm/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mhm {
namespace {

struct Node {
  double x;
  double y;
};

void check_curve(Channel channel, const std::vector<double>& y) {
  const std::string name(to_string(channel));
  if (y.size() < 3) throw TransformInvariantError(name + ": curve needs at least 3 grid points");
  if (y.front() != 0.0) throw TransformInvariantError(name + ": curve must map 0 to 0");
  if (y.back() != 1.0) throw TransformInvariantError(name + ": curve must map 1 to 1");
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (!(y[k] >= 0.0 && y[k] <= 1.0)) {
      throw TransformInvariantError(name + ": output outside [0,1] at grid point " +
                                    std::to_string(k));
    }
    if (k > 0 && y[k] < y[k - 1]) {
      throw TransformInvariantError(name + ": curve is not monotone at grid point " +
                                    std::to_string(k));
    }
  }
}

// Linear interpolation through nodes sorted by strictly increasing x, with
// nodes.front().x == 0 and nodes.back().x == 1.
std::vector<double> resample(const std::vector<Node>& nodes, std::size_t intervals) {
  std::vector<double> out(intervals + 1);
  std::size_t seg = 0;
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(intervals);
    while (seg + 2 < nodes.size() && nodes[seg + 1].x < x) ++seg;
    const Node& a = nodes[seg];
    const Node& b = nodes[seg + 1];
    const double t = std::clamp((x - a.x) / (b.x - a.x), 0.0, 1.0);
    out[k] = a.y + t * (b.y - a.y);
  }
  out.front() = 0.0;
  out.back() = 1.0;
  for (std::size_t k = 1; k <= intervals; ++k) {
    out[k] = std::clamp(std::max(out[k], out[k - 1]), 0.0, 1.0);
  }
  return out;
}

double median_of(std::vector<double>& values) {
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

ChannelTransform::ChannelTransform(Channel channel, std::vector<double> outputs)
    : channel_(channel), outputs_(std::move(outputs)) {
  check_curve(channel_, outputs_);
}

ChannelTransform ChannelTransform::identity(Channel channel, std::size_t intervals) {
  if (intervals < 2) throw InvalidArgument("grid needs at least 2 intervals");
  std::vector<double> y(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    y[k] = static_cast<double>(k) / static_cast<double>(intervals);
  }
  return ChannelTransform(channel, std::move(y));
}

double ChannelTransform::evaluate(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("transform input " + std::to_string(x) + " outside [0,1]");
  }
  return evaluate_clamped(x);
}

double ChannelTransform::evaluate_clamped(double x) const noexcept {
  const std::size_t g = intervals();
  if (!(x > 0.0)) return outputs_.front();
  if (x >= 1.0) return outputs_.back();
  const double scaled = x * static_cast<double>(g);
  const std::size_t k = std::min(static_cast<std::size_t>(scaled), g - 1);
  const double t = scaled - static_cast<double>(k);
  if (t == 0.0) return outputs_[k];
  return outputs_[k] + t * (outputs_[k + 1] - outputs_[k]);
}

TransformSet::TransformSet(std::array<ChannelTransform, 3> channels, Metadata metadata)
    : channels_(std::move(channels)), metadata_(std::move(metadata)) {
  for (Channel c : kAllChannels) {
    if (channels_[index_of(c)].channel() != c) {
      throw MismatchError("transform set channels must be ordered cyan, magenta, yellow");
    }
    if (channels_[index_of(c)].intervals() != channels_[0].intervals()) {
      throw MismatchError("transform set channels must share one grid");
    }
  }
}

TransformSet TransformSet::identity(std::size_t intervals) {
  return TransformSet({ChannelTransform::identity(Channel::Cyan, intervals),
                       ChannelTransform::identity(Channel::Magenta, intervals),
                       ChannelTransform::identity(Channel::Yellow, intervals)},
                      {{"source", "identity"}});
}

ChannelTransform match_quantiles(const QuantileProfile& damaged, const QuantileProfile& reference,
                                 std::size_t intervals, std::vector<std::string>* warnings) {
  if (intervals < 2) throw InvalidArgument("grid needs at least 2 intervals");
  if (damaged.values.size() != reference.values.size() || damaged.values.size() < 3) {
    throw MismatchError("quantile profiles must have the same count (at least 2 intervals)");
  }

  // Matched pairs strictly inside (0,1); the endpoints are pinned.
  std::vector<Node> nodes{{0.0, 0.0}};
  std::size_t k = 0;
  const std::size_t n = damaged.values.size();
  while (k < n) {
    const double x = damaged.values[k];
    double sum = 0.0;
    std::size_t run = 0;
    while (k < n && damaged.values[k] == x) {
      sum += reference.values[k];
      ++run;
      ++k;
    }
    if (x > 0.0 && x < 1.0) nodes.push_back({x, sum / static_cast<double>(run)});
  }
  nodes.push_back({1.0, 1.0});

  if (warnings != nullptr && nodes.size() <= 3) {
    const std::string name(to_string(damaged.channel));
    if (nodes.size() == 3) {
      warnings->push_back(name + " channel of the damaged image is constant; curve is built from "
                                 "the pinned endpoints and one matched point");
    } else {
      warnings->push_back(name + " channel of the damaged image has no interior values; curve "
                                 "falls back to the identity");
    }
  }
  return ChannelTransform(damaged.channel, resample(nodes, intervals));
}

TransformSet estimate_pair(const ImageBuffer& damaged, const ImageBuffer& reference,
                           const EstimateOptions& options, std::vector<std::string>* warnings) {
  if (damaged.empty() || reference.empty()) throw EmptyImageError();
  auto channel_curve = [&](Channel c) {
    return match_quantiles(quantiles(damaged, c, options.quantiles),
                           quantiles(reference, c, options.quantiles), options.intervals,
                           warnings);
  };
  return TransformSet({channel_curve(Channel::Cyan), channel_curve(Channel::Magenta),
                       channel_curve(Channel::Yellow)},
                      {{"source", "pair"}});
}

TransformSet aggregate_median(std::span<const TransformSet> estimates) {
  if (estimates.empty()) throw InvalidArgument("median of an empty list of transforms");
  const std::size_t g = estimates.front().intervals();
  for (const TransformSet& e : estimates) {
    if (e.intervals() != g) throw MismatchError("transforms to aggregate use different grids");
  }

  auto channel_median = [&](Channel c) {
    std::vector<double> out(g + 1);
    std::vector<double> column(estimates.size());
    for (std::size_t k = 0; k <= g; ++k) {
      for (std::size_t i = 0; i < estimates.size(); ++i) column[i] = estimates[i][c].outputs()[k];
      out[k] = median_of(column);
    }
    return ChannelTransform(c, std::move(out));
  };
  return TransformSet({channel_median(Channel::Cyan), channel_median(Channel::Magenta),
                       channel_median(Channel::Yellow)},
                      {{"source", "median-of-" + std::to_string(estimates.size())}});
}

TransformLut::TransformLut(const TransformSet& transforms, int bit_depth)
    : bit_depth_(bit_depth), max_code_(static_cast<double>((1u << bit_depth) - 1u)) {
  if (bit_depth != 8 && bit_depth != 16) {
    throw InvalidArgument("unsupported bit depth " + std::to_string(bit_depth));
  }
  const auto codes = static_cast<std::size_t>(max_code_) + 1;
  for (Channel c : kAllChannels) {
    auto& table = table_[index_of(c)];
    table.resize(codes);
    const ChannelTransform& curve = transforms[c];
    for (std::size_t code = 0; code < codes; ++code) {
      const double rgb = static_cast<double>(code) / max_code_;
      const double dye = curve.evaluate_clamped(1.0 - rgb);
      table[code] = quantize(1.0 - dye, max_code_);
    }
  }
}

ImageBuffer TransformLut::apply(const ImageBuffer& image) const {
  if (image.bit_depth() != bit_depth_) {
    throw MismatchError("lookup table built for " + std::to_string(bit_depth_) +
                        "-bit images, got " + std::to_string(image.bit_depth()) + "-bit");
  }
  ImageBuffer out = image;
  auto rgb = out.rgb();
  for (std::size_t s = 0; s < rgb.size(); ++s) {
    const double code = std::floor(std::clamp(rgb[s], 0.0, 1.0) * max_code_ + 0.5);
    rgb[s] = table_[s % 3][static_cast<std::size_t>(code)];
  }
  return out;
}

ImageBuffer apply(const ImageBuffer& image, const TransformSet& transforms) {
  return TransformLut(transforms, image.bit_depth()).apply(image);
}

}  // namespace mhm
