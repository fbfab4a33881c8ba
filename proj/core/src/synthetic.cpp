#include "mhm/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "mhm/error.hpp"

namespace mhm {

CurveSpec CurveSpec::parse(std::string_view text) {
  CurveSpec spec;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;

    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("curve spec item '" + std::string(item) + "' is not key=value");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    std::size_t channel = 0;
    if (key == "c" || key == "cyan") {
      channel = 0;
    } else if (key == "m" || key == "magenta") {
      channel = 1;
    } else if (key == "y" || key == "yellow") {
      channel = 2;
    } else {
      throw InvalidArgument("unknown channel '" + std::string(key) + "' in curve spec");
    }
    double gamma = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), gamma);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw InvalidArgument("bad exponent '" + std::string(value) + "' in curve spec");
    }
    spec.gamma[channel] = gamma;
  }
  spec.validate();
  return spec;
}

void CurveSpec::validate() const {
  for (Channel c : kAllChannels) {
    const double g = gamma[index_of(c)];
    if (!std::isfinite(g) || g <= 0.0) {
      throw InvalidArgument(std::string(mhm::to_string(c)) + " exponent " + std::to_string(g) +
                            " does not give an increasing curve");
    }
  }
}

std::string CurveSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << "c=" << gamma[0] << ",m=" << gamma[1] << ",y=" << gamma[2];
  return out.str();
}

CurveSpec jittered(const CurveSpec& spec, double jitter, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CurveSpec out = spec;
  for (double& g : out.gamma) g *= std::exp(jitter * u(rng));
  out.validate();
  return out;
}

double degrade_dye(double dye, double gamma) { return std::pow(std::clamp(dye, 0.0, 1.0), gamma); }

ImageBuffer degrade(const ImageBuffer& clean, const CurveSpec& spec) {
  spec.validate();
  ImageBuffer out = clean;
  auto rgb = out.rgb();
  for (std::size_t s = 0; s < rgb.size(); ++s) {
    const double dye = degrade_dye(1.0 - rgb[s], spec.gamma[s % 3]);
    rgb[s] = quantize(1.0 - dye, out.max_code());
  }
  return out;
}

TransformSet ground_truth(const CurveSpec& spec, std::size_t intervals) {
  spec.validate();
  auto curve = [&](Channel c) {
    const double inverse = 1.0 / spec.gamma[index_of(c)];
    std::vector<double> y(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k) {
      y[k] = std::pow(static_cast<double>(k) / static_cast<double>(intervals), inverse);
    }
    y.front() = 0.0;
    y.back() = 1.0;
    return ChannelTransform(c, std::move(y));
  };
  return TransformSet({curve(Channel::Cyan), curve(Channel::Magenta), curve(Channel::Yellow)},
                      {{"source", "synthetic"}, {"curve", spec.to_string()}});
}

ImageBuffer random_image(std::size_t width, std::size_t height, std::uint64_t seed,
                         int bit_depth) {
  ImageBuffer image(width, height, bit_depth);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> shape(0.6, 1.8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::array<double, 3> power{shape(rng), shape(rng), shape(rng)};
  auto rgb = image.rgb();
  for (std::size_t s = 0; s < rgb.size(); ++s) {
    rgb[s] = quantize(std::pow(u(rng), power[s % 3]), image.max_code());
  }
  return image;
}

}  // namespace mhm
