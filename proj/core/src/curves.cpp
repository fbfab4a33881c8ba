#include "mhm/curves.hpp"

#include <cstdio>
#include <sstream>

namespace mhm {
namespace {

constexpr double kPanel = 240.0;
constexpr double kMargin = 30.0;
constexpr double kGap = 20.0;

std::string number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

const char* channel_color(Channel c) {
  switch (c) {
    case Channel::Cyan: return "#00a0c8";
    case Channel::Magenta: return "#c8008c";
    case Channel::Yellow: return "#d2b400";
  }
  return "#000000";
}

std::string polyline(const ChannelTransform& curve, double left, double top) {
  std::string points;
  for (std::size_t k = 0; k <= curve.intervals(); ++k) {
    const double x = left + curve.grid_point(k) * kPanel;
    const double y = top + (1.0 - curve.outputs()[k]) * kPanel;
    if (!points.empty()) points += ' ';
    points += number(x, 6) + "," + number(y, 6);
  }
  return points;
}

}  // namespace

std::string curve_csv(const ChannelTransform& curve) {
  std::string out = "x,y\n";
  for (std::size_t k = 0; k <= curve.intervals(); ++k) {
    out += number(curve.grid_point(k), 17) + "," + number(curve.outputs()[k], 17) + "\n";
  }
  return out;
}

std::string curves_svg(const TransformSet& aggregate, std::span<const TransformSet> estimates) {
  const double width = 2 * kMargin + 3 * kPanel + 2 * kGap;
  const double height = 2 * kMargin + kPanel;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (Channel c : kAllChannels) {
    const double left = kMargin + static_cast<double>(index_of(c)) * (kPanel + kGap);
    const double top = kMargin;
    svg << "<g>\n";
    svg << "  <text x=\"" << left + kPanel / 2 << "\" y=\"" << top - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << to_string(c) << "</text>\n";
    svg << "  <rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << kPanel
        << "\" height=\"" << kPanel << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << left << "\" y1=\"" << top + kPanel << "\" x2=\"" << left + kPanel
        << "\" y2=\"" << top << "\" stroke=\"#999999\" stroke-dasharray=\"4 4\"/>\n";
    for (const TransformSet& e : estimates) {
      svg << "  <polyline fill=\"none\" stroke=\"#b0b0b0\" stroke-width=\"0.8\" points=\""
          << polyline(e[c], left, top) << "\"/>\n";
    }
    svg << "  <polyline fill=\"none\" stroke=\"" << channel_color(c)
        << "\" stroke-width=\"2.5\" points=\"" << polyline(aggregate[c], left, top) << "\"/>\n";
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mhm
