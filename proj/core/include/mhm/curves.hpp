#pragma once

// Plot-friendly exports of learned curves.

#include <span>
#include <string>

#include "mhm/transfer.hpp"

namespace mhm {

/// "x,y" header followed by one row per grid point, full precision.
std::string curve_csv(const ChannelTransform& curve);

/// Three side-by-side panels (cyan, magenta, yellow) on the unit square. Each
/// individual estimate is drawn as a thin grey line, the aggregate curve on top
/// in its channel color, with the identity dashed for reference.
std::string curves_svg(const TransformSet& aggregate, std::span<const TransformSet> estimates = {});

}  // namespace mhm
