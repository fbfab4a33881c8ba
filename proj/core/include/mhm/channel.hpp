#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace mhm {

/// Subtractive dye channels. Cyan is the complement of red, magenta of
/// green, yellow of blue.
enum class Channel { Cyan = 0, Magenta = 1, Yellow = 2 };

inline constexpr std::array<Channel, 3> kAllChannels = {Channel::Cyan, Channel::Magenta,
                                                        Channel::Yellow};

constexpr std::size_t index_of(Channel c) { return static_cast<std::size_t>(c); }

constexpr std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::Cyan: return "cyan";
    case Channel::Magenta: return "magenta";
    case Channel::Yellow: return "yellow";
  }
  return "?";
}

}  // namespace mhm
