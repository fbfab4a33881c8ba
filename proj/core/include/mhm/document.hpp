#pragma once

// Versioned JSON document for a TransformSet:
//
//   {
//     "format": "mhm-transform",
//     "format_version": 1,
//     "grid_points": 256,
//     "channels": { "cyan": [...], "magenta": [...], "yellow": [...] },
//     "metadata": { "source": "median-of-22", "created": "...", ... }
//   }
//
// Numbers are written in shortest round-trip form, so a document read back
// reproduces every curve value bit for bit.

#include <filesystem>
#include <string>
#include <string_view>

#include "mhm/error.hpp"
#include "mhm/transfer.hpp"

namespace mhm {

inline constexpr int kTransformFormatVersion = 1;
inline constexpr std::string_view kTransformFormatName = "mhm-transform";

class DocumentError : public Error {
 public:
  enum class Kind {
    Malformed,           // not parseable as JSON
    Schema,              // missing or wrongly typed fields
    UnsupportedVersion,  // format_version this build does not read
    InvariantViolation,  // curve is not a valid monotone transform
  };

  DocumentError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::string serialize(const TransformSet& transforms);

/// Throws DocumentError.
TransformSet deserialize(std::string_view document);

void save_transform(const std::filesystem::path& path, const TransformSet& transforms);

/// Throws DocumentError, or Error if the file cannot be read.
TransformSet load_transform(const std::filesystem::path& path);

}  // namespace mhm
