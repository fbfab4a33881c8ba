#pragma once

#include <filesystem>

#include "mhm/image.hpp"

namespace mhm {

/// JPEG quality used whenever a restored image is re-encoded as JPEG.
inline constexpr int kJpegQuality = 95;

/// Whether the extension names a format read_image/write_image handle
/// (PNG, JPEG, TIFF).
bool is_supported_image(const std::filesystem::path& path);

/// Decodes an 8- or 16-bit PNG, JPEG or TIFF. Grayscale files are expanded to
/// RGB. Throws ImageIoError.
ImageBuffer read_image(const std::filesystem::path& path);

/// Encodes `image` at its own bit depth in the format implied by the file
/// extension. JPEG output is always 8-bit. Throws ImageIoError.
void write_image(const std::filesystem::path& path, const ImageBuffer& image);

}  // namespace mhm
