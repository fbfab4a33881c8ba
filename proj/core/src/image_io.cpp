#include "mhm/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "mhm/error.hpp"

namespace mhm {
namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

bool is_jpeg(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".jpg" || ext == ".jpeg";
}

template <typename T>
void unpack(const cv::Mat& mat, ImageBuffer& out) {
  const int channels = mat.channels();
  const double scale = out.max_code();
  auto rgb = out.rgb();
  auto alpha = out.alpha();
  for (int y = 0; y < mat.rows; ++y) {
    const T* row = mat.ptr<T>(y);
    for (int x = 0; x < mat.cols; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * out.width() + static_cast<std::size_t>(x);
      const T* px = row + static_cast<std::ptrdiff_t>(x) * channels;
      if (channels <= 2) {
        const double v = px[0] / scale;
        rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = v;
        if (channels == 2) alpha[i] = px[1] / scale;
      } else {
        // OpenCV orders samples BGR(A).
        rgb[3 * i] = px[2] / scale;
        rgb[3 * i + 1] = px[1] / scale;
        rgb[3 * i + 2] = px[0] / scale;
        if (channels == 4) alpha[i] = px[3] / scale;
      }
    }
  }
}

template <typename T>
cv::Mat pack(const ImageBuffer& image, double max_code, int type, bool keep_alpha) {
  const int channels = keep_alpha && image.has_alpha() ? 4 : 3;
  cv::Mat mat(static_cast<int>(image.height()), static_cast<int>(image.width()),
              CV_MAKETYPE(type, channels));
  auto code = [max_code](double v) {
    return static_cast<T>(std::floor(std::clamp(v, 0.0, 1.0) * max_code + 0.5));
  };
  const auto rgb = image.rgb();
  const auto alpha = image.alpha();
  for (int y = 0; y < mat.rows; ++y) {
    T* row = mat.ptr<T>(y);
    for (int x = 0; x < mat.cols; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * image.width() + static_cast<std::size_t>(x);
      T* px = row + static_cast<std::ptrdiff_t>(x) * channels;
      px[0] = code(rgb[3 * i + 2]);
      px[1] = code(rgb[3 * i + 1]);
      px[2] = code(rgb[3 * i]);
      if (channels == 4) px[3] = code(alpha[i]);
    }
  }
  return mat;
}

}  // namespace

bool is_supported_image(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".tif" || ext == ".tiff";
}

ImageBuffer read_image(const std::filesystem::path& path) {
  if (!is_supported_image(path)) throw ImageIoError(path.string(), "unsupported image format");
  cv::Mat mat;
  try {
    mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  } catch (const cv::Exception& e) {
    throw ImageIoError(path.string(), e.what());
  }
  if (mat.empty()) throw ImageIoError(path.string(), "could not decode image");

  int depth = 0;
  switch (mat.depth()) {
    case CV_8U: depth = 8; break;
    case CV_16U: depth = 16; break;
    default: throw ImageIoError(path.string(), "only 8- and 16-bit unsigned images are supported");
  }
  const int channels = mat.channels();
  if (channels < 1 || channels > 4) {
    throw ImageIoError(path.string(), "unsupported channel count " + std::to_string(channels));
  }
  const bool alpha = channels == 2 || channels == 4;
  ImageBuffer out(static_cast<std::size_t>(mat.cols), static_cast<std::size_t>(mat.rows), depth,
                  alpha);
  if (depth == 8) {
    unpack<std::uint8_t>(mat, out);
  } else {
    unpack<std::uint16_t>(mat, out);
  }
  return out;
}

void write_image(const std::filesystem::path& path, const ImageBuffer& image) {
  if (!is_supported_image(path)) throw ImageIoError(path.string(), "unsupported image format");
  if (image.empty()) throw ImageIoError(path.string(), "refusing to write an empty image");

  cv::Mat mat;
  std::vector<int> params;
  if (is_jpeg(path)) {
    // JPEG has no alpha plane.
    mat = pack<std::uint8_t>(image, 255.0, CV_8U, false);
    params = {cv::IMWRITE_JPEG_QUALITY, kJpegQuality};
  } else if (image.bit_depth() == 16) {
    mat = pack<std::uint16_t>(image, 65535.0, CV_16U, true);
  } else {
    mat = pack<std::uint8_t>(image, 255.0, CV_8U, true);
  }

  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), mat, params);
  } catch (const cv::Exception& e) {
    throw ImageIoError(path.string(), e.what());
  }
  if (!ok) throw ImageIoError(path.string(), "could not encode image");
}

}  // namespace mhm
