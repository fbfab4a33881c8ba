#pragma once

#include <stdexcept>
#include <string>

namespace mhm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An image without pixels was handed to a statistic that needs data.
class EmptyImageError : public Error {
 public:
  EmptyImageError() : Error("image has no pixel data") {}
};

/// Arguments outside an operation's domain (bad sizes, out-of-range inputs).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two objects that must agree (grids, image dimensions, list lengths) do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Decoding or encoding an image file failed.
class ImageIoError : public Error {
 public:
  ImageIoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace mhm
