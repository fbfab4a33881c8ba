#pragma once

// Conversions between gamma-encoded sRGB intensities, the subtractive CMY
// dye representation, CIE XYZ (D65), CIELAB and CIELUV.

#include <array>

namespace mhm {

struct RgbTriple {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  friend bool operator==(const RgbTriple&, const RgbTriple&) = default;
};

struct CmyTriple {
  double c = 0.0;
  double m = 0.0;
  double y = 0.0;

  friend bool operator==(const CmyTriple&, const CmyTriple&) = default;
};

struct XyzColor {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct LabColor {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct LuvColor {
  double L = 0.0;
  double u = 0.0;
  double v = 0.0;
};

/// Spaces used for per-pixel perceptual distances. `Uv` and `Ab` are the
/// chromatic planes of CIELUV and CIELAB with lightness dropped.
enum class PerceptualSpace { Cieluv, Uv, Cielab, Ab };

inline constexpr std::array<PerceptualSpace, 4> kAllPerceptualSpaces = {
    PerceptualSpace::Cieluv, PerceptualSpace::Uv, PerceptualSpace::Cielab,
    PerceptualSpace::Ab};

const char* to_string(PerceptualSpace space);

constexpr CmyTriple rgb_to_cmy(const RgbTriple& p) {
  return {1.0 - p.r, 1.0 - p.g, 1.0 - p.b};
}

constexpr RgbTriple cmy_to_rgb(const CmyTriple& p) {
  return {1.0 - p.c, 1.0 - p.m, 1.0 - p.y};
}

/// sRGB electro-optical transfer function (encoded -> linear light).
double srgb_to_linear(double encoded);

/// Inverse of srgb_to_linear. Both extend linearly below zero.
double linear_to_srgb(double linear);

/// D65 reference white in XYZ, equal to the sRGB matrix applied to (1,1,1).
XyzColor d65_white();

XyzColor rgb_to_xyz(const RgbTriple& p);
LabColor xyz_to_lab(const XyzColor& xyz);
LuvColor xyz_to_luv(const XyzColor& xyz);

XyzColor lab_to_xyz(const LabColor& lab);
RgbTriple xyz_to_rgb(const XyzColor& xyz);

LabColor rgb_to_lab(const RgbTriple& p);
/// Not clamped: colors outside the sRGB gamut come back with components
/// outside [0,1].
RgbTriple lab_to_rgb(const LabColor& lab);
LuvColor rgb_to_luv(const RgbTriple& p);

/// Coordinates of `p` in `space`. For the 2D spaces the third component is 0,
/// so Euclidean distance between two results is the distance in that space.
std::array<double, 3> perceptual_coordinates(const RgbTriple& p, PerceptualSpace space);

}  // namespace mhm
