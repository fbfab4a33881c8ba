#include "mhm/colorspace.hpp"

#include <cmath>

namespace mhm {
namespace {

// IEC 61966-2-1 linear sRGB -> XYZ, D65.
constexpr double kSrgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// Inverse of kSrgbToXyz.
constexpr double kXyzToSrgb[3][3] = {
    {3.2404542, -1.5371385, -0.4985314},
    {-0.9692660, 1.8760108, 0.0415560},
    {0.0556434, -0.2040259, 1.0572252},
};

constexpr double kDelta = 6.0 / 29.0;

double lab_f(double t) {
  if (t > kDelta * kDelta * kDelta) return std::cbrt(t);
  return t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inverse(double f) {
  if (f > kDelta) return f * f * f;
  return 3.0 * kDelta * kDelta * (f - 4.0 / 29.0);
}

double lightness(double y_over_yn) { return 116.0 * lab_f(y_over_yn) - 16.0; }

}  // namespace

const char* to_string(PerceptualSpace space) {
  switch (space) {
    case PerceptualSpace::Cieluv: return "CIELUV";
    case PerceptualSpace::Uv: return "UV";
    case PerceptualSpace::Cielab: return "CIELAB";
    case PerceptualSpace::Ab: return "AB";
  }
  return "?";
}

double srgb_to_linear(double encoded) {
  if (encoded <= 0.04045) return encoded / 12.92;
  return std::pow((encoded + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double linear) {
  if (linear <= 0.0031308) return linear * 12.92;
  return 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

XyzColor d65_white() {
  return {kSrgbToXyz[0][0] + kSrgbToXyz[0][1] + kSrgbToXyz[0][2],
          kSrgbToXyz[1][0] + kSrgbToXyz[1][1] + kSrgbToXyz[1][2],
          kSrgbToXyz[2][0] + kSrgbToXyz[2][1] + kSrgbToXyz[2][2]};
}

XyzColor rgb_to_xyz(const RgbTriple& p) {
  const double r = srgb_to_linear(p.r);
  const double g = srgb_to_linear(p.g);
  const double b = srgb_to_linear(p.b);
  return {kSrgbToXyz[0][0] * r + kSrgbToXyz[0][1] * g + kSrgbToXyz[0][2] * b,
          kSrgbToXyz[1][0] * r + kSrgbToXyz[1][1] * g + kSrgbToXyz[1][2] * b,
          kSrgbToXyz[2][0] * r + kSrgbToXyz[2][1] * g + kSrgbToXyz[2][2] * b};
}

LabColor xyz_to_lab(const XyzColor& xyz) {
  const XyzColor white = d65_white();
  const double fx = lab_f(xyz.x / white.x);
  const double fy = lab_f(xyz.y / white.y);
  const double fz = lab_f(xyz.z / white.z);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LuvColor xyz_to_luv(const XyzColor& xyz) {
  const XyzColor white = d65_white();
  const double L = lightness(xyz.y / white.y);
  const double denom = xyz.x + 15.0 * xyz.y + 3.0 * xyz.z;
  // Black has undefined chromaticity; u and v vanish with L anyway.
  if (denom <= 0.0) return {L, 0.0, 0.0};
  const double white_denom = white.x + 15.0 * white.y + 3.0 * white.z;
  const double un = 4.0 * white.x / white_denom;
  const double vn = 9.0 * white.y / white_denom;
  const double up = 4.0 * xyz.x / denom;
  const double vp = 9.0 * xyz.y / denom;
  return {L, 13.0 * L * (up - un), 13.0 * L * (vp - vn)};
}

XyzColor lab_to_xyz(const LabColor& lab) {
  const XyzColor white = d65_white();
  const double fy = (lab.L + 16.0) / 116.0;
  const double fx = fy + lab.a / 500.0;
  const double fz = fy - lab.b / 200.0;
  return {white.x * lab_f_inverse(fx), white.y * lab_f_inverse(fy), white.z * lab_f_inverse(fz)};
}

RgbTriple xyz_to_rgb(const XyzColor& xyz) {
  // The published inverse is rounded to 7 digits; iterative refinement against
  // the forward matrix makes rgb -> xyz -> rgb round-trip to double precision.
  auto solve = [](const XyzColor& v) {
    return std::array<double, 3>{
        kXyzToSrgb[0][0] * v.x + kXyzToSrgb[0][1] * v.y + kXyzToSrgb[0][2] * v.z,
        kXyzToSrgb[1][0] * v.x + kXyzToSrgb[1][1] * v.y + kXyzToSrgb[1][2] * v.z,
        kXyzToSrgb[2][0] * v.x + kXyzToSrgb[2][1] * v.y + kXyzToSrgb[2][2] * v.z};
  };
  std::array<double, 3> lin = solve(xyz);
  for (int iter = 0; iter < 3; ++iter) {
    const XyzColor back{
        kSrgbToXyz[0][0] * lin[0] + kSrgbToXyz[0][1] * lin[1] + kSrgbToXyz[0][2] * lin[2],
        kSrgbToXyz[1][0] * lin[0] + kSrgbToXyz[1][1] * lin[1] + kSrgbToXyz[1][2] * lin[2],
        kSrgbToXyz[2][0] * lin[0] + kSrgbToXyz[2][1] * lin[1] + kSrgbToXyz[2][2] * lin[2]};
    const std::array<double, 3> step =
        solve({xyz.x - back.x, xyz.y - back.y, xyz.z - back.z});
    for (int i = 0; i < 3; ++i) lin[i] += step[i];
  }
  return {linear_to_srgb(lin[0]), linear_to_srgb(lin[1]), linear_to_srgb(lin[2])};
}

LabColor rgb_to_lab(const RgbTriple& p) { return xyz_to_lab(rgb_to_xyz(p)); }

RgbTriple lab_to_rgb(const LabColor& lab) { return xyz_to_rgb(lab_to_xyz(lab)); }

LuvColor rgb_to_luv(const RgbTriple& p) { return xyz_to_luv(rgb_to_xyz(p)); }

std::array<double, 3> perceptual_coordinates(const RgbTriple& p, PerceptualSpace space) {
  switch (space) {
    case PerceptualSpace::Cieluv: {
      const LuvColor c = rgb_to_luv(p);
      return {c.L, c.u, c.v};
    }
    case PerceptualSpace::Uv: {
      const LuvColor c = rgb_to_luv(p);
      return {c.u, c.v, 0.0};
    }
    case PerceptualSpace::Cielab: {
      const LabColor c = rgb_to_lab(p);
      return {c.L, c.a, c.b};
    }
    case PerceptualSpace::Ab: {
      const LabColor c = rgb_to_lab(p);
      return {c.a, c.b, 0.0};
    }
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace mhm
