#pragma once

// Transform distances, leave-one-out cross-validation and per-pixel
// perceptual distances.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mhm/colorspace.hpp"
#include "mhm/histogram.hpp"
#include "mhm/image.hpp"
#include "mhm/transfer.hpp"

namespace mhm {

/// Scale applied to transform distances when they are reported.
inline constexpr double kTransformDistanceReportScale = 100.0;

enum class Weighting { Uniform, Weighted };

const char* to_string(Weighting w);

using DensityTriple = std::array<DensityProfile, 3>;

/// Sum over dye channels of the squared L2 distance between two curves on
/// [0,1]. Values are unscaled; multiply by `report_scale` for display.
struct TransformDistance {
  std::array<double, 3> channel{};
  double total = 0.0;
  Weighting weighting = Weighting::Uniform;
  double report_scale = kTransformDistanceReportScale;

  double reported() const noexcept { return total * report_scale; }
};

/// Integral of |f - g|^2 over [0,1] by the trapezoid rule on the finer of the
/// two grids. With `weights`, each node carries the density mass of its
/// trapezoid cell instead of the cell width, so a uniform density reproduces
/// the uniform value. Grids must be nested (one interval count divides the
/// other); otherwise MismatchError.
double channel_distance(const ChannelTransform& f, const ChannelTransform& g,
                        const DensityProfile* weights = nullptr);

TransformDistance transform_distance(const TransformSet& f, const TransformSet& g);
TransformDistance transform_distance(const TransformSet& f, const TransformSet& g,
                                     const DensityTriple& weights);

/// Mean and standard error (sample standard deviation / sqrt(N)). The
/// standard error of a single value is reported as 0.
struct Summary {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

/// Which image of a pair supplies the density for the weighted metric.
enum class DensitySource { Damaged, Reference };

/// Everything leave-one-out needs from one training pair.
struct PairSample {
  std::string id;
  TransformSet estimate;
  DensityTriple density;
};

PairSample make_pair_sample(std::string id, const ImageBuffer& damaged,
                            const ImageBuffer& reference, const EstimateOptions& options = {},
                            std::size_t density_bins = kDefaultDensityBins,
                            DensitySource source = DensitySource::Damaged,
                            std::vector<std::string>* warnings = nullptr);

struct LooImageResult {
  std::string id;
  TransformDistance identity_uniform;
  TransformDistance loo_uniform;
  TransformDistance identity_weighted;
  TransformDistance loo_weighted;
};

struct EvalReport {
  std::vector<LooImageResult> images;  // sorted by id
  Summary identity_uniform;
  Summary loo_uniform;
  Summary identity_weighted;
  Summary loo_weighted;
  std::size_t loo_wins_uniform = 0;   // images where LOO error < identity error
  std::size_t loo_wins_weighted = 0;
};

/// For each pair i, compares its own estimate against the median of all other
/// estimates and against the identity, in both weightings. Samples are
/// processed in id order, so the report does not depend on input order.
/// Throws InvalidArgument for fewer than 2 samples or duplicate ids.
EvalReport loo_cv(std::span<const PairSample> samples, std::size_t workers = 1);

/// Per-pixel Euclidean distances between two equally sized images, averaged
/// over pixels, indexed like kAllPerceptualSpaces. Throws MismatchError on a
/// size mismatch and EmptyImageError on empty input.
std::array<double, 4> pixel_distances(const ImageBuffer& a, const ImageBuffer& b);

double pixel_distance(const ImageBuffer& a, const ImageBuffer& b, PerceptualSpace space);

struct PixelDistanceRow {
  std::string id;
  std::array<double, 4> identity{};   // original vs reference edit
  std::array<double, 4> corrected{};  // corrected vs reference edit
};

struct PixelDistanceReport {
  std::vector<PixelDistanceRow> rows;
  std::array<Summary, 4> identity{};
  std::array<Summary, 4> corrected{};
  std::array<std::size_t, 4> corrected_wins{};  // rows where corrected is closer
};

PixelDistanceRow comparison_row(std::string id, const ImageBuffer& reference_edit,
                                const ImageBuffer& original, const ImageBuffer& corrected);

PixelDistanceReport summarize_comparison(std::vector<PixelDistanceRow> rows);

/// Throws MismatchError if the lists differ in length. Row ids are the list
/// positions unless `ids` is given.
PixelDistanceReport comparison_report(std::span<const ImageBuffer> reference_edits,
                                      std::span<const ImageBuffer> originals,
                                      std::span<const ImageBuffer> corrected,
                                      std::span<const std::string> ids = {});

}  // namespace mhm
