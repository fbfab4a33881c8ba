#include "mhm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "mhm/error.hpp"
#include "mhm/parallel.hpp"

namespace mhm {
namespace {

// Value of `curve` at node k of a grid with `fine` intervals, where the curve's
// own interval count divides `fine`.
double value_at(const ChannelTransform& curve, std::size_t k, std::size_t fine) {
  const std::size_t ratio = fine / curve.intervals();
  if (k % ratio == 0) return curve.outputs()[k / ratio];
  return curve.evaluate_clamped(static_cast<double>(k) / static_cast<double>(fine));
}

}  // namespace

const char* to_string(Weighting w) {
  return w == Weighting::Uniform ? "uniform" : "weighted";
}

double channel_distance(const ChannelTransform& f, const ChannelTransform& g,
                        const DensityProfile* weights) {
  const std::size_t gf = f.intervals();
  const std::size_t gg = g.intervals();
  const std::size_t fine = std::max(gf, gg);
  if (fine % std::min(gf, gg) != 0) {
    throw MismatchError("transform grids with " + std::to_string(gf) + " and " +
                        std::to_string(gg) + " intervals are not nested");
  }

  const double h = 1.0 / static_cast<double>(fine);
  std::vector<double> node_weight(fine + 1);
  if (weights == nullptr) {
    std::fill(node_weight.begin(), node_weight.end(), h);
    node_weight.front() = node_weight.back() = h / 2;
  } else {
    double total = 0.0;
    for (std::size_t k = 0; k <= fine; ++k) {
      const double x = static_cast<double>(k) * h;
      node_weight[k] = weights->mass_between(x - h / 2, x + h / 2);
      total += node_weight[k];
    }
    if (total <= 0.0) throw InvalidArgument("weighting density has no mass");
    for (double& w : node_weight) w /= total;
  }

  double sum = 0.0;
  for (std::size_t k = 0; k <= fine; ++k) {
    const double diff = value_at(f, k, fine) - value_at(g, k, fine);
    sum += node_weight[k] * diff * diff;
  }
  return sum;
}

namespace {

TransformDistance distance_impl(const TransformSet& f, const TransformSet& g,
                                const DensityTriple* weights) {
  TransformDistance d;
  d.weighting = weights == nullptr ? Weighting::Uniform : Weighting::Weighted;
  for (Channel c : kAllChannels) {
    const DensityProfile* w = weights == nullptr ? nullptr : &(*weights)[index_of(c)];
    d.channel[index_of(c)] = channel_distance(f[c], g[c], w);
  }
  d.total = d.channel[0] + d.channel[1] + d.channel[2];
  return d;
}

}  // namespace

TransformDistance transform_distance(const TransformSet& f, const TransformSet& g) {
  return distance_impl(f, g, nullptr);
}

TransformDistance transform_distance(const TransformSet& f, const TransformSet& g,
                                     const DensityTriple& weights) {
  return distance_impl(f, g, &weights);
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return s;
}

PairSample make_pair_sample(std::string id, const ImageBuffer& damaged,
                            const ImageBuffer& reference, const EstimateOptions& options,
                            std::size_t density_bins, DensitySource source,
                            std::vector<std::string>* warnings) {
  const ImageBuffer& weight_image = source == DensitySource::Damaged ? damaged : reference;
  TransformSet estimate = estimate_pair(damaged, reference, options, warnings);
  estimate.metadata()["source"] = id;
  return {std::move(id), std::move(estimate),
          DensityTriple{density(weight_image, Channel::Cyan, density_bins),
                        density(weight_image, Channel::Magenta, density_bins),
                        density(weight_image, Channel::Yellow, density_bins)}};
}

EvalReport loo_cv(std::span<const PairSample> samples, std::size_t workers) {
  if (samples.size() < 2) throw InvalidArgument("leave-one-out needs at least 2 pairs");

  std::vector<const PairSample*> ordered;
  for (const PairSample& s : samples) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(),
            [](const PairSample* a, const PairSample* b) { return a->id < b->id; });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i]->id == ordered[i - 1]->id) {
      throw InvalidArgument("duplicate pair id '" + ordered[i]->id + "'");
    }
  }

  const std::size_t n = ordered.size();
  const TransformSet identity = TransformSet::identity(ordered[0]->estimate.intervals());
  EvalReport report;
  report.images.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    std::vector<TransformSet> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(ordered[j]->estimate);
    }
    const TransformSet held_out = aggregate_median(others);
    const PairSample& s = *ordered[i];
    LooImageResult& r = report.images[i];
    r.id = s.id;
    r.identity_uniform = transform_distance(s.estimate, identity);
    r.loo_uniform = transform_distance(s.estimate, held_out);
    r.identity_weighted = transform_distance(s.estimate, identity, s.density);
    r.loo_weighted = transform_distance(s.estimate, held_out, s.density);
  });

  auto column = [&](TransformDistance LooImageResult::*field) {
    std::vector<double> v;
    v.reserve(n);
    for (const LooImageResult& r : report.images) v.push_back((r.*field).total);
    return summarize(v);
  };
  report.identity_uniform = column(&LooImageResult::identity_uniform);
  report.loo_uniform = column(&LooImageResult::loo_uniform);
  report.identity_weighted = column(&LooImageResult::identity_weighted);
  report.loo_weighted = column(&LooImageResult::loo_weighted);
  for (const LooImageResult& r : report.images) {
    if (r.loo_uniform.total < r.identity_uniform.total) ++report.loo_wins_uniform;
    if (r.loo_weighted.total < r.identity_weighted.total) ++report.loo_wins_weighted;
  }
  return report;
}

std::array<double, 4> pixel_distances(const ImageBuffer& a, const ImageBuffer& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw MismatchError("images differ in size: " + std::to_string(a.width()) + "x" +
                        std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                        std::to_string(b.height()));
  }
  if (a.empty()) throw EmptyImageError();

  std::array<double, 4> sum{};
  for (std::size_t i = 0; i < a.pixel_count(); ++i) {
    const XyzColor xyz_a = rgb_to_xyz(a.pixel(i));
    const XyzColor xyz_b = rgb_to_xyz(b.pixel(i));
    const LuvColor luv_a = xyz_to_luv(xyz_a);
    const LuvColor luv_b = xyz_to_luv(xyz_b);
    const LabColor lab_a = xyz_to_lab(xyz_a);
    const LabColor lab_b = xyz_to_lab(xyz_b);
    const double dl_uv = luv_a.L - luv_b.L;
    const double du = luv_a.u - luv_b.u;
    const double dv = luv_a.v - luv_b.v;
    const double dl_ab = lab_a.L - lab_b.L;
    const double da = lab_a.a - lab_b.a;
    const double db = lab_a.b - lab_b.b;
    sum[0] += std::sqrt(dl_uv * dl_uv + du * du + dv * dv);
    sum[1] += std::sqrt(du * du + dv * dv);
    sum[2] += std::sqrt(dl_ab * dl_ab + da * da + db * db);
    sum[3] += std::sqrt(da * da + db * db);
  }
  const double n = static_cast<double>(a.pixel_count());
  for (double& s : sum) s /= n;
  return sum;
}

double pixel_distance(const ImageBuffer& a, const ImageBuffer& b, PerceptualSpace space) {
  return pixel_distances(a, b)[static_cast<std::size_t>(space)];
}

PixelDistanceRow comparison_row(std::string id, const ImageBuffer& reference_edit,
                                const ImageBuffer& original, const ImageBuffer& corrected) {
  return {std::move(id), pixel_distances(original, reference_edit),
          pixel_distances(corrected, reference_edit)};
}

PixelDistanceReport summarize_comparison(std::vector<PixelDistanceRow> rows) {
  PixelDistanceReport report;
  report.rows = std::move(rows);
  for (std::size_t s = 0; s < 4; ++s) {
    std::vector<double> identity;
    std::vector<double> corrected;
    for (const PixelDistanceRow& r : report.rows) {
      identity.push_back(r.identity[s]);
      corrected.push_back(r.corrected[s]);
      if (r.corrected[s] < r.identity[s]) ++report.corrected_wins[s];
    }
    report.identity[s] = summarize(identity);
    report.corrected[s] = summarize(corrected);
  }
  return report;
}

PixelDistanceReport comparison_report(std::span<const ImageBuffer> reference_edits,
                                      std::span<const ImageBuffer> originals,
                                      std::span<const ImageBuffer> corrected,
                                      std::span<const std::string> ids) {
  if (reference_edits.size() != originals.size() || originals.size() != corrected.size() ||
      (!ids.empty() && ids.size() != originals.size())) {
    throw MismatchError("comparison lists are not aligned");
  }
  std::vector<PixelDistanceRow> rows;
  for (std::size_t i = 0; i < originals.size(); ++i) {
    rows.push_back(comparison_row(ids.empty() ? std::to_string(i) : ids[i], reference_edits[i],
                                  originals[i], corrected[i]));
  }
  return summarize_comparison(std::move(rows));
}

}  // namespace mhm
