#pragma once

// Batch orchestration behind the command line tool: pairing training images,
// learning, restoring directories of images, evaluation and synthetic data.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mhm/evaluation.hpp"
#include "mhm/histogram.hpp"
#include "mhm/report.hpp"
#include "mhm/synthetic.hpp"
#include "mhm/transfer.hpp"

namespace mhm {

namespace fs = std::filesystem;

struct PairEntry {
  std::string id;
  fs::path damaged;
  fs::path reference;
};

struct PairManifest {
  std::vector<PairEntry> pairs;     // sorted by id
  std::vector<std::string> warnings;  // unmatched files and similar
};

/// Pairs supported image files by stem. Throws InvalidArgument if a directory
/// is unreadable or nothing matches.
PairManifest ingest_directories(const fs::path& damaged_dir, const fs::path& reference_dir);

/// Reads {"pairs": [{"id": ..., "damaged": ..., "reference": ...}, ...]}.
/// Relative paths resolve against the manifest's directory; a missing id
/// defaults to the damaged file's stem. Throws InvalidArgument on duplicate
/// ids, missing files or an empty list.
PairManifest load_manifest(const fs::path& manifest_path);

enum class OverwritePolicy { Overwrite, Skip, Fail };

struct JobConfig {
  std::size_t quantiles = kDefaultQuantileCount;  // K
  std::size_t intervals = kDefaultGridIntervals;  // G
  std::size_t bins = kDefaultDensityBins;         // B
  std::size_t workers = 1;
  fs::path output_dir = ".";
  OverwritePolicy overwrite = OverwritePolicy::Overwrite;
  ReportFormat report_format = ReportFormat::Both;
  DensitySource density_source = DensitySource::Damaged;
  std::uint64_t seed = 0;
  std::string created;  // timestamp recorded in learned documents

  EstimateOptions estimate_options() const { return {quantiles, intervals}; }

  /// Throws InvalidArgument unless K >= 2, G >= 2, B >= 1, workers >= 1.
  void validate() const;
};

struct FileFailure {
  std::string path;
  std::string message;
};

struct LearnResult {
  TransformSet median;
  std::vector<PairSample> samples;  // successful pairs, sorted by id
  std::vector<FileFailure> failures;
  std::vector<std::string> warnings;
};

/// Estimates every pair (in parallel) and aggregates by pointwise median.
/// Pairs that fail to load or estimate are listed in `failures`; throws Error
/// if fewer than 2 pairs succeed.
LearnResult learn(const PairManifest& manifest, const JobConfig& config);

/// Writes transform.json, estimates/<id>.json, curves/<channel>.csv and
/// curves/curves.svg under `dir`.
void write_learn_outputs(const LearnResult& result, const fs::path& dir);

/// Writes one CSV per channel and the SVG for `median`, drawing `estimates`
/// as individual curves.
void export_curves(const TransformSet& median, std::span<const TransformSet> estimates,
                   const fs::path& dir);

struct BatchResult {
  std::size_t written = 0;
  std::size_t skipped = 0;
  std::vector<FileFailure> failures;
};

/// Supported image files directly inside `dir`, sorted by name.
std::vector<fs::path> list_images(const fs::path& dir);

/// Restores each input into config.output_dir under the same file name.
BatchResult apply_batch(std::span<const fs::path> inputs, const TransformSet& transforms,
                        const JobConfig& config);

/// Loads each pair, estimates it and records the weighting densities, then
/// runs leave-one-out. Pairs that fail to load are reported in `failures`.
struct LooRun {
  EvalReport report;
  std::vector<FileFailure> failures;
  std::vector<std::string> warnings;
};
LooRun evaluate_loo(const PairManifest& manifest, const JobConfig& config);

/// Originals are matched with reference edits by stem; each original is
/// restored with `transforms` and both versions are compared to the edit.
struct CompareRun {
  PixelDistanceReport report;
  std::vector<FileFailure> failures;
  std::vector<std::string> warnings;
};
CompareRun evaluate_compare(const fs::path& originals_dir, const fs::path& edited_dir,
                            const TransformSet& transforms, const JobConfig& config);

struct SynthOptions {
  CurveSpec curve;
  double jitter = 0.0;          // per-image log-exponent jitter, 0 = shared curve
  std::size_t generate = 0;     // random clean images to create first
  std::size_t width = 128;
  std::size_t height = 96;
  int bit_depth = 8;
};

struct SynthResult {
  std::size_t degraded = 0;
  std::vector<FileFailure> failures;
};

/// Degrades every image in `clean_dir` into config.output_dir (same names) and
/// writes ground_truth.json (plus ground_truth/<stem>.json when jittered). With
/// `generate > 0`, first writes that many random clean PNGs into `clean_dir`.
SynthResult synthesize(const fs::path& clean_dir, const SynthOptions& options,
                       const JobConfig& config);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const fs::path& path, const std::string& text);

}  // namespace mhm
