#include "mhm/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "mhm/curves.hpp"
#include "mhm/document.hpp"
#include "mhm/error.hpp"
#include "mhm/image_io.hpp"
#include "mhm/parallel.hpp"

namespace mhm {
namespace {

using json = nlohmann::json;

std::map<std::string, fs::path> images_by_stem(const fs::path& dir,
                                               std::vector<std::string>& warnings) {
  std::map<std::string, fs::path> out;
  for (const fs::path& p : list_images(dir)) {
    const std::string stem = p.stem().string();
    if (!out.emplace(stem, p).second) {
      warnings.push_back("ignoring " + p.string() + ": another file in " + dir.string() +
                         " has stem '" + stem + "'");
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

}  // namespace

std::vector<fs::path> list_images(const fs::path& dir) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw InvalidArgument("cannot read directory " + dir.string() + ": " + ec.message());
  std::vector<fs::path> out;
  for (const fs::directory_entry& entry : it) {
    if (entry.is_regular_file() && is_supported_image(entry.path())) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

PairManifest ingest_directories(const fs::path& damaged_dir, const fs::path& reference_dir) {
  PairManifest manifest;
  const auto damaged = images_by_stem(damaged_dir, manifest.warnings);
  const auto reference = images_by_stem(reference_dir, manifest.warnings);
  for (const auto& [stem, path] : damaged) {
    const auto it = reference.find(stem);
    if (it == reference.end()) {
      manifest.warnings.push_back("no reference image for " + path.string());
      continue;
    }
    manifest.pairs.push_back({stem, path, it->second});
  }
  for (const auto& [stem, path] : reference) {
    if (!damaged.contains(stem)) manifest.warnings.push_back("no damaged image for " + path.string());
  }
  if (manifest.pairs.empty()) {
    throw InvalidArgument("no image pairs matched between " + damaged_dir.string() + " and " +
                          reference_dir.string());
  }
  return manifest;
}

PairManifest load_manifest(const fs::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw InvalidArgument("cannot open manifest " + manifest_path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("manifest " + manifest_path.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array()) {
    throw InvalidArgument("manifest must be an object with a 'pairs' array");
  }

  const fs::path base = manifest_path.parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
  };

  PairManifest manifest;
  std::set<std::string> ids;
  for (const json& entry : doc["pairs"]) {
    if (!entry.is_object() || !entry.contains("damaged") || !entry.contains("reference") ||
        !entry["damaged"].is_string() || !entry["reference"].is_string()) {
      throw InvalidArgument("manifest entries need string 'damaged' and 'reference' paths");
    }
    PairEntry pair;
    pair.damaged = resolve(entry["damaged"].get<std::string>());
    pair.reference = resolve(entry["reference"].get<std::string>());
    pair.id = entry.contains("id") && entry["id"].is_string() ? entry["id"].get<std::string>()
                                                               : pair.damaged.stem().string();
    if (!ids.insert(pair.id).second) throw InvalidArgument("duplicate pair id '" + pair.id + "'");
    for (const fs::path& p : {pair.damaged, pair.reference}) {
      if (!fs::exists(p)) throw InvalidArgument("manifest file does not exist: " + p.string());
    }
    manifest.pairs.push_back(std::move(pair));
  }
  if (manifest.pairs.empty()) throw InvalidArgument("manifest lists no pairs");
  std::sort(manifest.pairs.begin(), manifest.pairs.end(),
            [](const PairEntry& a, const PairEntry& b) { return a.id < b.id; });
  return manifest;
}

void JobConfig::validate() const {
  if (quantiles < 2) throw InvalidArgument("quantile count K must be at least 2");
  if (intervals < 2) throw InvalidArgument("grid size G must be at least 2");
  if (bins < 1) throw InvalidArgument("density bins B must be at least 1");
  if (workers < 1) throw InvalidArgument("worker count must be at least 1");
}

namespace {

struct SampleSlot {
  std::optional<PairSample> sample;
  std::optional<FileFailure> failure;
  std::vector<std::string> warnings;
};

std::vector<SampleSlot> load_samples(const PairManifest& manifest, const JobConfig& config) {
  std::vector<SampleSlot> slots(manifest.pairs.size());
  parallel_for(slots.size(), config.workers, [&](std::size_t i) {
    const PairEntry& pair = manifest.pairs[i];
    SampleSlot& slot = slots[i];
    try {
      const ImageBuffer damaged = read_image(pair.damaged);
      const ImageBuffer reference = read_image(pair.reference);
      std::vector<std::string> warnings;
      slot.sample = make_pair_sample(pair.id, damaged, reference, config.estimate_options(),
                                     config.bins, config.density_source, &warnings);
      for (const std::string& w : warnings) slot.warnings.push_back(pair.id + ": " + w);
    } catch (const ImageIoError& e) {
      slot.failure = FileFailure{e.path(), e.what()};
    } catch (const Error& e) {
      slot.failure = FileFailure{pair.id, e.what()};
    }
  });
  return slots;
}

}  // namespace

LearnResult learn(const PairManifest& manifest, const JobConfig& config) {
  config.validate();
  std::vector<SampleSlot> slots = load_samples(manifest, config);

  std::vector<PairSample> samples;
  std::vector<FileFailure> failures;
  std::vector<std::string> warnings = manifest.warnings;
  for (SampleSlot& slot : slots) {
    if (slot.sample) samples.push_back(std::move(*slot.sample));
    if (slot.failure) failures.push_back(std::move(*slot.failure));
    warnings.insert(warnings.end(), slot.warnings.begin(), slot.warnings.end());
  }
  if (samples.size() < 2) {
    std::string msg = "learning needs at least 2 usable pairs, got " + std::to_string(samples.size());
    for (const FileFailure& f : failures) msg += "\n  " + f.message;
    throw Error(msg);
  }
  std::sort(samples.begin(), samples.end(),
            [](const PairSample& a, const PairSample& b) { return a.id < b.id; });

  std::vector<TransformSet> estimates;
  std::vector<std::string> ids;
  for (const PairSample& s : samples) {
    estimates.push_back(s.estimate);
    ids.push_back(s.id);
  }
  TransformSet median = aggregate_median(estimates);
  auto& meta = median.metadata();
  meta["pairs"] = join(ids, ",");
  meta["quantiles"] = std::to_string(config.quantiles);
  meta["grid_intervals"] = std::to_string(config.intervals);
  if (!config.created.empty()) meta["created"] = config.created;
  return {std::move(median), std::move(samples), std::move(failures), std::move(warnings)};
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

void export_curves(const TransformSet& median, std::span<const TransformSet> estimates,
                   const fs::path& dir) {
  for (const ChannelTransform& curve : median.channels()) {
    write_text_file(dir / (std::string(to_string(curve.channel())) + ".csv"), curve_csv(curve));
  }
  write_text_file(dir / "curves.svg", curves_svg(median, estimates));
}

void write_learn_outputs(const LearnResult& result, const fs::path& dir) {
  fs::create_directories(dir);
  save_transform(dir / "transform.json", result.median);
  std::vector<TransformSet> estimates;
  for (const PairSample& s : result.samples) {
    write_text_file(dir / "estimates" / (s.id + ".json"), serialize(s.estimate));
    estimates.push_back(s.estimate);
  }
  export_curves(result.median, estimates, dir / "curves");
}

BatchResult apply_batch(std::span<const fs::path> inputs, const TransformSet& transforms,
                        const JobConfig& config) {
  config.validate();
  fs::create_directories(config.output_dir);
  const TransformLut lut8(transforms, 8);
  const TransformLut lut16(transforms, 16);

  enum class Outcome { Written, Skipped, Failed };
  std::vector<Outcome> outcomes(inputs.size(), Outcome::Failed);
  std::vector<std::string> messages(inputs.size());
  parallel_for(inputs.size(), config.workers, [&](std::size_t i) {
    const fs::path target = config.output_dir / inputs[i].filename();
    try {
      if (fs::exists(target)) {
        if (config.overwrite == OverwritePolicy::Skip) {
          outcomes[i] = Outcome::Skipped;
          return;
        }
        if (config.overwrite == OverwritePolicy::Fail) {
          messages[i] = target.string() + " already exists";
          return;
        }
        std::error_code ec;
        if (fs::equivalent(target, inputs[i], ec)) {
          messages[i] = "output would overwrite its own input " + inputs[i].string();
          return;
        }
      }
      const ImageBuffer image = read_image(inputs[i]);
      const TransformLut& lut = image.bit_depth() == 16 ? lut16 : lut8;
      write_image(target, lut.apply(image));
      outcomes[i] = Outcome::Written;
    } catch (const std::exception& e) {
      messages[i] = e.what();
    }
  });

  BatchResult result;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    switch (outcomes[i]) {
      case Outcome::Written: ++result.written; break;
      case Outcome::Skipped: ++result.skipped; break;
      case Outcome::Failed: result.failures.push_back({inputs[i].string(), messages[i]}); break;
    }
  }
  return result;
}

LooRun evaluate_loo(const PairManifest& manifest, const JobConfig& config) {
  config.validate();
  std::vector<SampleSlot> slots = load_samples(manifest, config);
  std::vector<PairSample> samples;
  LooRun run;
  run.warnings = manifest.warnings;
  for (SampleSlot& slot : slots) {
    if (slot.sample) samples.push_back(std::move(*slot.sample));
    if (slot.failure) run.failures.push_back(std::move(*slot.failure));
    run.warnings.insert(run.warnings.end(), slot.warnings.begin(), slot.warnings.end());
  }
  run.report = loo_cv(samples, config.workers);
  return run;
}

CompareRun evaluate_compare(const fs::path& originals_dir, const fs::path& edited_dir,
                            const TransformSet& transforms, const JobConfig& config) {
  config.validate();
  const PairManifest triples = ingest_directories(originals_dir, edited_dir);
  const TransformLut lut8(transforms, 8);
  const TransformLut lut16(transforms, 16);

  std::vector<std::optional<PixelDistanceRow>> rows(triples.pairs.size());
  std::vector<std::optional<FileFailure>> failures(triples.pairs.size());
  parallel_for(rows.size(), config.workers, [&](std::size_t i) {
    const PairEntry& t = triples.pairs[i];
    try {
      const ImageBuffer original = read_image(t.damaged);
      const ImageBuffer edit = read_image(t.reference);
      const ImageBuffer corrected = (original.bit_depth() == 16 ? lut16 : lut8).apply(original);
      rows[i] = comparison_row(t.id, edit, original, corrected);
    } catch (const ImageIoError& e) {
      failures[i] = FileFailure{e.path(), e.what()};
    } catch (const Error& e) {
      failures[i] = FileFailure{t.id, e.what()};
    }
  });

  CompareRun run;
  run.warnings = triples.warnings;
  std::vector<PixelDistanceRow> ok;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i]) ok.push_back(std::move(*rows[i]));
    if (failures[i]) run.failures.push_back(std::move(*failures[i]));
  }
  if (ok.empty()) throw Error("no comparison triple could be evaluated");
  run.report = summarize_comparison(std::move(ok));
  return run;
}

SynthResult synthesize(const fs::path& clean_dir, const SynthOptions& options,
                       const JobConfig& config) {
  config.validate();
  options.curve.validate();
  if (options.jitter < 0.0) throw InvalidArgument("jitter must be non-negative");

  if (options.generate > 0) {
    fs::create_directories(clean_dir);
    parallel_for(options.generate, config.workers, [&](std::size_t i) {
      char name[32];
      std::snprintf(name, sizeof name, "synth_%04zu.png", i);
      const std::uint64_t seed = config.seed * 1000003ULL + i;
      write_image(clean_dir / name,
                  random_image(options.width, options.height, seed, options.bit_depth));
    });
  }

  const std::vector<fs::path> inputs = list_images(clean_dir);
  fs::create_directories(config.output_dir);
  if (fs::equivalent(clean_dir, config.output_dir)) {
    throw InvalidArgument("synthetic output directory must differ from the clean directory");
  }
  save_transform(config.output_dir / "ground_truth.json",
                 ground_truth(options.curve, config.intervals));

  std::vector<std::string> errors(inputs.size());
  parallel_for(inputs.size(), config.workers, [&](std::size_t i) {
    try {
      CurveSpec spec = options.curve;
      if (options.jitter > 0.0) {
        spec = jittered(options.curve, options.jitter, config.seed * 7919ULL + i + 1);
        const fs::path doc = config.output_dir / "ground_truth" /
                             (inputs[i].stem().string() + ".json");
        write_text_file(doc, serialize(ground_truth(spec, config.intervals)));
      }
      write_image(config.output_dir / inputs[i].filename(), degrade(read_image(inputs[i]), spec));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  SynthResult result;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (errors[i].empty()) {
      ++result.degraded;
    } else {
      result.failures.push_back({inputs[i].string(), errors[i]});
    }
  }
  return result;
}

}  // namespace mhm
