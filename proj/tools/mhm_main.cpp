// mhm: learn, apply and evaluate median-histogram-matching dye curves.
//
//   mhm learn    --damaged DIR --reference DIR -o OUT
//   mhm apply    --transform OUT/transform.json -o RESTORED IMAGES_OR_DIRS...
//   mhm evaluate loo     --manifest pairs.json -o REPORTS
//   mhm evaluate compare --originals DIR --edited DIR --transform T.json -o REPORTS
//   mhm synth    --clean DIR --curve c=1.8,m=1.05,y=1.0 -o OUT
//   mhm export-curves --transform T.json [--estimates DIR] -o CURVES
//
// Exit status: 0 success, 1 some files failed, 2 usage or configuration error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mhm/document.hpp"
#include "mhm/error.hpp"
#include "mhm/pipeline.hpp"
#include "mhm/report.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

std::string timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::size_t default_workers() {
  if (const char* env = std::getenv("MHM_WORKERS"); env != nullptr && *env != '\0') {
    const long long n = std::strtoll(env, nullptr, 10);
    if (n >= 1) return static_cast<std::size_t>(n);
  }
  return 1;
}

void add_estimation_options(CLI::App& cmd, mhm::JobConfig& config) {
  cmd.add_option("-K,--quantiles", config.quantiles, "Quantile intervals per channel")
      ->capture_default_str();
  cmd.add_option("-G,--grid", config.intervals, "Curve grid intervals")->capture_default_str();
}

void add_common_options(CLI::App& cmd, mhm::JobConfig& config) {
  cmd.add_option("-j,--workers", config.workers, "Parallel workers (env MHM_WORKERS)")
      ->envname("MHM_WORKERS")
      ->capture_default_str();
  cmd.add_option("-o,--output", config.output_dir, "Output directory")->capture_default_str();
}

void add_report_options(CLI::App& cmd, mhm::JobConfig& config) {
  const std::map<std::string, mhm::ReportFormat> formats{
      {"text", mhm::ReportFormat::Text},
      {"json", mhm::ReportFormat::Json},
      {"both", mhm::ReportFormat::Both}};
  cmd.add_option("--format", config.report_format, "Report format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("both");
}

int report_failures(const std::vector<mhm::FileFailure>& failures) {
  for (const mhm::FileFailure& f : failures) {
    std::cerr << "error: " << f.path << ": " << f.message << "\n";
  }
  return failures.empty() ? kExitOk : kExitPartial;
}

void report_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

mhm::PairManifest resolve_manifest(const std::string& manifest, const std::string& damaged,
                                   const std::string& reference) {
  if (!manifest.empty()) {
    if (!damaged.empty() || !reference.empty()) {
      throw mhm::InvalidArgument("use either --manifest or --damaged/--reference, not both");
    }
    return mhm::load_manifest(manifest);
  }
  if (damaged.empty() || reference.empty()) {
    throw mhm::InvalidArgument("need --manifest or both --damaged and --reference");
  }
  return mhm::ingest_directories(damaged, reference);
}

template <typename Report>
void emit_report(const Report& report, const mhm::JobConfig& config, const std::string& stem) {
  const std::string table = mhm::to_table(report);
  std::cout << table;
  if (config.report_format != mhm::ReportFormat::Json) {
    mhm::write_text_file(config.output_dir / (stem + ".txt"), table);
  }
  if (config.report_format != mhm::ReportFormat::Text) {
    mhm::write_text_file(config.output_dir / (stem + ".json"), mhm::to_json(report));
  }
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      const auto listed = mhm::list_images(in);
      files.insert(files.end(), listed.begin(), listed.end());
    } else {
      files.emplace_back(in);
    }
  }
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Median histogram matching for color-shifted photograph collections"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with default option values");

  mhm::JobConfig config;
  config.workers = default_workers();

  std::string manifest_path;
  std::string damaged_dir;
  std::string reference_dir;
  std::string transform_path;

  auto add_pair_sources = [&](CLI::App& cmd) {
    cmd.add_option("--manifest", manifest_path, "JSON manifest of damaged/reference pairs");
    cmd.add_option("--damaged", damaged_dir, "Directory of damaged images");
    cmd.add_option("--reference", reference_dir, "Directory of reference images (matched by stem)");
  };

  // learn
  CLI::App* learn = app.add_subcommand("learn", "Learn the median dye curves from image pairs");
  add_pair_sources(*learn);
  add_estimation_options(*learn, config);
  add_common_options(*learn, config);

  // apply
  std::vector<std::string> apply_inputs;
  CLI::App* apply = app.add_subcommand("apply", "Restore images with a learned transform");
  apply->add_option("--transform", transform_path, "Transform document")->required();
  apply->add_option("inputs", apply_inputs, "Image files or directories")->required();
  const std::map<std::string, mhm::OverwritePolicy> policies{
      {"overwrite", mhm::OverwritePolicy::Overwrite},
      {"skip", mhm::OverwritePolicy::Skip},
      {"fail", mhm::OverwritePolicy::Fail}};
  apply->add_option("--overwrite", config.overwrite, "Existing outputs: overwrite, skip or fail")
      ->transform(CLI::CheckedTransformer(policies, CLI::ignore_case))
      ->default_str("overwrite");
  add_common_options(*apply, config);

  // evaluate
  CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluation reports");
  evaluate->require_subcommand(1);
  CLI::App* loo = evaluate->add_subcommand("loo", "Leave-one-out cross-validation of the curves");
  add_pair_sources(*loo);
  add_estimation_options(*loo, config);
  loo->add_option("-B,--bins", config.bins, "Density bins for the weighted metric")
      ->capture_default_str();
  const std::map<std::string, mhm::DensitySource> sources{
      {"damaged", mhm::DensitySource::Damaged}, {"reference", mhm::DensitySource::Reference}};
  loo->add_option("--density", config.density_source, "Image supplying the weighting density")
      ->transform(CLI::CheckedTransformer(sources, CLI::ignore_case))
      ->default_str("damaged");
  add_common_options(*loo, config);
  add_report_options(*loo, config);

  std::string originals_dir;
  std::string edited_dir;
  CLI::App* compare =
      evaluate->add_subcommand("compare", "Per-pixel perceptual distances to reference edits");
  compare->add_option("--originals", originals_dir, "Directory of unrestored images")->required();
  compare->add_option("--edited", edited_dir, "Directory of reference edits (matched by stem)")
      ->required();
  compare->add_option("--transform", transform_path, "Transform document")->required();
  add_common_options(*compare, config);
  add_report_options(*compare, config);

  // synth
  std::string clean_dir;
  std::string curve_text = "c=1,m=1,y=1";
  mhm::SynthOptions synth_options;
  CLI::App* synth = app.add_subcommand("synth", "Write synthetically degraded copies of images");
  synth->add_option("--clean", clean_dir, "Directory of clean images")->required();
  synth->add_option("--curve", curve_text, "Per-dye degradation exponents, e.g. c=1.8,m=1.05")
      ->capture_default_str();
  synth->add_option("--jitter", synth_options.jitter, "Per-image log-exponent jitter")
      ->capture_default_str();
  synth->add_option("--generate", synth_options.generate,
                    "Create this many random clean images in --clean first");
  synth->add_option("--width", synth_options.width, "Generated image width")->capture_default_str();
  synth->add_option("--height", synth_options.height, "Generated image height")
      ->capture_default_str();
  synth->add_option("--bit-depth", synth_options.bit_depth, "Generated image bit depth")
      ->check(CLI::IsMember({8, 16}))
      ->capture_default_str();
  synth->add_option("--seed", config.seed, "Random seed")->capture_default_str();
  synth->add_option("-G,--grid", config.intervals, "Ground-truth curve grid intervals")
      ->capture_default_str();
  add_common_options(*synth, config);

  // export-curves
  std::string estimates_dir;
  CLI::App* export_cmd = app.add_subcommand("export-curves", "Write curve CSVs and an SVG plot");
  export_cmd->add_option("--transform", transform_path, "Transform document")->required();
  export_cmd->add_option("--estimates", estimates_dir,
                         "Directory of per-pair transform documents drawn in grey");
  add_common_options(*export_cmd, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    config.created = timestamp();
    config.validate();

    if (learn->parsed()) {
      const mhm::PairManifest manifest = resolve_manifest(manifest_path, damaged_dir, reference_dir);
      const mhm::LearnResult result = mhm::learn(manifest, config);
      report_warnings(result.warnings);
      mhm::write_learn_outputs(result, config.output_dir);
      std::cerr << "learned " << result.median.metadata().at("source") << " from "
                << result.samples.size() << " pairs -> "
                << (config.output_dir / "transform.json").string() << "\n";
      return report_failures(result.failures);
    }

    if (apply->parsed()) {
      const mhm::TransformSet transforms = mhm::load_transform(transform_path);
      const std::vector<fs::path> inputs = expand_inputs(apply_inputs);
      const mhm::BatchResult result = mhm::apply_batch(inputs, transforms, config);
      std::cerr << "restored " << result.written << " images";
      if (result.skipped > 0) std::cerr << ", skipped " << result.skipped << " existing";
      std::cerr << "\n";
      return report_failures(result.failures);
    }

    if (loo->parsed()) {
      const mhm::PairManifest manifest = resolve_manifest(manifest_path, damaged_dir, reference_dir);
      const mhm::LooRun run = mhm::evaluate_loo(manifest, config);
      report_warnings(run.warnings);
      emit_report(run.report, config, "loo_report");
      return report_failures(run.failures);
    }

    if (compare->parsed()) {
      const mhm::TransformSet transforms = mhm::load_transform(transform_path);
      const mhm::CompareRun run =
          mhm::evaluate_compare(originals_dir, edited_dir, transforms, config);
      report_warnings(run.warnings);
      emit_report(run.report, config, "compare_report");
      return report_failures(run.failures);
    }

    if (synth->parsed()) {
      synth_options.curve = mhm::CurveSpec::parse(curve_text);
      const mhm::SynthResult result = mhm::synthesize(clean_dir, synth_options, config);
      std::cerr << "degraded " << result.degraded << " images with "
                << synth_options.curve.to_string() << "\n";
      return report_failures(result.failures);
    }

    if (export_cmd->parsed()) {
      const mhm::TransformSet transforms = mhm::load_transform(transform_path);
      std::vector<mhm::TransformSet> estimates;
      if (!estimates_dir.empty()) {
        std::vector<fs::path> docs;
        for (const auto& entry : fs::directory_iterator(estimates_dir)) {
          if (entry.path().extension() == ".json") docs.push_back(entry.path());
        }
        std::sort(docs.begin(), docs.end());
        for (const fs::path& doc : docs) estimates.push_back(mhm::load_transform(doc));
      }
      mhm::export_curves(transforms, estimates, config.output_dir);
      return kExitOk;
    }
  } catch (const mhm::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mhm::DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitOk;
}
