#include <fstream>

#include "doctest.h"
#include "mhm/document.hpp"
#include "mhm/error.hpp"
#include "mhm/image_io.hpp"
#include "mhm/pipeline.hpp"
#include "mhm/synthetic.hpp"
#include "test_support.hpp"

using namespace mhm;
using mhm::test::TempDir;

namespace {

const CurveSpec kFade{{1.8, 1.1, 0.95}};

// Writes n clean/damaged pairs named img00.png... into <root>/clean and <root>/damaged.
void write_pairs(const fs::path& root, std::size_t n, double jitter = 0.05) {
  fs::create_directories(root / "clean");
  fs::create_directories(root / "damaged");
  for (std::size_t i = 0; i < n; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "img%02zu.png", i);
    const ImageBuffer clean = random_image(48, 32, 100 + i);
    write_image(root / "clean" / name, clean);
    write_image(root / "damaged" / name, degrade(clean, jittered(kFade, jitter, i)));
  }
}

JobConfig config_in(const fs::path& out, std::size_t workers = 1) {
  JobConfig c;
  c.output_dir = out;
  c.workers = workers;
  c.created = "2024-01-01T00:00:00Z";
  return c;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("directories pair by stem") {
    TempDir dir;
    write_pairs(dir.path(), 2);
    const PairManifest m = ingest_directories(dir / "damaged", dir / "clean");
    REQUIRE(m.pairs.size() == 2);
    CHECK(m.pairs[0].id == "img00");
    CHECK(m.pairs[1].id == "img01");
    CHECK(m.warnings.empty());

    write_image(dir / "damaged" / "extra.png", random_image(4, 4, 1));
    const PairManifest extra = ingest_directories(dir / "damaged", dir / "clean");
    CHECK(extra.pairs.size() == 2);
    REQUIRE(extra.warnings.size() == 1);
    CHECK(extra.warnings[0].find("extra.png") != std::string::npos);

    fs::create_directories(dir / "empty");
    CHECK_THROWS_AS(ingest_directories(dir / "damaged", dir / "empty"), InvalidArgument);
    CHECK_THROWS_AS(ingest_directories(dir / "nope", dir / "clean"), InvalidArgument);
  }

  TEST_CASE("manifest and directory modes learn the same transform") {
    TempDir dir;
    write_pairs(dir.path(), 4);
    // Listed in reverse order with relative paths.
    write_text_file(dir / "pairs.json", R"({"pairs": [
      {"damaged": "damaged/img03.png", "reference": "clean/img03.png"},
      {"damaged": "damaged/img02.png", "reference": "clean/img02.png"},
      {"id": "img01", "damaged": "damaged/img01.png", "reference": "clean/img01.png"},
      {"damaged": "damaged/img00.png", "reference": "clean/img00.png"}]})");
    const PairManifest from_json = load_manifest(dir / "pairs.json");
    const PairManifest from_dirs = ingest_directories(dir / "damaged", dir / "clean");
    const LearnResult a = learn(from_json, config_in(dir / "a"));
    const LearnResult b = learn(from_dirs, config_in(dir / "b", 3));
    CHECK(a.median == b.median);
    CHECK(a.median.metadata().at("pairs") == "img00,img01,img02,img03");
    CHECK(serialize(a.median) == serialize(b.median));

    write_learn_outputs(a, dir / "out");
    CHECK(load_transform(dir / "out" / "transform.json") == a.median);
    CHECK(fs::exists(dir / "out" / "estimates" / "img02.json"));
    CHECK(fs::exists(dir / "out" / "curves" / "cyan.csv"));
    CHECK(fs::exists(dir / "out" / "curves" / "curves.svg"));
  }

  TEST_CASE("manifest errors") {
    TempDir dir;
    write_pairs(dir.path(), 2);
    write_text_file(dir / "dup.json", R"({"pairs": [
      {"id": "x", "damaged": "damaged/img00.png", "reference": "clean/img00.png"},
      {"id": "x", "damaged": "damaged/img01.png", "reference": "clean/img01.png"}]})");
    CHECK_THROWS_AS(load_manifest(dir / "dup.json"), InvalidArgument);
    write_text_file(dir / "missing.json",
                    R"({"pairs": [{"damaged": "damaged/zzz.png", "reference": "clean/img00.png"}]})");
    CHECK_THROWS_AS(load_manifest(dir / "missing.json"), InvalidArgument);
    write_text_file(dir / "bad.json", "{");
    CHECK_THROWS_AS(load_manifest(dir / "bad.json"), InvalidArgument);
  }

  TEST_CASE("learning on self-pairs gives the identity") {
    TempDir dir;
    write_pairs(dir.path(), 3);
    const PairManifest m = ingest_directories(dir / "clean", dir / "clean");
    const LearnResult r = learn(m, config_in(dir / "out"));
    const TransformSet id = TransformSet::identity();
    for (Channel c : kAllChannels) {
      for (std::size_t k = 0; k < id[c].outputs().size(); ++k) {
        CHECK(std::abs(r.median[c].outputs()[k] - id[c].outputs()[k]) <= 1e-9);
      }
    }
  }

  TEST_CASE("learning needs two usable pairs") {
    TempDir dir;
    write_pairs(dir.path(), 2);
    write_text_file(dir / "damaged" / "img01.png", "not an image");
    CHECK_THROWS_AS(learn(ingest_directories(dir / "damaged", dir / "clean"), config_in(dir / "o")),
                    Error);
  }

  TEST_CASE("identity apply is pixel-identical across formats") {
    TempDir dir;
    fs::create_directories(dir / "in");
    ImageBuffer rgba = random_image(17, 9, 3);
    ImageBuffer with_alpha(17, 9, 8, true);
    for (std::size_t i = 0; i < with_alpha.pixel_count(); ++i) {
      with_alpha.set_pixel(i, rgba.pixel(i));
      with_alpha.alpha()[i] = static_cast<double>(i % 256) / 255.0;
    }
    write_image(dir / "in" / "a.png", random_image(20, 10, 1));
    write_image(dir / "in" / "b.tiff", random_image(20, 10, 2, 16));
    write_image(dir / "in" / "c.png", with_alpha);
    const std::vector<fs::path> inputs = list_images(dir / "in");
    REQUIRE(inputs.size() == 3);
    const BatchResult r = apply_batch(inputs, TransformSet::identity(), config_in(dir / "out"));
    CHECK(r.written == 3);
    CHECK(r.failures.empty());
    for (const fs::path& p : inputs) {
      const ImageBuffer before = read_image(p);
      const ImageBuffer after = read_image(dir / "out" / p.filename());
      CHECK(after.bit_depth() == before.bit_depth());
      CHECK(after.has_alpha() == before.has_alpha());
      CHECK(after == before);
    }
  }

  TEST_CASE("batch output does not depend on the worker count") {
    TempDir dir;
    fs::create_directories(dir / "in");
    for (std::size_t i = 0; i < 100; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "p%03zu.png", i);
      write_image(dir / "in" / name, random_image(16, 12, i));
    }
    const TransformSet t = ground_truth(kFade);
    const std::vector<fs::path> inputs = list_images(dir / "in");
    const BatchResult one = apply_batch(inputs, t, config_in(dir / "w1", 1));
    const BatchResult four = apply_batch(inputs, t, config_in(dir / "w4", 4));
    CHECK(one.written == 100);
    CHECK(four.written == 100);
    for (const fs::path& p : inputs) {
      REQUIRE(read_file(dir / "w1" / p.filename()) == read_file(dir / "w4" / p.filename()));
    }
  }

  TEST_CASE("overwrite policies") {
    TempDir dir;
    fs::create_directories(dir / "in");
    write_image(dir / "in" / "a.png", random_image(8, 8, 1));
    const std::vector<fs::path> inputs = list_images(dir / "in");
    const TransformSet t = ground_truth(kFade);
    JobConfig c = config_in(dir / "out");
    write_text_file(dir / "out" / "a.png", "old");

    c.overwrite = OverwritePolicy::Skip;
    BatchResult r = apply_batch(inputs, t, c);
    CHECK(r.skipped == 1);
    CHECK(read_file(dir / "out" / "a.png") == "old");

    c.overwrite = OverwritePolicy::Fail;
    r = apply_batch(inputs, t, c);
    CHECK(r.failures.size() == 1);
    CHECK(read_file(dir / "out" / "a.png") == "old");

    c.overwrite = OverwritePolicy::Overwrite;
    r = apply_batch(inputs, t, c);
    CHECK(r.written == 1);
    CHECK(read_image(dir / "out" / "a.png").width() == 8);

    // Writing back into the input directory would clobber the source.
    c.output_dir = dir / "in";
    r = apply_batch(inputs, t, c);
    CHECK(r.failures.size() == 1);
  }

  TEST_CASE("a corrupt file fails alone") {
    TempDir dir;
    fs::create_directories(dir / "in");
    write_image(dir / "in" / "a.png", random_image(8, 8, 1));
    write_text_file(dir / "in" / "b.png", "garbage");
    write_image(dir / "in" / "c.jpg", random_image(8, 8, 3));
    const BatchResult r =
        apply_batch(list_images(dir / "in"), ground_truth(kFade), config_in(dir / "out", 2));
    CHECK(r.written == 2);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].path.find("b.png") != std::string::npos);
  }

  TEST_CASE("synth writes degraded copies and ground truth") {
    TempDir dir;
    SynthOptions opts;
    opts.generate = 3;
    opts.width = 20;
    opts.height = 10;
    opts.curve = kFade;
    JobConfig c = config_in(dir / "damaged");
    const SynthResult r = synthesize(dir / "clean", opts, c);
    CHECK(r.degraded == 3);
    CHECK(r.failures.empty());
    const TransformSet truth = load_transform(dir / "damaged" / "ground_truth.json");
    CHECK(truth == ground_truth(kFade));
    const ImageBuffer clean = read_image(dir / "clean" / "synth_0001.png");
    CHECK(read_image(dir / "damaged" / "synth_0001.png") == degrade(clean, kFade));

    SynthOptions identity;
    const SynthResult same = synthesize(dir / "clean", identity, config_in(dir / "same"));
    CHECK(same.degraded == 3);
    CHECK(read_image(dir / "same" / "synth_0002.png") == read_image(dir / "clean" / "synth_0002.png"));

    SynthOptions jit = opts;
    jit.generate = 0;
    jit.jitter = 0.1;
    synthesize(dir / "clean", jit, config_in(dir / "jit"));
    CHECK(fs::exists(dir / "jit" / "ground_truth" / "synth_0000.json"));

    CHECK_THROWS_AS(synthesize(dir / "clean", opts, config_in(dir / "clean")), InvalidArgument);
  }

  TEST_CASE("evaluation runs over files") {
    TempDir dir;
    write_pairs(dir.path(), 5);
    const PairManifest m = ingest_directories(dir / "damaged", dir / "clean");
    JobConfig c = config_in(dir / "out", 2);
    c.bins = 32;
    const LooRun loo = evaluate_loo(m, c);
    CHECK(loo.failures.empty());
    CHECK(loo.report.images.size() == 5);
    CHECK(loo.report.loo_uniform.mean < loo.report.identity_uniform.mean);

    const CompareRun cmp = evaluate_compare(dir / "damaged", dir / "clean", ground_truth(kFade), c);
    CHECK(cmp.failures.empty());
    CHECK(cmp.report.rows.size() == 5);
    for (std::size_t s = 0; s < 4; ++s) {
      CHECK(cmp.report.corrected[s].mean < cmp.report.identity[s].mean);
    }
  }

  TEST_CASE("job config validation") {
    JobConfig c;
    CHECK_NOTHROW(c.validate());
    c.quantiles = 1;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = JobConfig{};
    c.workers = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
  }
}
