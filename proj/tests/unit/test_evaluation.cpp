#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "mhm/error.hpp"
#include "mhm/evaluation.hpp"
#include "mhm/synthetic.hpp"
#include "test_support.hpp"

using namespace mhm;

namespace {

TransformSet squared_cyan(std::size_t intervals) {
  std::vector<double> y(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(intervals);
    y[k] = x * x;
  }
  y.back() = 1.0;
  return TransformSet({ChannelTransform(Channel::Cyan, std::move(y)),
                       ChannelTransform::identity(Channel::Magenta, intervals),
                       ChannelTransform::identity(Channel::Yellow, intervals)});
}

// Composite Simpson on (x - x^2)^2 over [0,1].
double simpson_oracle(int n) {
  auto f = [](double x) { return (x - x * x) * (x - x * x); };
  const double h = 1.0 / n;
  double s = f(0.0) + f(1.0);
  for (int i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

DensityTriple uniform_density(std::size_t bins) {
  DensityProfile d;
  d.mass.assign(bins, 1.0 / static_cast<double>(bins));
  return {d, d, d};
}

}  // namespace

TEST_SUITE("evaluation") {
  TEST_CASE("self-distance is zero") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const TransformSet f = ground_truth(jittered(CurveSpec{{1.5, 1.2, 0.8}}, 0.3, seed));
      const TransformDistance d = transform_distance(f, f);
      CHECK(d.total == 0.0);
      CHECK(transform_distance(f, f, uniform_density(7)).total == 0.0);
    }
  }

  TEST_CASE("identity versus x^2 matches the closed-form integral") {
    const double simpson = simpson_oracle(100000);
    CHECK(simpson == doctest::Approx(1.0 / 30.0).epsilon(1e-12));

    const TransformDistance d = transform_distance(TransformSet::identity(4096), squared_cyan(4096));
    CHECK(std::abs(d.channel[0] * d.report_scale - 100.0 * simpson) <= 1e-3);
    CHECK(d.channel[1] == 0.0);
    CHECK(d.channel[2] == 0.0);
    CHECK(d.total == d.channel[0] + d.channel[1] + d.channel[2]);
    CHECK(d.reported() == doctest::Approx(100.0 / 30.0).epsilon(1e-5));
  }

  TEST_CASE("trapezoid error shrinks at least quadratically") {
    double previous = 0.0;
    for (std::size_t g : {64u, 128u, 256u, 512u}) {
      const double err = std::abs(
          transform_distance(TransformSet::identity(g), squared_cyan(g)).total - 1.0 / 30.0);
      if (previous > 0.0) CHECK(previous / err >= 3.0);
      previous = err;
    }
  }

  TEST_CASE("distance is symmetric and non-negative") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const TransformSet f = ground_truth(jittered(CurveSpec{{1.5, 1.2, 0.8}}, 0.4, seed));
      const TransformSet g = ground_truth(jittered(CurveSpec{{0.9, 1.0, 1.3}}, 0.4, seed + 100));
      const TransformDistance fg = transform_distance(f, g);
      const TransformDistance gf = transform_distance(g, f);
      CHECK(fg.total == gf.total);
      CHECK(fg.total > 0.0);
      for (double c : fg.channel) CHECK(c >= 0.0);
    }
  }

  TEST_CASE("nested grids compare on the finer grid; others are rejected") {
    CHECK(transform_distance(TransformSet::identity(4), TransformSet::identity(16)).total ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(transform_distance(TransformSet::identity(4), TransformSet::identity(6)),
                    MismatchError);
  }

  TEST_CASE("uniform density reproduces the uniform distance") {
    for (std::size_t bins : {1u, 10u, 256u, 1000u}) {
      const TransformSet f = squared_cyan(255);
      const TransformSet g = ground_truth(CurveSpec{{1.3, 0.8, 1.1}});
      const double uniform = transform_distance(f, g).total;
      const double weighted = transform_distance(f, g, uniform_density(bins)).total;
      CHECK(std::abs(uniform - weighted) <= 1e-9);
    }
  }

  TEST_CASE("weighted distance ignores intensities without mass") {
    // Density entirely in [0.8, 1]; curves agree on [0.75, 1] and differ below.
    DensityProfile d;
    d.mass.assign(10, 0.0);
    d.mass[8] = 0.5;
    d.mass[9] = 0.5;
    std::vector<double> y(101);
    for (std::size_t k = 0; k <= 100; ++k) {
      const double x = k / 100.0;
      y[k] = x < 0.75 ? x * 0.5 : 0.375 + (x - 0.75) * 2.5;
    }
    y.back() = 1.0;
    const TransformSet f({ChannelTransform(Channel::Cyan, y), ChannelTransform(Channel::Magenta, y),
                          ChannelTransform(Channel::Yellow, y)});
    std::vector<double> z(101);
    for (std::size_t k = 0; k <= 100; ++k) z[k] = k < 75 ? k / 100.0 * 0.3 : y[k];
    const TransformSet g({ChannelTransform(Channel::Cyan, z), ChannelTransform(Channel::Magenta, z),
                          ChannelTransform(Channel::Yellow, z)});
    CHECK(transform_distance(f, g).total > 0.01);
    CHECK(transform_distance(f, g, DensityTriple{d, d, d}).total <= 1e-15);
  }

  TEST_CASE("summary matches a naive two-pass computation") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(5.0, 2.0);
    for (std::size_t size : {2u, 3u, 22u, 500u}) {
      std::vector<double> v(size);
      for (double& x : v) x = n(rng);
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(size);
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      var /= static_cast<double>(size - 1);
      const Summary s = summarize(v);
      CHECK(s.count == size);
      CHECK(s.mean == doctest::Approx(mean).epsilon(1e-13));
      CHECK(s.standard_error ==
            doctest::Approx(std::sqrt(var) / std::sqrt(static_cast<double>(size))).epsilon(1e-13));
    }
    const std::vector<double> one{4.0};
    CHECK(summarize(one).standard_error == 0.0);
  }

  TEST_CASE("leave-one-out on a perfectly consistent set") {
    const TransformSet shared = ground_truth(CurveSpec{{1.8, 1.1, 1.0}});
    std::vector<PairSample> samples;
    for (int i = 0; i < 5; ++i) {
      samples.push_back({"p" + std::to_string(i), shared, uniform_density(16)});
    }
    const EvalReport r = loo_cv(samples);
    REQUIRE(r.images.size() == 5);
    CHECK(r.loo_uniform.mean == 0.0);
    CHECK(r.loo_weighted.mean == 0.0);
    CHECK(r.identity_uniform.mean > 0.0);
    CHECK(r.identity_weighted.mean > 0.0);
    CHECK(r.loo_wins_uniform == 5);
  }

  TEST_CASE("leave-one-out is independent of input order") {
    std::vector<PairSample> samples;
    for (std::uint64_t i = 0; i < 9; ++i) {
      const ImageBuffer clean = random_image(40, 30, i);
      const ImageBuffer damaged = degrade(clean, jittered(CurveSpec{{1.8, 1.1, 0.9}}, 0.2, i));
      samples.push_back(make_pair_sample("pair" + std::to_string(i), damaged, clean));
    }
    const EvalReport base = loo_cv(samples);
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 3; ++trial) {
      std::shuffle(samples.begin(), samples.end(), rng);
      const EvalReport r = loo_cv(samples, 3);
      CHECK(r.loo_uniform.mean == base.loo_uniform.mean);
      CHECK(r.loo_weighted.standard_error == base.loo_weighted.standard_error);
      CHECK(r.identity_uniform.mean == base.identity_uniform.mean);
      for (std::size_t i = 0; i < r.images.size(); ++i) {
        CHECK(r.images[i].id == base.images[i].id);
        CHECK(r.images[i].loo_weighted.total == base.images[i].loo_weighted.total);
      }
    }
  }

  TEST_CASE("leave-one-out argument checks") {
    std::vector<PairSample> one{{"a", TransformSet::identity(), uniform_density(4)}};
    CHECK_THROWS_AS(loo_cv(one), InvalidArgument);
    std::vector<PairSample> dup{{"a", TransformSet::identity(), uniform_density(4)},
                                {"a", TransformSet::identity(), uniform_density(4)}};
    CHECK_THROWS_AS(loo_cv(dup), InvalidArgument);
  }

  TEST_CASE("leave-one-out beats identity on a noisy synthetic set") {
    // Shared cyan-fading degradation with bounded per-image jitter.
    std::vector<PairSample> samples;
    for (std::uint64_t i = 0; i < 22; ++i) {
      const ImageBuffer clean = random_image(64, 64, 500 + i);
      const ImageBuffer damaged = degrade(clean, jittered(CurveSpec{{1.8, 1.15, 0.9}}, 0.1, i));
      samples.push_back(make_pair_sample("img" + std::to_string(i), damaged, clean));
    }
    const EvalReport r = loo_cv(samples, 2);
    CHECK(r.loo_wins_uniform >= 21);
    CHECK(r.loo_uniform.mean <= r.identity_uniform.mean / 3.0);
    CHECK(r.loo_weighted.mean <= r.identity_weighted.mean / 3.0);
  }

  TEST_CASE("pixel distance to itself is zero") {
    const ImageBuffer a = random_image(20, 10, 1);
    for (PerceptualSpace s : kAllPerceptualSpaces) CHECK(pixel_distance(a, a, s) == 0.0);
  }

  TEST_CASE("single-pixel distance matches hand-computed Lab norm") {
    // Lab of both colors from tests/oracles/colorspace_oracle.py.
    const double dl = 52.2522835120575 - 54.086543801818;
    const double da = 2.77905504337516 - 57.2281669268052;
    const double db = -46.2895508026124 - 58.1828127811231;
    ImageBuffer a(1, 1);
    ImageBuffer b(1, 1);
    a.set_pixel(0, {0.2, 0.5, 0.8});
    b.set_pixel(0, {0.9, 0.3, 0.1});
    CHECK(pixel_distance(a, b, PerceptualSpace::Cielab) ==
          doctest::Approx(std::sqrt(dl * dl + da * da + db * db)).epsilon(1e-10));
    CHECK(pixel_distance(a, b, PerceptualSpace::Ab) ==
          doctest::Approx(std::sqrt(da * da + db * db)).epsilon(1e-10));
  }

  TEST_CASE("chromatic-plane distance never exceeds the full distance") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      ImageBuffer a(1, 1);
      ImageBuffer b(1, 1);
      a.set_pixel(0, {u(rng), u(rng), u(rng)});
      b.set_pixel(0, {u(rng), u(rng), u(rng)});
      const auto d = pixel_distances(a, b);
      CHECK(d[1] <= d[0]);
      CHECK(d[3] <= d[2]);
    }
  }

  TEST_CASE("pixel distance needs equal sizes") {
    CHECK_THROWS_AS(pixel_distance(ImageBuffer(2, 2), ImageBuffer(2, 3), PerceptualSpace::Uv),
                    MismatchError);
    CHECK_THROWS_AS(pixel_distance(ImageBuffer{}, ImageBuffer{}, PerceptualSpace::Uv),
                    EmptyImageError);
  }

  TEST_CASE("comparison report: perfect correction has zero distance") {
    std::vector<ImageBuffer> edits;
    std::vector<ImageBuffer> originals;
    for (std::uint64_t i = 0; i < 4; ++i) {
      edits.push_back(random_image(16, 16, i));
      originals.push_back(degrade(edits.back(), CurveSpec{{1.7, 1.0, 1.0}}));
    }
    const PixelDistanceReport r = comparison_report(edits, originals, edits);
    for (std::size_t s = 0; s < 4; ++s) {
      CHECK(r.corrected[s].mean == 0.0);
      CHECK(r.identity[s].mean > 0.0);
      CHECK(r.corrected_wins[s] == 4);
    }
    const std::vector<ImageBuffer> short_list(edits.begin(), edits.begin() + 2);
    CHECK_THROWS_AS(comparison_report(edits, originals, short_list), MismatchError);
  }

  TEST_CASE("halfway Lab blend halves the AB distance") {
    // Corrected pixels sit at the Lab midpoint of original and edit, so every
    // per-pixel distance in Lab and AB is exactly half the original's.
    const ImageBuffer edit = random_image(12, 9, 31);
    const ImageBuffer original = degrade(edit, CurveSpec{{1.9, 1.2, 0.8}});
    ImageBuffer blend(edit.width(), edit.height());
    double brute_identity = 0.0;
    double brute_blend = 0.0;
    for (std::size_t i = 0; i < edit.pixel_count(); ++i) {
      const LabColor e = rgb_to_lab(edit.pixel(i));
      const LabColor o = rgb_to_lab(original.pixel(i));
      const LabColor mid{(e.L + o.L) / 2, (e.a + o.a) / 2, (e.b + o.b) / 2};
      blend.set_pixel(i, lab_to_rgb(mid));
      brute_identity += std::hypot(e.a - o.a, e.b - o.b);
      brute_blend += std::hypot(e.a - mid.a, e.b - mid.b);
    }
    const double n = static_cast<double>(edit.pixel_count());
    const std::vector<ImageBuffer> edits{edit};
    const std::vector<ImageBuffer> originals{original};
    const std::vector<ImageBuffer> corrected{blend};
    const PixelDistanceReport r = comparison_report(edits, originals, corrected);
    const std::size_t ab = static_cast<std::size_t>(PerceptualSpace::Ab);
    CHECK(r.identity[ab].mean == doctest::Approx(brute_identity / n).epsilon(1e-9));
    CHECK(r.corrected[ab].mean == doctest::Approx(brute_blend / n).epsilon(1e-6));
    CHECK(r.corrected[ab].mean == doctest::Approx(r.identity[ab].mean / 2).epsilon(1e-6));
  }
}
