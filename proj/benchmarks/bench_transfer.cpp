#include <benchmark/benchmark.h>

#include <vector>

#include "mhm/evaluation.hpp"
#include "mhm/histogram.hpp"
#include "mhm/synthetic.hpp"
#include "mhm/transfer.hpp"

namespace {

const mhm::CurveSpec kCyanFade{{1.8, 1.05, 1.0}};

// One-megapixel restore through a prebuilt lookup table.
static void BM_ApplyMegapixel(benchmark::State& state) {
  const mhm::ImageBuffer image = mhm::random_image(1000, 1000, 7);
  const mhm::TransformLut lut(mhm::ground_truth(kCyanFade), 8);
  for (auto _ : state) benchmark::DoNotOptimize(lut.apply(image));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(image.pixel_count()));
}
BENCHMARK(BM_ApplyMegapixel)->Unit(benchmark::kMillisecond);

static void BM_Quantiles(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const mhm::ImageBuffer image = mhm::random_image(side, side, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mhm::quantiles(image, mhm::Channel::Cyan, 256));
  }
}
BENCHMARK(BM_Quantiles)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_EstimatePair(benchmark::State& state) {
  const mhm::ImageBuffer clean = mhm::random_image(512, 512, 3);
  const mhm::ImageBuffer damaged = mhm::degrade(clean, kCyanFade);
  for (auto _ : state) benchmark::DoNotOptimize(mhm::estimate_pair(damaged, clean));
}
BENCHMARK(BM_EstimatePair)->Unit(benchmark::kMillisecond);

static void BM_AggregateMedian(benchmark::State& state) {
  std::vector<mhm::TransformSet> estimates;
  for (int i = 0; i < state.range(0); ++i) {
    estimates.push_back(mhm::ground_truth(mhm::jittered(kCyanFade, 0.2, static_cast<uint64_t>(i))));
  }
  for (auto _ : state) benchmark::DoNotOptimize(mhm::aggregate_median(estimates));
}
BENCHMARK(BM_AggregateMedian)->Arg(22)->Arg(200);

static void BM_PixelDistances(benchmark::State& state) {
  const mhm::ImageBuffer a = mhm::random_image(512, 512, 5);
  const mhm::ImageBuffer b = mhm::degrade(a, kCyanFade);
  for (auto _ : state) benchmark::DoNotOptimize(mhm::pixel_distances(a, b));
}
BENCHMARK(BM_PixelDistances)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
