#include <benchmark/benchmark.h>

#include <random>

#include "handtrack/evaluation.hpp"
#include "handtrack/hungarian.hpp"
#include "handtrack/smoothing.hpp"
#include "handtrack/tracker.hpp"

namespace {

using namespace handtrack;

BoundingBox random_box(std::mt19937_64& rng, double extent = 1280.0) {
  std::uniform_real_distribution<double> pos(0.0, extent);
  std::uniform_real_distribution<double> size(20.0, 120.0);
  const double x = pos(rng), y = pos(rng);
  return {x, y, x + size(rng), y + size(rng)};
}

void BM_Iou(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<BoundingBox> boxes(1024);
  for (auto& b : boxes) b = random_box(rng, 200.0);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(iou(boxes[i % 1024], boxes[(i + 1) % 1024]));
    ++i;
  }
}
BENCHMARK(BM_Iou);

void BM_Hungarian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CostMatrix cost(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) cost(r, c) = u(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(hungarian(cost));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hungarian)->RangeMultiplier(2)->Range(4, 128)->Complexity();

// One tracker step with a handful of hands moving slowly.
void BM_TrackerStep(benchmark::State& state) {
  const int targets = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::vector<BoundingBox> start;
  for (int t = 0; t < targets; ++t) start.push_back(random_box(rng));
  Tracker tracker;
  std::int64_t frame = 0;
  std::vector<BoundingBox> dets(start.size());
  for (auto _ : state) {
    for (std::size_t t = 0; t < start.size(); ++t) {
      const double dx = 2.0 * static_cast<double>(frame % 200);
      dets[t] = {start[t].x1 + dx, start[t].y1, start[t].x2 + dx, start[t].y2};
    }
    benchmark::DoNotOptimize(tracker.step(frame++, dets));
  }
}
BENCHMARK(BM_TrackerStep)->Arg(2)->Arg(4)->Arg(16);

void BM_AveragePrecision(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::vector<EvalRecord> frames;
  for (int f = 0; f < 500; ++f) {
    std::vector<BoundingBox> gts;
    std::vector<ScoredBox> preds;
    for (int i = 0; i < 3; ++i) {
      gts.push_back(random_box(rng, 300.0));
      preds.push_back({gts.back(), score(rng)});
      preds.push_back({random_box(rng, 300.0), score(rng)});
    }
    frames.push_back(match_detections(preds, gts, kEvalIouThreshold));
  }
  EvalRecord all;
  for (const auto& r : frames) all.merge(r);
  for (auto _ : state) benchmark::DoNotOptimize(average_precision(all));
}
BENCHMARK(BM_AveragePrecision);

void BM_Smoothing(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<FrameBoxes> seq(300);
  for (std::size_t f = 0; f < seq.size(); ++f) {
    for (int t = 0; t < 2; ++t) {
      const double x = 100.0 + 300.0 * t + 2.0 * static_cast<double>(f);
      if (rng() % 7 != 0) seq[f].push_back({{x, 200, x + 80, 280}, 0.9});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(run_smoothing(seq));
}
BENCHMARK(BM_Smoothing);

}  // namespace
BENCHMARK_MAIN();
