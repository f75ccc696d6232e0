#include <benchmark/benchmark.h>

#include "uasdetect/bgmodel.hpp"
#include "uasdetect/maskops.hpp"
#include "uasdetect/pipeline.hpp"
#include "uasdetect/rng.hpp"
#include "uasdetect/synth.hpp"

namespace {

using namespace uasdetect;

std::vector<Frame> scene_frames(int count) {
  const SceneRenderer renderer(free_flow_scene(HighwayLayout{}, count, 3));
  std::vector<Frame> frames;
  for (int f = 0; f < count; ++f) frames.push_back(renderer.render(f));
  return frames;
}

BinaryMask random_mask(int w, int h, double density, std::uint64_t seed) {
  XorShift64Star rng(seed);
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, rng.uniform() < density);
  return m;
}

void BM_MixtureApply(benchmark::State& state) {
  const auto frames = scene_frames(32);
  MixtureModel model(MixtureParams{}, frames[0]);
  BinaryMask out(frames[0].width(), frames[0].height());
  std::size_t i = 1;
  for (auto _ : state) {
    model.apply(frames[i], out, static_cast<int>(state.range(0)));
    i = i + 1 < frames.size() ? i + 1 : 1;
  }
  state.SetItemsProcessed(state.iterations() * frames[0].width() * frames[0].height());
}
BENCHMARK(BM_MixtureApply)->Arg(1)->Arg(4)->UseRealTime();

void BM_Open3x3(benchmark::State& state) {
  const BinaryMask m = random_mask(640, 480, 0.1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(open(m, StructuringElement{}, 1));
}
BENCHMARK(BM_Open3x3);

void BM_ConnectedComponents(benchmark::State& state) {
  const BinaryMask m = random_mask(640, 480, static_cast<double>(state.range(0)) / 100.0, 2);
  for (auto _ : state) benchmark::DoNotOptimize(connected_components(m));
}
BENCHMARK(BM_ConnectedComponents)->Arg(5)->Arg(40);

void BM_PipelineFrame(benchmark::State& state) {
  const auto frames = scene_frames(64);
  PipelineConfig cfg;
  cfg.roi = RoiSpec{0.4, HighwayLayout{}.direction_polygons()};
  for (const auto& [label, poly] : cfg.roi.direction_polygons) cfg.directions.push_back(label);
  cfg.min_area = 50.0;
  Pipeline pipeline(cfg);
  pipeline.process_frame(frames[0]);
  std::size_t i = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipeline.process_frame(frames[i]));
    i = i + 1 < frames.size() ? i + 1 : 1;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PipelineFrame);

}  // namespace
BENCHMARK_MAIN();
