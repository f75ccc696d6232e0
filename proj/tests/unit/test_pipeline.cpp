#include <gtest/gtest.h>

#include "uasdetect/error.hpp"
#include "uasdetect/pipeline.hpp"
#include "uasdetect/scoring.hpp"
#include "uasdetect/synth.hpp"

using namespace uasdetect;

namespace {

const HighwayLayout kLayout{480, 120, 0.4};  // road rows 48..119, median 84

PipelineConfig config_for(const std::vector<std::string>& directions = {"north", "south"}) {
  PipelineConfig c;
  c.roi = RoiSpec{0.4, kLayout.direction_polygons()};
  c.directions = directions;
  c.min_area = 50;
  return c;
}

Frame with_block(int x, int y, int w, int h) {
  Frame f(kLayout.width, kLayout.height, 1, 90);
  for (int r = y; r < y + h; ++r)
    for (int c = x; c < x + w; ++c) f.at(c, r) = 220;
  return f;
}

std::vector<Frame> moving_block(int frames, int y) {
  std::vector<Frame> out{Frame(kLayout.width, kLayout.height, 1, 90)};
  for (int f = 1; f < frames; ++f) out.push_back(with_block(10 + 3 * f, y, 20, 10));
  return out;
}

}  // namespace

TEST(Pipeline, BackgroundFrameGivesNothing) {
  Pipeline p(config_for());
  const Frame bg(kLayout.width, kLayout.height, 1, 90);
  EXPECT_TRUE(p.process_frame(bg).detections.empty());
  for (int i = 0; i < 5; ++i) EXPECT_TRUE(p.process_frame(bg).detections.empty());
}

TEST(Pipeline, BlockInSouthDetectedOnce) {
  Pipeline p(config_for());
  const auto frames = moving_block(6, 95);
  FrameDetections last;
  for (const auto& f : frames) last = p.process_frame(f);
  ASSERT_EQ(last.detections.size(), 1u);
  const auto& d = last.detections[0];
  EXPECT_EQ(d.direction, "south");
  EXPECT_EQ(d.frame_index, 5);
  const Box truth{25, 95, 45, 105};
  const int r = p.config().se.radius_x();
  EXPECT_LE(std::abs(d.box.x_min - truth.x_min), r);
  EXPECT_LE(std::abs(d.box.x_max - truth.x_max), r);
  EXPECT_LE(std::abs(d.box.y_min - truth.y_min), r);
  EXPECT_LE(std::abs(d.box.y_max - truth.y_max), r);
}

TEST(Pipeline, BlockAboveCutoffIgnored) {
  Pipeline p(config_for());
  for (const auto& f : moving_block(6, 10)) EXPECT_TRUE(p.process_frame(f).detections.empty());
}

TEST(Pipeline, DimensionChangeThrows) {
  Pipeline p(config_for());
  p.process_frame(Frame(160, 120, 1, 90));
  EXPECT_THROW(p.process_frame(Frame(160, 100, 1, 90)), DimensionMismatch);
}

TEST(Pipeline, ConfigValidation) {
  PipelineConfig c = config_for();
  c.directions.clear();
  EXPECT_THROW(Pipeline{c}, InvalidArgument);
  c = config_for({"east"});
  EXPECT_THROW(Pipeline{c}, InvalidArgument);
  c = config_for();
  c.min_area.reset();
  EXPECT_THROW(Pipeline{c}, InvalidArgument);
  c.geometry = ScenarioGeometry{};
  c.focal_length_px = 800;
  Pipeline auto_area(c);
  EXPECT_NEAR(auto_area.min_area(), 0.25 * expected_vehicle_area_px(*c.geometry, 800, 15, 6), 1e-9);
}

TEST(RunSequence, ConstantFramesLogEveryFrame) {
  VectorFrameSource src(std::vector<Frame>(50, Frame(160, 120, 1, 90)));
  const auto log = run_sequence(config_for(), src);
  ASSERT_EQ(log.frames.size(), 50u);
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_EQ(log.frames[i].frame_index, static_cast<int>(i));
    EXPECT_TRUE(log.frames[i].detections.empty());
  }
  EXPECT_EQ(log.width, 160);
}

TEST(RunSequence, EmptySourceThrows) {
  VectorFrameSource src({});
  EXPECT_THROW(run_sequence(config_for(), src), InvalidArgument);
}

namespace {

GeneratedScene small_scene(double noise) {
  return generate(free_flow_scene(kLayout, 260, 3, 40, BandModel::rgb_like(noise)));
}

DetectionLog run(const GeneratedScene& g, const std::vector<std::string>& directions) {
  VectorFrameSource src(g.frames);
  return run_sequence(config_for(directions), src);
}

}  // namespace

TEST(RunSequence, DirectionLabelsFollowPolygons) {
  const auto g = small_scene(2.0);
  const auto log = run(g, {"north", "south"});
  std::size_t n = 0;
  for (const auto& fd : log.frames)
    for (const auto& d : fd.detections) {
      ++n;
      const double cy = d.box.center_y();
      if (d.direction == "north") {
        EXPECT_LT(cy, kLayout.median_row());
      } else {
        ASSERT_EQ(d.direction, "south");
        EXPECT_GE(cy, kLayout.median_row());
      }
    }
  EXPECT_GT(n, 100u);
}

TEST(RunSequence, DirectionsIndependent) {
  const auto g = small_scene(2.0);
  const auto both = run(g, {"north", "south"});
  const auto north = run(g, {"north"});
  const auto south = run(g, {"south"});
  for (std::size_t f = 0; f < both.frames.size(); ++f) {
    std::vector<Detection> merged = north.frames[f].detections;
    merged.insert(merged.end(), south.frames[f].detections.begin(), south.frames[f].detections.end());
    ASSERT_EQ(both.frames[f].detections, merged) << f;
  }
}

TEST(RunSequence, Deterministic) {
  const auto g = small_scene(2.0);
  const auto a = run(g, {"north", "south"});
  const auto b = run(g, {"north", "south"});
  ASSERT_EQ(a.frames.size(), b.frames.size());
  for (std::size_t f = 0; f < a.frames.size(); ++f) ASSERT_EQ(a.frames[f], b.frames[f]);
}

TEST(RunSequence, NoiseFreeSceneMatchesTruthOneToOne) {
  const auto g = small_scene(0.0);
  const auto log = run(g, {"north", "south"});
  ScoringOptions opt;
  opt.sampling = {60, 255, 5};
  opt.iou_min = 0.5;
  for (const auto& r : score_log(log, g.truth, opt)) {
    EXPECT_EQ(r.fp, 0) << r.id.direction;
    EXPECT_EQ(r.fn, 0) << r.id.direction;
    EXPECT_GT(r.tp, 20) << r.id.direction;
  }
}

TEST(Scoring, TruthOutsideRoiIgnored) {
  BinaryMask roi(20, 20);
  for (int x = 0; x < 20; ++x)
    for (int y = 10; y < 20; ++y) roi.set(x, y, true);
  EXPECT_TRUE(truth_in_roi({0, 8, 4, 14}, roi));   // center row 11
  EXPECT_FALSE(truth_in_roi({0, 4, 4, 14}, roi));  // center row 9
  EXPECT_FALSE(truth_in_roi({0, 0, 0, 0}, roi));
}

TEST(Scoring, MissingSampledFrameThrows) {
  const auto g = small_scene(0.0);
  const auto log = run(g, {"north"});
  ScoringOptions opt;
  opt.sampling = {200, 300, 5};
  EXPECT_THROW(score_log(log, g.truth, opt), InvalidArgument);
}
