#include <gtest/gtest.h>

#include <random>

#include "uasdetect/error.hpp"
#include "uasdetect/synth.hpp"

using namespace uasdetect;

namespace {

SceneConfig blank_scene(int frames = 20) {
  SceneConfig s;
  s.width = 120;
  s.height = 80;
  s.frame_count = frames;
  s.seed = 9;
  s.band_model = BandModel::rgb_like(0.0);
  s.direction_polygons = HighwayLayout{120, 80, 0.4}.direction_polygons();
  return s;
}

VehicleSpec vehicle(int id, int entry, int duration, const char* dir, int x, int y, int speed) {
  VehicleSpec v;
  v.id = id;
  v.entry_frame = entry;
  v.duration = duration;
  v.direction = dir;
  v.x = x;
  v.y = y;
  v.speed = speed;
  v.width = 12;
  v.height = 6;
  return v;
}

double region_variance(const std::vector<Frame>& frames, const Box& r) {
  double sum = 0, sum2 = 0, n = 0;
  for (const auto& f : frames)
    for (int y = r.y_min; y < r.y_max; ++y)
      for (int x = r.x_min; x < r.x_max; ++x) {
        const double v = f.at(x, y);
        sum += v;
        sum2 += v * v;
        ++n;
      }
  // Pooled over time and space; clutter flicker raises the temporal part.
  return sum2 / n - (sum / n) * (sum / n);
}

}  // namespace

TEST(Synth, VehiclesAdvanceBySpeed) {
  SceneConfig s = blank_scene(100);
  s.width = 400;
  s.vehicles = {vehicle(1, 0, 100, "south", 0, 60, 3), vehicle(2, 10, 90, "north", 380, 40, -3)};
  const auto g = generate(s);
  for (int f = 1; f < 100; ++f) {
    for (const auto& e : g.truth.frames[static_cast<std::size_t>(f)]) {
      const auto& prev = g.truth.frames[static_cast<std::size_t>(f - 1)];
      for (const auto& p : prev)
        if (p.vehicle_id == e.vehicle_id) {
          EXPECT_EQ(e.box.x_min - p.box.x_min, e.vehicle_id == 1 ? 3 : -3);
          EXPECT_EQ(e.box.y_min, p.box.y_min);
        }
    }
  }
}

TEST(Synth, NoVehiclesMeansEmptyTruthAndBackgroundFrames) {
  const auto g = generate(blank_scene());
  for (const auto& frame_truth : g.truth.frames) EXPECT_TRUE(frame_truth.empty());
  for (const auto& f : g.frames) EXPECT_EQ(f, Frame(120, 80, 1, 90));
}

TEST(Synth, TruthCountEqualsActiveVehicles) {
  const SceneConfig s = free_flow_scene(HighwayLayout{}, 300, 4);
  const SceneRenderer r(s);
  for (int f = 0; f < 300; f += 7) {
    int active = 0;
    for (const auto& v : s.vehicles) active += v.active_at(f);
    const auto truth = r.truth(f);
    ASSERT_EQ(static_cast<int>(truth.size()), active);
    for (const auto& t : truth) EXPECT_TRUE(t.box.within(s.width, s.height));
  }
}

TEST(Synth, TruthBoxesAreRenderedRectangles) {
  SceneConfig s = blank_scene(5);
  s.vehicles = {vehicle(1, 0, 5, "south", 10, 60, 2)};
  s.vehicles[0].intensity = 250;
  const SceneRenderer r(s);
  for (int f = 0; f < 5; ++f) {
    const Frame frame = r.render(f);
    const Box b = r.truth(f).at(0).box;
    for (int y = 0; y < s.height; ++y)
      for (int x = 0; x < s.width; ++x) {
        const bool in = x >= b.x_min && x < b.x_max && y >= b.y_min && y < b.y_max;
        ASSERT_EQ(frame.at(x, y), in ? 250 : 90);
      }
  }
}

TEST(Synth, SameSeedSameBytes) {
  const SceneConfig s = free_flow_scene(HighwayLayout{160, 120, 0.4}, 40, 77, 10,
                                        BandModel::ir_like(160, 48, 120, 84));
  const auto a = generate(s);
  const auto b = generate(s);
  EXPECT_EQ(a.frames, b.frames);
  SceneConfig other = s;
  other.seed = 78;
  EXPECT_NE(generate(other).frames, a.frames);
}

TEST(Synth, RandomAccessMatchesSequential) {
  const SceneConfig s = free_flow_scene(HighwayLayout{160, 120, 0.4}, 30, 5, 10,
                                        BandModel::ir_like(160, 48, 120, 84));
  const auto g = generate(s);
  const SceneRenderer r(s);
  for (int f : {29, 0, 17, 3}) EXPECT_EQ(r.render(f), g.frames[static_cast<std::size_t>(f)]);
}

TEST(Synth, IrClutterVarianceDominatesRgb) {
  const HighwayLayout layout{160, 120, 0.4};
  SceneConfig ir = blank_scene(500);
  ir.width = 160;
  ir.height = 120;
  ir.band_model = BandModel::ir_like(160, layout.road_top(), layout.road_bottom(), layout.median_row(), 40.0);
  SceneConfig rgb = ir;
  rgb.band_model = BandModel::rgb_like();
  ASSERT_FALSE(ir.band_model.clutter.empty());
  EXPECT_TRUE(rgb.band_model.clutter.empty());
  const Box region = ir.band_model.clutter.front().region;
  const double v_ir = region_variance(generate(ir).frames, region);
  const double v_rgb = region_variance(generate(rgb).frames, region);
  EXPECT_GE(v_ir, 10.0 * v_rgb) << v_ir << " vs " << v_rgb;
}

TEST(Synth, ValidationRejectsBadVehicles) {
  SceneConfig s = blank_scene(50);
  s.vehicles = {vehicle(1, 0, 50, "south", 100, 60, 2)};  // leaves the frame
  EXPECT_THROW(s.validate(), InvalidArgument);
  EXPECT_THROW(generate(s), InvalidArgument);
  s.vehicles = {vehicle(1, 0, 5, "south", 10, 60, 0)};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.vehicles = {vehicle(1, 0, 5, "south", 10, 60, 1)};
  EXPECT_NO_THROW(s.validate());
}

TEST(Occlusion, PlacesOverlappingPair) {
  SceneConfig s = blank_scene(60);
  s.width = 300;
  s.vehicles = {vehicle(1, 5, 50, "south", 100, 60, 2), vehicle(2, 20, 30, "south", 10, 60, 3)};
  const SceneConfig o = occlusion_scene(s, 0.5);
  ASSERT_EQ(o.vehicles.size(), 2u);
  const auto& trailer = o.vehicles[0];
  const auto& leader = o.vehicles[1];
  EXPECT_EQ(leader.id, 1);
  EXPECT_EQ(trailer.entry_frame, leader.entry_frame);
  EXPECT_EQ(trailer.speed, leader.speed);
  EXPECT_EQ(trailer.y, leader.y);
  const Box a = leader.box_at(leader.entry_frame);
  const Box b = trailer.box_at(leader.entry_frame);
  EXPECT_EQ(intersection(a, b).width(), 6);

  const SceneConfig apart = occlusion_scene(s, 0.0);
  EXPECT_TRUE(intersection(apart.vehicles[0].box_at(5), apart.vehicles[1].box_at(5)).empty());

  const SceneConfig stacked = occlusion_scene(s, 0.5, 3);
  EXPECT_EQ(stacked.vehicles[0].y, stacked.vehicles[1].y + 6 + 3);
}

TEST(Occlusion, Errors) {
  SceneConfig s = blank_scene(60);
  s.vehicles = {vehicle(1, 5, 10, "south", 10, 60, 2), vehicle(2, 5, 10, "north", 10, 40, 2)};
  EXPECT_THROW(occlusion_scene(s, 0.5), InvalidArgument);
  s.vehicles[1].direction = "south";
  EXPECT_THROW(occlusion_scene(s, 1.0), InvalidArgument);
  EXPECT_THROW(occlusion_scene(s, -0.1), InvalidArgument);
}

TEST(FreeFlow, LaneDiscipline) {
  const HighwayLayout layout;
  const SceneConfig s = free_flow_scene(layout, 750, 11);
  EXPECT_GE(s.vehicles.size(), 30u);
  for (const auto& v : s.vehicles) {
    const Box b = v.box_at(v.entry_frame);
    if (v.direction == "north") {
      EXPECT_LT(v.speed, 0);
      EXPECT_GE(b.y_min, layout.road_top());
      EXPECT_LE(b.y_max, layout.median_row());
    } else {
      EXPECT_GT(v.speed, 0);
      EXPECT_GE(b.y_min, layout.median_row());
      EXPECT_LE(b.y_max, layout.road_bottom());
    }
  }
}

TEST(Clutter, FlaresOnlyWithinDutyWindow) {
  SceneConfig s = blank_scene(40);
  s.band_model.clutter = {ClutterRegion{Box{0, 40, 120, 48}, 100.0, 20, 8, 0.25}};
  const auto g = generate(s);
  // Per cell: lit for 5 of every 20 frames, background otherwise, never
  // darker than background, peak between 50 and 100 above it.
  for (int cell = 0; cell < 15; ++cell) {
    int lit = 0;
    int peak = 0;
    for (const auto& f : g.frames) {
      const int v = f.at(cell * 8, 40);
      ASSERT_GE(v, 90);
      lit += v > 90;
      peak = std::max(peak, v - 90);
      for (int y = 40; y < 48; ++y)
        for (int x = cell * 8; x < cell * 8 + 8; ++x) ASSERT_EQ(f.at(x, y), v);
    }
    EXPECT_LE(lit, 2 * 5);
    EXPECT_GE(peak, 50 * 4 / 5);
    EXPECT_LE(peak, 100);
  }
  for (const auto& f : g.frames) EXPECT_EQ(f.at(0, 39), 90);
}

TEST(Clutter, RejectsBadDuty) {
  SceneConfig s = blank_scene();
  s.band_model.clutter = {ClutterRegion{Box{0, 40, 120, 48}, 40.0, 20, 8, 0.0}};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.band_model.clutter[0].duty = 1.5;
  EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(FreeFlow, PixelOccupancyBounded) {
  for (int headway : {10, 20, 40, 80}) {
    const HighwayLayout layout{320, 240, 0.4};
    const SceneConfig s = free_flow_scene(layout, 400, 3, headway);
    for (const auto& v : s.vehicles) {
      const double frames_per_pixel = static_cast<double>(v.width) / std::abs(v.speed);
      EXPECT_LE(frames_per_pixel / (2.0 * headway), kFreeFlowMaxOccupancy) << headway;
    }
  }
}

TEST(FreeFlow, IrVehiclesWarmerThanRoad) {
  const HighwayLayout layout;
  const SceneConfig s = free_flow_scene(
      layout, 300, 4, 40, BandModel::ir_like(layout.width, layout.road_top(), layout.road_bottom(), layout.median_row()));
  ASSERT_FALSE(s.vehicles.empty());
  for (const auto& v : s.vehicles) EXPECT_GE(v.intensity, s.background.intensity + 100);
}
