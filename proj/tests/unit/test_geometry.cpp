#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "uasdetect/error.hpp"
#include "uasdetect/geometry.hpp"

using namespace uasdetect;

namespace {

ScenarioGeometry geom(double h, double offset = 100.0) {
  ScenarioGeometry g;
  g.height_above_road = h;
  g.road_offset = offset;
  return g;
}

}  // namespace

TEST(SlantRange, HandComputedValues) {
  ScenarioGeometry g = geom(1.0, 100.0);
  g.height_above_road = 0.0;  // degenerate, bypasses validate()
  EXPECT_DOUBLE_EQ(slant_range(g), 100.0);
  EXPECT_NEAR(slant_range(geom(100)), 141.42, 0.005);
  EXPECT_NEAR(slant_range(geom(300)), 316.23, 0.005);
}

TEST(SlantRange, NeverShorterThanEitherLeg) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 1000.0);
  for (int i = 0; i < 1000; ++i) {
    const auto g = geom(d(rng) + 1e-3, d(rng));
    const double s = slant_range(g);
    EXPECT_GE(s, std::max(g.height_above_road, g.road_offset));
  }
  EXPECT_DOUBLE_EQ(slant_range(geom(250, 0)), 250.0);
  EXPECT_GT(slant_range(geom(250, 1)), 250.0);
}

TEST(LaunchAltitude, AddsElevationDelta) {
  EXPECT_DOUBLE_EQ(required_launch_altitude(100, 30), 130);
  EXPECT_DOUBLE_EQ(required_launch_altitude(100, 0), 100);
  EXPECT_DOUBLE_EQ(required_launch_altitude(100, -20), 80);
  EXPECT_THROW(required_launch_altitude(100, -100), InvalidArgument);
  EXPECT_THROW(required_launch_altitude(0, 30), InvalidArgument);
}

TEST(ExpectedArea, PinholeEstimate) {
  const auto g = geom(300);
  EXPECT_NEAR(expected_vehicle_area_px(g, 1000, 15, 6), 900.0, 0.5);
  EXPECT_DOUBLE_EQ(expected_vehicle_area_px(g, 1000, 0, 0), 0.0);
}

TEST(ExpectedArea, InverseSquareInSlantRange) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(1.0, 500.0);
  for (int i = 0; i < 200; ++i) {
    const auto near = geom(d(rng), d(rng));
    auto far2 = near;
    far2.height_above_road *= 2;
    far2.road_offset *= 2;
    auto far10 = near;
    far10.height_above_road *= 10;
    far10.road_offset *= 10;
    const double a = expected_vehicle_area_px(near, 800, 15, 6);
    EXPECT_NEAR(expected_vehicle_area_px(far2, 800, 15, 6), a / 4, 1e-9 * a);
    EXPECT_NEAR(expected_vehicle_area_px(far10, 800, 15, 6), a / 100, 1e-9 * a);
  }
}

TEST(ScenarioGeometry, ValidationNamesField) {
  auto g = geom(100);
  g.azimuth_deg = 200;
  try {
    g.validate();
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("azimuth"), std::string::npos);
  }
  g = geom(-1);
  EXPECT_THROW(g.validate(), InvalidArgument);
  g = geom(100);
  g.depression_deg = 0;
  EXPECT_THROW(g.validate(), InvalidArgument);
  g = geom(100);
  g.fov_length = 0.0;
  EXPECT_THROW(g.validate(), InvalidArgument);
}

TEST(ExpandGrid, StationaryFreeFlowGridHasFifteenPerBand) {
  const auto scenarios = expand_grid(stationary_free_flow_grid());
  ASSERT_EQ(scenarios.size(), 30u);
  int rgb = 0;
  for (const auto& s : scenarios) rgb += s.band == Band::RGB;
  EXPECT_EQ(rgb, 15);
  for (const auto& s : scenarios) {
    const double expected_depression = s.geometry.azimuth_deg == 90 ? 80 : 45;
    EXPECT_EQ(s.geometry.depression_deg, expected_depression);
    EXPECT_EQ(s.geometry.road_offset, 100);
  }
}

TEST(ExpandGrid, SingleEntryAxes) {
  ScenarioGrid g;
  g.heights = {100};
  g.azimuths = {45};
  EXPECT_EQ(expand_grid(g).size(), 1u);
}

TEST(ExpandGrid, VelocitiesMultiply) {
  auto g = stationary_free_flow_grid();
  g.velocities = {0, 5};
  EXPECT_EQ(expand_grid(g).size(), 60u);
}

TEST(ExpandGrid, EmptyAxisThrows) {
  auto g = stationary_free_flow_grid();
  g.heights.clear();
  EXPECT_THROW(expand_grid(g), InvalidArgument);
  g = stationary_free_flow_grid();
  g.depressions = {45, 45};
  EXPECT_THROW(expand_grid(g), InvalidArgument);
}

TEST(ExpandGrid, CountIsProductOfAxes) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> len(1, 5);
  for (int i = 0; i < 100; ++i) {
    ScenarioGrid g;
    for (int k = len(rng); k > 0; --k) g.heights.push_back(10.0 * k);
    for (int k = len(rng); k > 0; --k) g.azimuths.push_back(20.0 * k);
    g.velocities.clear();
    for (int k = len(rng); k > 0; --k) g.velocities.push_back(5.0 * (k - 1));
    g.bands = len(rng) % 2 ? std::vector<Band>{Band::RGB} : std::vector<Band>{Band::RGB, Band::IR};
    if (len(rng) % 2) {
      g.depressions.assign(g.azimuths.size(), 60.0);
    }
    EXPECT_EQ(expand_grid(g).size(),
              g.heights.size() * g.azimuths.size() * g.velocities.size() * g.bands.size());
  }
}

TEST(CutoffRow, Ceil) {
  EXPECT_EQ(cutoff_row(0.4, 1000), 400);
  EXPECT_EQ(cutoff_row(0.4, 480), 192);
  EXPECT_EQ(cutoff_row(0.0, 10), 0);
  EXPECT_EQ(cutoff_row(0.5, 7), 4);
}

TEST(RoiMask, CutoffTwoFifths) {
  RoiSpec spec{0.4, {{"all", rectangle_polygon(0, 0, 100, 1000)}}};
  const auto m = build_roi_mask(100, 1000, spec, "all");
  for (int y = 0; y < 1000; ++y)
    for (int x = 0; x < 100; x += 33) EXPECT_EQ(m.get(x, y), y >= 400 ? 1 : 0) << x << "," << y;
}

TEST(RoiMask, NoCutoffFullFrame) {
  RoiSpec spec{0.0, {{"all", rectangle_polygon(0, 0, 10, 10)}}};
  EXPECT_EQ(build_roi_mask(10, 10, spec, "all").count(), 100u);
}

TEST(RoiMask, LeftHalfBelowCutoff) {
  RoiSpec spec{0.5, {{"left", rectangle_polygon(0, 0, 10, 20)}}};
  const auto m = build_roi_mask(20, 20, spec, "left");
  const Polygon poly = rectangle_polygon(0, 0, 10, 20);
  std::vector<std::pair<double, double>> ref;
  for (const auto& p : poly) ref.emplace_back(p.x, p.y);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x) {
      const bool expected = y >= 10 && oracle::inside(ref, x + 0.5, y + 0.5);
      EXPECT_EQ(m.get(x, y), expected ? 1 : 0);
      EXPECT_EQ(expected, x < 10 && y >= 10);
    }
}

TEST(RoiMask, UnknownDirectionThrows) {
  RoiSpec spec{0.4, {{"north", rectangle_polygon(0, 0, 10, 10)}}};
  EXPECT_THROW(build_roi_mask(10, 10, spec, "south"), InvalidArgument);
}

TEST(RoiSpec, OverlappingPolygonsRejected) {
  RoiSpec spec{0.4, {{"a", rectangle_polygon(0, 0, 10, 10)}, {"b", rectangle_polygon(5, 0, 15, 10)}}};
  EXPECT_THROW(spec.validate(20, 10), InvalidArgument);
  spec.direction_polygons["b"] = rectangle_polygon(10, 0, 20, 10);
  EXPECT_NO_THROW(spec.validate(20, 10));
}

namespace {

Polygon random_polygon(std::mt19937_64& rng, int w, int h) {
  std::uniform_real_distribution<double> ux(-5.0, w + 5.0), uy(-5.0, h + 5.0);
  std::uniform_int_distribution<int> n(3, 8);
  Polygon p;
  for (int k = n(rng); k > 0; --k) p.push_back({ux(rng), uy(rng)});
  return p;
}

}  // namespace

TEST(RoiMask, RasterizationMatchesCrossingNumberOracle) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const int w = 1 + static_cast<int>(rng() % 40);
    const int h = 1 + static_cast<int>(rng() % 40);
    const Polygon poly = random_polygon(rng, w, h);
    std::vector<std::pair<double, double>> ref;
    for (const auto& p : poly) ref.emplace_back(p.x, p.y);
    const auto m = rasterize_polygon(poly, w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const bool expected = oracle::inside(ref, x + 0.5, y + 0.5);
        ASSERT_EQ(m.get(x, y) != 0, expected) << "case " << i << " pixel " << x << "," << y;
        ASSERT_EQ(pixel_in_polygon(poly, x, y), expected);
      }
  }
}

TEST(RoiMask, NeverActiveAboveCutoff) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> frac(0.0, 0.999);
  for (int i = 0; i < 500; ++i) {
    const int w = 1 + static_cast<int>(rng() % 64);
    const int h = 1 + static_cast<int>(rng() % 64);
    RoiSpec spec{frac(rng), {{"d", random_polygon(rng, w, h)}}};
    const auto m = build_roi_mask(w, h, spec, "d");
    const int first = static_cast<int>(std::ceil(spec.cutoff_fraction * h - 1e-9));
    for (int y = 0; y < std::min(first, h); ++y)
      for (int x = 0; x < w; ++x) ASSERT_EQ(m.get(x, y), 0) << "case " << i;
  }
}

TEST(Band, ParseAliases) {
  EXPECT_EQ(parse_band("rgb"), Band::RGB);
  EXPECT_EQ(parse_band("IFR"), Band::IR);
  EXPECT_EQ(parse_band("thermal"), Band::IR);
  EXPECT_THROW(parse_band("uv"), InvalidArgument);
}
