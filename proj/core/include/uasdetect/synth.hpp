#pragma once

// Deterministic synthetic traffic scenes with exact ground truth.
//
// Frame f is rendered independently of every other frame: background, then
// clutter flicker, then vehicles (in list order, later ones on top), then
// per-pixel noise drawn from xorshift64* seeded with mix64(seed ^ mix64(f)),
// one draw per pixel in raster order. Random access to any frame therefore
// gives the same pixels as sequential generation.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "uasdetect/box.hpp"
#include "uasdetect/frame.hpp"
#include "uasdetect/geometry.hpp"

namespace uasdetect {

enum class BackgroundKind { Flat, Textured };

struct BackgroundSpec {
  BackgroundKind kind = BackgroundKind::Flat;
  double intensity = 90.0;
  // Textured only: static per-pixel offset, uniform in +/- amplitude.
  double texture_amplitude = 0.0;
};

// A static patch that flares periodically. The region is split into cells
// of `cell_size` pixels; each cell gets its own phase and an amplitude scale
// in [0.5, 1]. For the first `duty` fraction of every period a cell
// brightens along a triangular pulse peaking at amplitude * scale; it sits
// at the background level otherwise.
struct ClutterRegion {
  Box region;
  double amplitude = 0.0;
  int period = 60;
  int cell_size = 8;
  double duty = 1.0;
};

enum class BandLike { RgbLike, IrLike };

struct BandModel {
  BandLike kind = BandLike::RgbLike;
  double noise_sigma = 2.0;
  std::vector<ClutterRegion> clutter;

  // No clutter, light sensor noise.
  static BandModel rgb_like(double noise_sigma = 2.0);
  // Heavier noise plus flaring strips along both road edges and the median
  // (all clipped to the road rows).
  static BandModel ir_like(int frame_width, int road_top, int road_bottom,
                           int median_row, double amplitude = 120.0,
                           double noise_sigma = 3.0);
};

struct VehicleSpec {
  int id = 0;
  int entry_frame = 0;
  int duration = 1;           // active for [entry_frame, entry_frame + duration)
  std::string direction;
  int x = 0;                  // left edge at entry_frame
  int y = 0;                  // top row of the lane band the vehicle occupies
  int speed = 1;              // signed px/frame along x, |speed| >= 1
  int width = 20;
  int height = 10;
  std::uint8_t intensity = 200;

  Box box_at(int frame) const {
    const int dx = speed * (frame - entry_frame);
    return Box{x + dx, y, x + dx + width, y + height};
  }
  bool active_at(int frame) const {
    return frame >= entry_frame && frame < entry_frame + duration;
  }
};

struct SceneConfig {
  int width = 640;
  int height = 480;
  int frame_count = 750;
  std::uint64_t seed = 1;
  BackgroundSpec background;
  std::vector<VehicleSpec> vehicles;
  BandModel band_model;
  double cutoff_fraction = 0.4;
  std::map<std::string, Polygon> direction_polygons;

  // Throws InvalidArgument, naming the vehicle, when a box leaves the frame
  // while active or a speed is below 1 px/frame in magnitude.
  void validate() const;
};

struct GroundTruthEntry {
  std::string direction;
  Box box;
  int vehicle_id = 0;

  friend bool operator==(const GroundTruthEntry&, const GroundTruthEntry&) = default;
};

struct GroundTruthLog {
  int width = 0;
  int height = 0;
  std::vector<std::vector<GroundTruthEntry>> frames;  // index = frame
};

class SceneRenderer {
 public:
  explicit SceneRenderer(SceneConfig config);

  const SceneConfig& config() const { return config_; }
  int frame_count() const { return config_.frame_count; }

  Frame render(int frame_index) const;
  std::vector<GroundTruthEntry> truth(int frame_index) const;
  GroundTruthLog truth_log() const;
  RoiSpec roi() const;

 private:
  SceneConfig config_;
  std::vector<float> base_;  // background plus static texture
  struct Cell {
    double phase;
    double scale;
  };
  std::vector<std::vector<Cell>> clutter_cells_;
};

struct GeneratedScene {
  std::vector<Frame> frames;
  GroundTruthLog truth;
  RoiSpec roi;
};

GeneratedScene generate(const SceneConfig& config);

// Re-places the second of the first two vehicles sharing a direction so it
// trails the first in the same lane, overlapping it by `overlap_fraction` of
// its width; it inherits the leader's entry frame, duration, and speed, and
// is drawn underneath. With overlap 0 the pair is separated by a clearance
// gap wide enough that a 3x3 closing cannot bridge it. A positive
// `vertical_gap_px` moves the trailing vehicle down below the leader by
// that many rows, as a higher viewpoint would separate them.
// Throws InvalidArgument for a fraction outside [0, 1) or when no two
// vehicles share a direction.
SceneConfig occlusion_scene(const SceneConfig& base, double overlap_fraction,
                            int vertical_gap_px = 0);

// Two-direction highway layout used by the presets: road occupies the rows
// below the 2/5 cutoff; "north" lanes in the upper half of the road move
// left, "south" lanes in the lower half move right.
struct HighwayLayout {
  int width = 640;
  int height = 480;
  double cutoff_fraction = 0.4;
  int road_top() const;
  int median_row() const;
  int road_bottom() const { return height; }
  std::map<std::string, Polygon> direction_polygons() const;
  // Top rows of the lanes for a direction (two lanes per direction).
  std::vector<int> lane_rows(const std::string& direction,
                             int vehicle_height) const;
};

// Free-flow scene: vehicles enter at the frame edge on alternating lanes
// every `headway` frames per direction and traverse the frame. Lane speeds
// are raised as needed so a vehicle covers any road pixel for at most
// kFreeFlowMaxOccupancy of the frames, keeping the scene inside the regime
// where the default mixture (background_ratio 0.9) treats vehicles as
// foreground. With an IR-like band every vehicle is brighter than the road.
inline constexpr double kFreeFlowMaxOccupancy = 0.05;
SceneConfig free_flow_scene(const HighwayLayout& layout, int frame_count,
                            std::uint64_t seed, int headway = 40,
                            BandModel band = BandModel::rgb_like());

}  // namespace uasdetect
