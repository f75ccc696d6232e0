#pragma once

// Drone/sensor placement relative to the roadway, the scenario grid used for
// data collection, and detection parameters derived from them.
//
// Units follow the field campaign: feet for distances, degrees for angles,
// mph for drone speed. Conversions stay inside this module.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uasdetect/mask.hpp"

namespace uasdetect {

enum class Band { RGB, IR };

std::string_view to_string(Band band);
// Accepts "RGB", "IR" (also "IFR" and "thermal"), case-insensitive.
Band parse_band(std::string_view text);

enum class Traffic { FreeFlow };

struct ScenarioGeometry {
  double height_above_road = 100.0;   // D_H, ft
  double road_offset = 100.0;         // D_DR, ft
  double azimuth_deg = 90.0;          // psi
  double depression_deg = 45.0;       // alpha
  std::optional<double> fov_length;   // l, ft; metadata only
  double drone_speed_mph = 0.0;       // recorded, unused by detection

  // Throws InvalidArgument naming the offending field.
  void validate() const;
};

struct Scenario {
  ScenarioGeometry geometry;
  Band band = Band::RGB;
  Traffic traffic = Traffic::FreeFlow;
};

// Axes of a data-collection grid. `depressions` holds either one value
// shared by every azimuth or exactly one value per azimuth (paired by
// position), since the campaign tied depression to azimuth rather than
// varying it independently. `velocities` multiplies the grid; the detection
// experiments use only the stationary entry {0}.
struct ScenarioGrid {
  std::vector<double> heights;
  std::vector<double> azimuths;
  std::vector<double> depressions{45.0};
  std::vector<double> velocities{0.0};
  std::vector<Band> bands{Band::RGB};
  double road_offset = 100.0;
  Traffic traffic = Traffic::FreeFlow;
};

// Stationary free-flow grid: heights {50,100,200,300,400} ft, azimuths
// {45,90,135} deg with depressions {45,80,45}, both bands.
ScenarioGrid stationary_free_flow_grid();

// Cartesian expansion in (band, height, azimuth, velocity) order. Throws
// InvalidArgument on an empty axis or a depression list that matches
// neither rule above.
std::vector<Scenario> expand_grid(const ScenarioGrid& grid);

// Straight-line distance to the abeam roadway point, sqrt(D_H^2 + D_DR^2).
double slant_range(const ScenarioGeometry& geom);

// Altitude to command relative to the launch point so the drone sits
// `target_height_above_road` above a road that is `road_minus_launch_elevation`
// feet higher than the launch point. Throws when the result is not positive.
double required_launch_altitude(double target_height_above_road,
                                double road_minus_launch_elevation);

// Pinhole estimate L * W * (focal / slant)^2 of a vehicle's image area.
double expected_vehicle_area_px(const ScenarioGeometry& geom,
                                double focal_length_px, double vehicle_length_ft,
                                double vehicle_width_ft);

struct PointF {
  double x = 0.0;
  double y = 0.0;
};
using Polygon = std::vector<PointF>;

// Frame-level region of interest: rows above the cutoff are never processed,
// and each road direction gets its own polygon in pixel coordinates (pixel
// (c, r) spans [c, c+1) x [r, r+1)).
struct RoiSpec {
  double cutoff_fraction = 0.4;
  std::map<std::string, Polygon> direction_polygons;

  // Checks the cutoff range, that every polygon has >= 3 vertices, and that
  // rasterized polygons are pairwise disjoint for a frame of the given size.
  void validate(int frame_width, int frame_height) const;
};

// First active row: ceil(cutoff_fraction * frame_height).
int cutoff_row(double cutoff_fraction, int frame_height);

// Even-odd test of the pixel center (col + 0.5, row + 0.5).
bool pixel_in_polygon(const Polygon& polygon, int col, int row);

BinaryMask rasterize_polygon(const Polygon& polygon, int frame_width,
                             int frame_height);

// Rasterized direction polygon intersected with the rows at or below the
// cutoff. Throws InvalidArgument for an unknown direction label.
BinaryMask build_roi_mask(int frame_width, int frame_height,
                          const RoiSpec& spec, std::string_view direction);

Polygon rectangle_polygon(double x_min, double y_min, double x_max,
                          double y_max);

}  // namespace uasdetect
