#include "uasdetect/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "uasdetect/error.hpp"

namespace uasdetect {

std::string_view to_string(Band band) {
  switch (band) {
    case Band::RGB:
      return "RGB";
    case Band::IR:
      return "IR";
  }
  return "?";
}

Band parse_band(std::string_view text) {
  std::string upper(text);
  for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (upper == "RGB") return Band::RGB;
  if (upper == "IR" || upper == "IFR" || upper == "THERMAL") return Band::IR;
  throw InvalidArgument("unknown band '" + std::string(text) + "' (expected RGB or IR)");
}

void ScenarioGeometry::validate() const {
  if (!(height_above_road > 0.0))
    throw InvalidArgument("height_above_road must be > 0");
  if (!(road_offset >= 0.0)) throw InvalidArgument("road_offset must be >= 0");
  if (!(azimuth_deg >= 0.0 && azimuth_deg <= 180.0))
    throw InvalidArgument("azimuth must be within [0, 180] degrees");
  if (!(depression_deg > 0.0 && depression_deg <= 90.0))
    throw InvalidArgument("depression must be within (0, 90] degrees");
  if (fov_length && !(*fov_length > 0.0))
    throw InvalidArgument("fov_length must be > 0 when present");
  if (!(drone_speed_mph >= 0.0)) throw InvalidArgument("drone_speed must be >= 0");
}

ScenarioGrid stationary_free_flow_grid() {
  ScenarioGrid grid;
  grid.heights = {50, 100, 200, 300, 400};
  grid.azimuths = {45, 90, 135};
  // The 90-degree views were flown at 70-90 degrees depression.
  grid.depressions = {45, 80, 45};
  grid.velocities = {0};
  grid.bands = {Band::RGB, Band::IR};
  grid.road_offset = 100;
  return grid;
}

std::vector<Scenario> expand_grid(const ScenarioGrid& grid) {
  if (grid.heights.empty()) throw InvalidArgument("scenario grid: heights is empty");
  if (grid.azimuths.empty()) throw InvalidArgument("scenario grid: azimuths is empty");
  if (grid.depressions.empty())
    throw InvalidArgument("scenario grid: depressions is empty");
  if (grid.velocities.empty())
    throw InvalidArgument("scenario grid: velocities is empty");
  if (grid.bands.empty()) throw InvalidArgument("scenario grid: bands is empty");
  const bool paired = grid.depressions.size() == grid.azimuths.size();
  if (!paired && grid.depressions.size() != 1)
    throw InvalidArgument(
        "scenario grid: depressions must hold one value or one per azimuth");

  std::vector<Scenario> out;
  out.reserve(grid.bands.size() * grid.heights.size() * grid.azimuths.size() *
              grid.velocities.size());
  for (Band band : grid.bands) {
    for (double h : grid.heights) {
      for (std::size_t a = 0; a < grid.azimuths.size(); ++a) {
        for (double v : grid.velocities) {
          Scenario s;
          s.band = band;
          s.traffic = grid.traffic;
          s.geometry.height_above_road = h;
          s.geometry.road_offset = grid.road_offset;
          s.geometry.azimuth_deg = grid.azimuths[a];
          s.geometry.depression_deg = paired ? grid.depressions[a] : grid.depressions[0];
          s.geometry.drone_speed_mph = v;
          s.geometry.validate();
          out.push_back(s);
        }
      }
    }
  }
  return out;
}

double slant_range(const ScenarioGeometry& geom) {
  return std::hypot(geom.height_above_road, geom.road_offset);
}

double required_launch_altitude(double target_height_above_road,
                                double road_minus_launch_elevation) {
  if (!(target_height_above_road > 0.0))
    throw InvalidArgument("target height above road must be > 0");
  const double altitude = target_height_above_road + road_minus_launch_elevation;
  if (!(altitude > 0.0))
    throw InvalidArgument("required altitude " + std::to_string(altitude) +
                          " ft puts the drone at or below the launch point");
  return altitude;
}

double expected_vehicle_area_px(const ScenarioGeometry& geom, double focal_length_px,
                                double vehicle_length_ft, double vehicle_width_ft) {
  if (!(focal_length_px > 0.0)) throw InvalidArgument("focal_length_px must be > 0");
  const double scale = focal_length_px / slant_range(geom);
  return vehicle_length_ft * vehicle_width_ft * scale * scale;
}

int cutoff_row(double cutoff_fraction, int frame_height) {
  const double rows = cutoff_fraction * frame_height;
  const double nearest = std::round(rows);
  // Absorb representation error such as 0.4 * 1000 = 400.00000000000006.
  if (std::abs(rows - nearest) < 1e-9) return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(rows));
}

namespace {

// x coordinates where the polygon boundary crosses the horizontal line y,
// using the half-open rule (a.y > y) != (b.y > y) so vertices are not
// double counted.
void scanline_crossings(const Polygon& poly, double y, std::vector<double>& xs) {
  xs.clear();
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const PointF& a = poly[i];
    const PointF& b = poly[j];
    if ((a.y > y) != (b.y > y)) {
      xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
  }
  std::sort(xs.begin(), xs.end());
}

}  // namespace

bool pixel_in_polygon(const Polygon& polygon, int col, int row) {
  if (polygon.size() < 3) return false;
  const double px = col + 0.5;
  const double py = row + 0.5;
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const PointF& a = polygon[i];
    const PointF& b = polygon[j];
    if ((a.y > py) != (b.y > py)) {
      const double x = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y);
      if (px < x) inside = !inside;
    }
  }
  return inside;
}

BinaryMask rasterize_polygon(const Polygon& polygon, int frame_width, int frame_height) {
  BinaryMask mask(frame_width, frame_height);
  if (polygon.size() < 3) return mask;
  std::vector<double> xs;
  for (int row = 0; row < frame_height; ++row) {
    scanline_crossings(polygon, row + 0.5, xs);
    if (xs.empty()) continue;
    // A center px is inside when an odd number of crossings lie strictly to
    // its right.
    std::size_t passed = 0;  // crossings with x <= px
    for (int col = 0; col < frame_width; ++col) {
      const double px = col + 0.5;
      while (passed < xs.size() && xs[passed] <= px) ++passed;
      if ((xs.size() - passed) % 2 == 1) mask.set(col, row, true);
    }
  }
  return mask;
}

void RoiSpec::validate(int frame_width, int frame_height) const {
  if (!(cutoff_fraction >= 0.0 && cutoff_fraction < 1.0))
    throw InvalidArgument("roi cutoff_fraction must be within [0, 1)");
  if (direction_polygons.empty())
    throw InvalidArgument("roi must define at least one direction polygon");
  std::vector<std::pair<std::string, BinaryMask>> masks;
  for (const auto& [label, poly] : direction_polygons) {
    if (poly.size() < 3)
      throw InvalidArgument("roi polygon '" + label + "' needs at least 3 vertices");
    if (frame_width > 0 && frame_height > 0)
      masks.emplace_back(label, rasterize_polygon(poly, frame_width, frame_height));
  }
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      auto a = masks[i].second.bits();
      auto b = masks[j].second.bits();
      for (std::size_t p = 0; p < a.size(); ++p) {
        if (a[p] && b[p])
          throw InvalidArgument("roi polygons '" + masks[i].first + "' and '" +
                                masks[j].first + "' overlap");
      }
    }
  }
}

BinaryMask build_roi_mask(int frame_width, int frame_height, const RoiSpec& spec,
                          std::string_view direction) {
  if (frame_width <= 0 || frame_height <= 0)
    throw InvalidArgument("frame dimensions must be positive");
  auto it = spec.direction_polygons.find(std::string(direction));
  if (it == spec.direction_polygons.end())
    throw InvalidArgument("unknown direction '" + std::string(direction) + "'");
  BinaryMask mask = rasterize_polygon(it->second, frame_width, frame_height);
  const int first = std::min(cutoff_row(spec.cutoff_fraction, frame_height), frame_height);
  auto bits = mask.bits();
  std::fill(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(first) * frame_width,
            std::uint8_t{0});
  return mask;
}

Polygon rectangle_polygon(double x_min, double y_min, double x_max, double y_max) {
  return {{x_min, y_min}, {x_max, y_min}, {x_max, y_max}, {x_min, y_max}};
}

}  // namespace uasdetect
