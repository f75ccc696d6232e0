#include "uasdetect/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uasdetect/error.hpp"
#include "uasdetect/rng.hpp"

namespace uasdetect {

namespace {

constexpr std::uint64_t kTextureSalt = 0x7E37'0A1D'5EED'0001ULL;
constexpr std::uint64_t kClutterSalt = 0xC107'7E40'0000'0002ULL;
// Gap left between an unoverlapped occlusion pair; a 3x3 closing bridges
// gaps of up to 2 pixels.
constexpr int kClearancePx = 4;

double unit_hash(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  const std::uint64_t h = mix64(a ^ mix64(b ^ mix64(c)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Period 1: a triangular pulse from 0 up to 1 and back over [0, duty), then
// 0 for the rest of the period.
double pulse(double t, double duty) {
  const double frac = t - std::floor(t);
  if (frac >= duty) return 0.0;
  return 1.0 - std::abs(2.0 * frac / duty - 1.0);
}

std::string vehicle_label(const VehicleSpec& v) { return "vehicle " + std::to_string(v.id); }

}  // namespace

BandModel BandModel::rgb_like(double noise_sigma) {
  BandModel m;
  m.kind = BandLike::RgbLike;
  m.noise_sigma = noise_sigma;
  return m;
}

BandModel BandModel::ir_like(int frame_width, int road_top, int road_bottom, int median_row,
                             double amplitude, double noise_sigma) {
  BandModel m;
  m.kind = BandLike::IrLike;
  m.noise_sigma = noise_sigma;
  constexpr int kStrip = 16;
  auto add = [&](int y0, int y1) {
    y0 = std::max(y0, road_top);
    y1 = std::min(y1, road_bottom);
    if (y1 > y0) m.clutter.push_back(ClutterRegion{Box{0, y0, frame_width, y1}, amplitude, 60, 8, 0.25});
  };
  add(road_top, road_top + kStrip);                          // near roadside
  add(median_row - kStrip / 2, median_row + kStrip / 2);     // median
  add(road_bottom - kStrip, road_bottom);                    // far roadside
  return m;
}

void SceneConfig::validate() const {
  if (width <= 0 || height <= 0) throw InvalidArgument("scene dimensions must be positive");
  if (frame_count < 1) throw InvalidArgument("scene frame_count must be >= 1");
  if (!(cutoff_fraction >= 0.0 && cutoff_fraction < 1.0))
    throw InvalidArgument("scene cutoff_fraction must be within [0, 1)");
  if (!(band_model.noise_sigma >= 0.0)) throw InvalidArgument("noise_sigma must be >= 0");
  for (const auto& c : band_model.clutter) {
    if (c.period < 1) throw InvalidArgument("clutter period must be >= 1");
    if (c.cell_size < 1) throw InvalidArgument("clutter cell_size must be >= 1");
    if (!(c.duty > 0.0 && c.duty <= 1.0)) throw InvalidArgument("clutter duty must be within (0, 1]");
    if (!c.region.valid()) throw InvalidArgument("clutter region is malformed");
  }
  if (!direction_polygons.empty()) {
    RoiSpec{cutoff_fraction, direction_polygons}.validate(width, height);
  }
  for (const auto& v : vehicles) {
    const std::string who = vehicle_label(v);
    if (std::abs(v.speed) < 1) throw InvalidArgument(who + ": speed must be >= 1 px/frame");
    if (v.width < 1 || v.height < 1) throw InvalidArgument(who + ": size must be positive");
    if (v.duration < 1) throw InvalidArgument(who + ": duration must be >= 1");
    if (v.entry_frame < 0) throw InvalidArgument(who + ": entry_frame must be >= 0");
    if (!direction_polygons.empty() && !direction_polygons.contains(v.direction))
      throw InvalidArgument(who + ": unknown direction '" + v.direction + "'");
    const Box first = v.box_at(v.entry_frame);
    const Box last = v.box_at(v.entry_frame + v.duration - 1);
    if (!first.within(width, height) || !last.within(width, height))
      throw InvalidArgument(who + " leaves the frame while active");
  }
}

SceneRenderer::SceneRenderer(SceneConfig config) : config_(std::move(config)) {
  config_.validate();
  const auto& bg = config_.background;
  base_.assign(static_cast<std::size_t>(config_.width) * config_.height,
               static_cast<float>(bg.intensity));
  if (bg.kind == BackgroundKind::Textured && bg.texture_amplitude != 0.0) {
    for (std::size_t p = 0; p < base_.size(); ++p) {
      const double u = unit_hash(config_.seed, kTextureSalt, p);
      base_[p] = static_cast<float>(bg.intensity + bg.texture_amplitude * (2.0 * u - 1.0));
    }
  }
  for (std::size_t r = 0; r < config_.band_model.clutter.size(); ++r) {
    const auto& region = config_.band_model.clutter[r];
    const int cols = (region.region.width() + region.cell_size - 1) / region.cell_size;
    const int rows = (region.region.height() + region.cell_size - 1) / region.cell_size;
    std::vector<Cell> cells(static_cast<std::size_t>(std::max(0, cols * rows)));
    for (std::size_t i = 0; i < cells.size(); ++i) {
      cells[i].phase = unit_hash(config_.seed ^ kClutterSalt, r, 2 * i);
      cells[i].scale = 0.5 + 0.5 * unit_hash(config_.seed ^ kClutterSalt, r, 2 * i + 1);
    }
    clutter_cells_.push_back(std::move(cells));
  }
}

Frame SceneRenderer::render(int frame_index) const {
  const int w = config_.width;
  const int h = config_.height;
  std::vector<double> value(base_.begin(), base_.end());

  for (std::size_t r = 0; r < config_.band_model.clutter.size(); ++r) {
    const auto& c = config_.band_model.clutter[r];
    const Box area = intersection(c.region, Box{0, 0, w, h});
    const int cols = (c.region.width() + c.cell_size - 1) / c.cell_size;
    for (int y = area.y_min; y < area.y_max; ++y) {
      for (int x = area.x_min; x < area.x_max; ++x) {
        const int cell = ((y - c.region.y_min) / c.cell_size) * cols +
                         (x - c.region.x_min) / c.cell_size;
        const Cell& k = clutter_cells_[r][cell];
        const double t = static_cast<double>(frame_index) / c.period + k.phase;
        value[static_cast<std::size_t>(y) * w + x] += c.amplitude * k.scale * pulse(t, c.duty);
      }
    }
  }

  for (const auto& v : config_.vehicles) {
    if (!v.active_at(frame_index)) continue;
    const Box b = v.box_at(frame_index);
    for (int y = b.y_min; y < b.y_max; ++y) {
      for (int x = b.x_min; x < b.x_max; ++x) {
        value[static_cast<std::size_t>(y) * w + x] = v.intensity;
      }
    }
  }

  const double sigma = config_.band_model.noise_sigma;
  if (sigma > 0.0) {
    XorShift64Star rng(mix64(config_.seed ^ mix64(static_cast<std::uint64_t>(frame_index))));
    for (auto& v : value) v += sigma * rng.normal();
  }

  Frame out(w, h, 1);
  auto data = out.data();
  for (std::size_t p = 0; p < value.size(); ++p) {
    data[p] = static_cast<std::uint8_t>(std::clamp(std::lround(value[p]), 0L, 255L));
  }
  return out;
}

std::vector<GroundTruthEntry> SceneRenderer::truth(int frame_index) const {
  std::vector<GroundTruthEntry> out;
  for (const auto& v : config_.vehicles) {
    if (v.active_at(frame_index)) out.push_back({v.direction, v.box_at(frame_index), v.id});
  }
  return out;
}

GroundTruthLog SceneRenderer::truth_log() const {
  GroundTruthLog log;
  log.width = config_.width;
  log.height = config_.height;
  log.frames.reserve(static_cast<std::size_t>(config_.frame_count));
  for (int f = 0; f < config_.frame_count; ++f) log.frames.push_back(truth(f));
  return log;
}

RoiSpec SceneRenderer::roi() const {
  return RoiSpec{config_.cutoff_fraction, config_.direction_polygons};
}

GeneratedScene generate(const SceneConfig& config) {
  SceneRenderer renderer(config);
  GeneratedScene scene;
  scene.frames.reserve(static_cast<std::size_t>(config.frame_count));
  for (int f = 0; f < config.frame_count; ++f) scene.frames.push_back(renderer.render(f));
  scene.truth = renderer.truth_log();
  scene.roi = renderer.roi();
  return scene;
}

SceneConfig occlusion_scene(const SceneConfig& base, double overlap_fraction,
                            int vertical_gap_px) {
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
    throw InvalidArgument("overlap fraction must be within [0, 1)");
  if (vertical_gap_px < 0) throw InvalidArgument("vertical gap must be >= 0");

  std::size_t lead = base.vehicles.size();
  std::size_t trail = base.vehicles.size();
  for (std::size_t i = 0; i < base.vehicles.size() && trail == base.vehicles.size(); ++i) {
    for (std::size_t j = i + 1; j < base.vehicles.size(); ++j) {
      if (base.vehicles[i].direction == base.vehicles[j].direction) {
        lead = i;
        trail = j;
        break;
      }
    }
  }
  if (trail == base.vehicles.size())
    throw InvalidArgument("occlusion scene needs two vehicles sharing a direction");

  SceneConfig out = base;
  VehicleSpec leader = base.vehicles[lead];
  VehicleSpec trailer = base.vehicles[trail];
  trailer.entry_frame = leader.entry_frame;
  trailer.duration = leader.duration;
  trailer.speed = leader.speed;

  const int overlap_px =
      overlap_fraction > 0.0
          ? static_cast<int>(std::lround(overlap_fraction * trailer.width))
          : -kClearancePx;
  if (leader.speed > 0) {
    trailer.x = leader.x - trailer.width + overlap_px;
  } else {
    trailer.x = leader.x + leader.width - overlap_px;
  }
  trailer.y = vertical_gap_px > 0 ? leader.y + leader.height + vertical_gap_px : leader.y;

  // Keep the pair inside the frame for the whole active span.
  const int left = std::min(leader.x, trailer.x);
  const int right = std::max(leader.x + leader.width, trailer.x + trailer.width);
  int shift = 0;
  if (left < 0) shift = -left;
  if (right + shift > base.width) shift = base.width - right;
  leader.x += shift;
  trailer.x += shift;
  if (right - left > base.width) throw InvalidArgument("occlusion pair is wider than the frame");
  const int speed = std::abs(leader.speed);
  const int room = leader.speed > 0 ? base.width - (right + shift) : left + shift;
  const int max_duration = room / speed + 1;
  leader.duration = trailer.duration = std::min(leader.duration, max_duration);

  // The trailer is drawn first so the leader covers it.
  out.vehicles.erase(out.vehicles.begin() + static_cast<std::ptrdiff_t>(trail));
  out.vehicles[lead] = leader;
  out.vehicles.insert(out.vehicles.begin() + static_cast<std::ptrdiff_t>(lead), trailer);
  out.validate();
  return out;
}

int HighwayLayout::road_top() const { return cutoff_row(cutoff_fraction, height); }

int HighwayLayout::median_row() const { return (road_top() + height) / 2; }

std::map<std::string, Polygon> HighwayLayout::direction_polygons() const {
  const double top = road_top();
  const double mid = median_row();
  return {{"north", rectangle_polygon(0, top, width, mid)},
          {"south", rectangle_polygon(0, mid, width, height)}};
}

std::vector<int> HighwayLayout::lane_rows(const std::string& direction,
                                          int vehicle_height) const {
  const int top = direction == "north" ? road_top() : median_row();
  const int bottom = direction == "north" ? median_row() : road_bottom();
  const int lane = (bottom - top) / 2;
  return {top + (lane - vehicle_height) / 2, top + lane + (lane - vehicle_height) / 2};
}

SceneConfig free_flow_scene(const HighwayLayout& layout, int frame_count, std::uint64_t seed,
                            int headway, BandModel band) {
  if (headway < 1) throw InvalidArgument("headway must be >= 1");
  SceneConfig scene;
  scene.width = layout.width;
  scene.height = layout.height;
  scene.frame_count = frame_count;
  scene.seed = seed;
  scene.cutoff_fraction = layout.cutoff_fraction;
  scene.direction_polygons = layout.direction_polygons();
  scene.band_model = std::move(band);

  XorShift64Star rng(seed);
  const int lane_height = std::min(layout.median_row() - layout.road_top(),
                                   layout.road_bottom() - layout.median_row()) / 2;
  const int max_height = std::min(22, lane_height - 4);
  const int min_height = std::min(14, max_height);
  const int max_width = std::min(50, layout.width / 2);
  const int min_width = std::min(30, max_width);
  if (min_height < 2 || min_width < 2)
    throw InvalidArgument("frame too small for the free-flow layout");
  // Each lane has one speed so vehicles never catch up with each other. A
  // lane sees a vehicle every 2 * headway frames.
  const int min_speed = static_cast<int>(
      std::ceil(max_width / (kFreeFlowMaxOccupancy * 2.0 * headway)));
  const int lane_speed[2] = {std::max(4, min_speed), std::max(4, min_speed) + 2};
  int next_id = 1;
  for (const std::string direction : {"north", "south"}) {
    const int sign = direction == "north" ? -1 : 1;
    const int offset = direction == "north" ? headway / 2 : 0;
    int lane = 0;
    for (int entry = 1 + offset; entry < frame_count; entry += headway, lane ^= 1) {
      VehicleSpec v;
      v.id = next_id++;
      v.direction = direction;
      v.entry_frame = entry;
      v.width = min_width + static_cast<int>(rng() % static_cast<std::uint64_t>(max_width - min_width + 1));
      v.height = min_height + static_cast<int>(rng() % static_cast<std::uint64_t>(max_height - min_height + 1));
      if (scene.band_model.kind == BandLike::IrLike) {
        // Running vehicles are warmer than the pavement.
        v.intensity = static_cast<std::uint8_t>(200 + rng() % 51);
      } else {
        const bool light = rng() % 3 != 0;
        v.intensity = static_cast<std::uint8_t>(light ? 160 + rng() % 71 : 10 + rng() % 21);
      }
      v.speed = sign * lane_speed[lane];
      const auto rows = layout.lane_rows(direction, max_height);
      v.y = rows[lane] + (max_height - v.height) / 2;
      v.x = sign > 0 ? 0 : layout.width - v.width;
      v.duration = (layout.width - v.width) / lane_speed[lane] + 1;
      scene.vehicles.push_back(v);
    }
  }
  scene.validate();
  return scene;
}

}  // namespace uasdetect
