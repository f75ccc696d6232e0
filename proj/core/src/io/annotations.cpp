#include "uasdetect/io/annotations.hpp"

#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>

#include "uasdetect/error.hpp"

namespace uasdetect::io {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

json box_to_json(const Box& b) { return json::array({b.x_min, b.y_min, b.x_max, b.y_max}); }

Box box_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error("annotation box must be [x_min, y_min, x_max, y_max]");
  return Box{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

json config_to_json(const PipelineConfig& c) {
  json j;
  j["band"] = std::string(to_string(c.band));
  j["color"] = c.color_mode == ColorMode::Luminance ? "luminance" : "rgb";
  const auto& m = c.mixture;
  j["mixture"] = {{"max_components", m.max_components},
                  {"match_threshold_sq", m.match_threshold_sq},
                  {"classify_threshold_sq", m.classify_threshold_sq},
                  {"learning_rate", m.learning_rate},
                  {"background_ratio", m.background_ratio},
                  {"initial_variance", m.initial_variance},
                  {"min_variance", m.min_variance},
                  {"warmup_frames", m.warmup_frames}};
  j["kernel"] = json::array({c.se.width, c.se.height});
  j["open_iterations"] = c.open_iterations;
  j["close_iterations"] = c.close_iterations;
  j["min_area"] = c.min_area ? json(*c.min_area) : json("auto");
  j["min_area_fraction"] = c.min_area_fraction;
  json dirs = json::object();
  for (const auto& [label, poly] : c.roi.direction_polygons) {
    json pts = json::array();
    for (const auto& p : poly) pts.push_back(json::array({p.x, p.y}));
    dirs[label] = pts;
  }
  j["roi"] = {{"cutoff_fraction", c.roi.cutoff_fraction}, {"directions", dirs}};
  j["directions"] = c.directions;
  if (c.geometry) {
    const auto& g = *c.geometry;
    j["geometry"] = {{"height", g.height_above_road}, {"azimuth", g.azimuth_deg},
                     {"depression", g.depression_deg}, {"offset", g.road_offset},
                     {"velocity", g.drone_speed_mph}};
    if (g.fov_length) j["geometry"]["fov_length"] = *g.fov_length;
  } else {
    j["geometry"] = nullptr;
  }
  j["focal_length_px"] = c.focal_length_px ? json(*c.focal_length_px) : json(nullptr);
  j["vehicle"] = {{"length_ft", c.vehicle.length_ft}, {"width_ft", c.vehicle.width_ft}};
  return j;
}

PipelineConfig config_from_json(const json& j) {
  PipelineConfig c;
  c.band = parse_band(j.at("band").get<std::string>());
  c.color_mode = j.at("color").get<std::string>() == "rgb" ? ColorMode::Rgb : ColorMode::Luminance;
  const json& m = j.at("mixture");
  c.mixture.max_components = m.at("max_components").get<int>();
  c.mixture.match_threshold_sq = m.at("match_threshold_sq").get<double>();
  c.mixture.classify_threshold_sq = m.at("classify_threshold_sq").get<double>();
  c.mixture.learning_rate = m.at("learning_rate").get<double>();
  c.mixture.background_ratio = m.at("background_ratio").get<double>();
  c.mixture.initial_variance = m.at("initial_variance").get<double>();
  c.mixture.min_variance = m.at("min_variance").get<double>();
  c.mixture.warmup_frames = m.at("warmup_frames").get<int>();
  c.se = {j.at("kernel").at(0).get<int>(), j.at("kernel").at(1).get<int>()};
  c.open_iterations = j.at("open_iterations").get<int>();
  c.close_iterations = j.at("close_iterations").get<int>();
  if (j.at("min_area").is_number()) c.min_area = j.at("min_area").get<double>();
  c.min_area_fraction = j.at("min_area_fraction").get<double>();
  c.roi.cutoff_fraction = j.at("roi").at("cutoff_fraction").get<double>();
  for (const auto& [label, pts] : j.at("roi").at("directions").items()) {
    Polygon poly;
    for (const auto& p : pts) poly.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    c.roi.direction_polygons[label] = std::move(poly);
  }
  c.directions = j.at("directions").get<std::vector<std::string>>();
  if (!j.at("geometry").is_null()) {
    const json& g = j.at("geometry");
    ScenarioGeometry geom;
    geom.height_above_road = g.at("height").get<double>();
    geom.azimuth_deg = g.at("azimuth").get<double>();
    geom.depression_deg = g.at("depression").get<double>();
    geom.road_offset = g.at("offset").get<double>();
    geom.drone_speed_mph = g.at("velocity").get<double>();
    if (g.contains("fov_length")) geom.fov_length = g.at("fov_length").get<double>();
    c.geometry = geom;
  }
  if (!j.at("focal_length_px").is_null()) c.focal_length_px = j.at("focal_length_px").get<double>();
  c.vehicle.length_ft = j.at("vehicle").at("length_ft").get<double>();
  c.vehicle.width_ft = j.at("vehicle").at("width_ft").get<double>();
  return c;
}

json read_line_json(std::istream& is, std::size_t line_no) {
  std::string line;
  if (!std::getline(is, line)) return json();
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error("annotation line " + std::to_string(line_no) + ": " + e.what());
  }
}

void expect_header(const json& header, const char* type) {
  if (!header.is_object() || header.value("type", "") != type)
    throw Error(std::string("annotation file does not start with a '") + type + "' header");
  if (header.value("version", 0) != kFormatVersion)
    throw Error("unsupported annotation format version");
}

}  // namespace

void write_detection_log(std::ostream& os, const DetectionLog& log) {
  json header = {{"type", "detections"},
                 {"version", kFormatVersion},
                 {"width", log.width},
                 {"height", log.height},
                 {"config", config_to_json(log.config)}};
  os << header.dump() << '\n';
  for (const auto& frame : log.frames) {
    json records = json::array();
    for (const auto& d : frame.detections) {
      records.push_back({{"direction", d.direction},
                         {"box", box_to_json(d.box)},
                         {"source", "detection"},
                         {"area", d.area}});
    }
    os << json{{"frame", frame.frame_index}, {"records", records}}.dump() << '\n';
  }
}

DetectionLog read_detection_log(std::istream& is) {
  std::size_t line_no = 1;
  const json header = read_line_json(is, line_no);
  expect_header(header, "detections");
  DetectionLog log;
  try {
    log.width = header.at("width").get<int>();
    log.height = header.at("height").get<int>();
    log.config = config_from_json(header.at("config"));
  } catch (const json::exception& e) {
    throw Error(std::string("detection header: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw Error(std::string("detection header: ") + e.what());
  }
  int last = -1;
  for (;;) {
    ++line_no;
    const json j = read_line_json(is, line_no);
    if (j.is_null()) break;
    try {
      FrameDetections fd;
      fd.frame_index = j.at("frame").get<int>();
      if (fd.frame_index <= last)
        throw Error("annotation line " + std::to_string(line_no) + ": frame indices must increase");
      last = fd.frame_index;
      for (const auto& r : j.at("records")) {
        Detection d;
        d.frame_index = fd.frame_index;
        d.direction = r.at("direction").get<std::string>();
        d.box = box_from_json(r.at("box"));
        d.area = r.value("area", d.box.area());
        if (!d.box.within(log.width, log.height))
          throw Error("annotation line " + std::to_string(line_no) + ": box outside the frame");
        fd.detections.push_back(std::move(d));
      }
      log.frames.push_back(std::move(fd));
    } catch (const json::exception& e) {
      throw Error("annotation line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return log;
}

void write_ground_truth(std::ostream& os, const GroundTruthLog& log) {
  json header = {{"type", "ground_truth"},
                 {"version", kFormatVersion},
                 {"width", log.width},
                 {"height", log.height}};
  os << header.dump() << '\n';
  for (std::size_t f = 0; f < log.frames.size(); ++f) {
    json records = json::array();
    for (const auto& g : log.frames[f]) {
      records.push_back({{"direction", g.direction},
                         {"box", box_to_json(g.box)},
                         {"source", "ground_truth"},
                         {"id", g.vehicle_id}});
    }
    os << json{{"frame", f}, {"records", records}}.dump() << '\n';
  }
}

GroundTruthLog read_ground_truth(std::istream& is) {
  std::size_t line_no = 1;
  const json header = read_line_json(is, line_no);
  expect_header(header, "ground_truth");
  GroundTruthLog log;
  log.width = header.at("width").get<int>();
  log.height = header.at("height").get<int>();
  for (;;) {
    ++line_no;
    const json j = read_line_json(is, line_no);
    if (j.is_null()) break;
    try {
      const int frame = j.at("frame").get<int>();
      if (frame < static_cast<int>(log.frames.size()))
        throw Error("annotation line " + std::to_string(line_no) + ": frame indices must increase");
      log.frames.resize(static_cast<std::size_t>(frame) + 1);
      for (const auto& r : j.at("records")) {
        GroundTruthEntry g;
        g.direction = r.at("direction").get<std::string>();
        g.box = box_from_json(r.at("box"));
        g.vehicle_id = r.value("id", 0);
        if (!g.box.within(log.width, log.height))
          throw Error("annotation line " + std::to_string(line_no) + ": box outside the frame");
        log.frames[frame].push_back(std::move(g));
      }
    } catch (const json::exception& e) {
      throw Error("annotation line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return log;
}

void save_detection_log(const std::filesystem::path& path, const DetectionLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("'" + path.string() + "': cannot open for writing");
  write_detection_log(out, log);
}

DetectionLog load_detection_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("'" + path.string() + "': cannot open");
  return read_detection_log(in);
}

void save_ground_truth(const std::filesystem::path& path, const GroundTruthLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("'" + path.string() + "': cannot open for writing");
  write_ground_truth(out, log);
}

GroundTruthLog load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("'" + path.string() + "': cannot open");
  return read_ground_truth(in);
}

}  // namespace uasdetect::io
