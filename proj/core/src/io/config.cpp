#include "uasdetect/io/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace uasdetect::io {

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : Error(field + (line > 0 ? " (line " + std::to_string(line) + ")" : std::string()) +
            ": " + message),
      field_(std::move(field)),
      line_(line) {}

namespace {

int line_of(const YAML::Node& node) {
  if (!node.IsDefined()) return 0;
  const auto mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Typed access to a YAML mapping that records the dotted field path so every
// error names what the user wrote.
class Section {
 public:
  // A missing or null node reads as an empty mapping.
  Section(YAML::Node node, std::string path)
      : node_(std::move(node)),
        path_(std::move(path)),
        present_(node_.IsDefined() && !node_.IsNull()) {
    if (present_ && !node_.IsMap())
      throw ConfigError(path_.empty() ? "<root>" : path_, line_of(node_), "expected a mapping");
  }

  const std::string& path() const { return path_; }
  const YAML::Node& node() const { return node_; }
  bool has(const std::string& key) const { return present_ && node_[key]; }

  void allow_only(std::initializer_list<const char*> keys) const {
    if (!present_) return;
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) throw ConfigError(join(path_, key), line_of(kv.first), "unknown key");
    }
  }

  YAML::Node child(const std::string& key) const { return present_ ? node_[key] : YAML::Node(); }
  Section section(const std::string& key) const { return Section(child(key), join(path_, key)); }

  template <typename T>
  T get(const std::string& key, T fallback) const {
    if (!has(key)) return fallback;
    return convert<T>(child(key), join(path_, key));
  }

  template <typename T>
  T require(const std::string& key) const {
    if (!has(key)) throw ConfigError(join(path_, key), line_of(node_), "missing required key");
    return convert<T>(child(key), join(path_, key));
  }

  template <typename T>
  static T convert(const YAML::Node& n, const std::string& field) {
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field, line_of(n), "cannot read value '" + scalar_text(n) + "'");
    }
  }

  double number_in(const std::string& key, double fallback, double lo, double hi,
                   bool lo_open = false) const {
    const double v = get<double>(key, fallback);
    if (has(key)) check_range(v, lo, hi, lo_open, join(path_, key), line_of(child(key)));
    return v;
  }

  static void check_range(double v, double lo, double hi, bool lo_open, const std::string& field,
                          int line) {
    const bool ok = (lo_open ? v > lo : v >= lo) && v <= hi;
    if (!ok) {
      std::ostringstream os;
      os << "value " << v << " outside " << (lo_open ? "(" : "[") << lo << ", " << hi << "]";
      throw ConfigError(field, line, os.str());
    }
  }

 private:
  static std::string scalar_text(const YAML::Node& n) {
    if (n.IsScalar()) return n.Scalar();
    std::ostringstream os;
    os << n;
    return os.str();
  }

  YAML::Node node_;
  std::string path_;
  bool present_ = false;
};

constexpr double kHuge = 1e300;

template <typename T>
std::vector<T> list_or_scalar(const Section& s, const std::string& key) {
  const YAML::Node n = s.child(key);
  const std::string field = join(s.path(), key);
  std::vector<T> out;
  if (n.IsSequence()) {
    for (const auto& item : n) out.push_back(Section::convert<T>(item, field));
  } else {
    out.push_back(Section::convert<T>(n, field));
  }
  if (out.empty()) throw ConfigError(field, line_of(n), "list is empty");
  return out;
}

Band read_band(const YAML::Node& n, const std::string& field) {
  try {
    return parse_band(Section::convert<std::string>(n, field));
  } catch (const InvalidArgument& e) {
    throw ConfigError(field, line_of(n), e.what());
  }
}

Polygon read_polygon(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) throw ConfigError(field, line_of(n), "polygon must be a list of [x, y]");
  Polygon poly;
  for (const auto& pt : n) {
    if (!pt.IsSequence() || pt.size() != 2)
      throw ConfigError(field, line_of(pt), "vertex must be [x, y]");
    poly.push_back({Section::convert<double>(pt[0], field), Section::convert<double>(pt[1], field)});
  }
  if (poly.size() < 3) throw ConfigError(field, line_of(n), "polygon needs at least 3 vertices");
  return poly;
}

Box read_box(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence() || n.size() != 4)
    throw ConfigError(field, line_of(n), "box must be [x_min, y_min, x_max, y_max]");
  Box b{Section::convert<int>(n[0], field), Section::convert<int>(n[1], field),
        Section::convert<int>(n[2], field), Section::convert<int>(n[3], field)};
  if (!b.valid()) throw ConfigError(field, line_of(n), "box has min > max");
  return b;
}

RoiSpec read_roi(const Section& s) {
  s.allow_only({"cutoff_fraction", "directions"});
  RoiSpec roi;
  roi.cutoff_fraction = s.get<double>("cutoff_fraction", 0.4);
  if (s.has("cutoff_fraction") && !(roi.cutoff_fraction >= 0.0 && roi.cutoff_fraction < 1.0))
    throw ConfigError(join(s.path(), "cutoff_fraction"), line_of(s.child("cutoff_fraction")),
                      "must be within [0, 1)");
  if (s.has("directions")) {
    const YAML::Node dirs = s.child("directions");
    const std::string field = join(s.path(), "directions");
    if (!dirs.IsMap()) throw ConfigError(field, line_of(dirs), "expected a mapping of label -> polygon");
    for (const auto& kv : dirs) {
      const auto label = kv.first.as<std::string>();
      roi.direction_polygons[label] = read_polygon(kv.second, join(field, label));
    }
  }
  return roi;
}

ScenarioGeometry read_geometry(const Section& s) {
  ScenarioGeometry g;
  g.height_above_road = s.number_in("height", g.height_above_road, 0.0, kHuge, true);
  g.azimuth_deg = s.number_in("azimuth", g.azimuth_deg, 0.0, 180.0);
  g.depression_deg = s.number_in("depression", g.depression_deg, 0.0, 90.0, true);
  g.road_offset = s.number_in("offset", g.road_offset, 0.0, kHuge);
  g.drone_speed_mph = s.number_in("velocity", g.drone_speed_mph, 0.0, kHuge);
  if (s.has("fov_length")) g.fov_length = s.number_in("fov_length", 1.0, 0.0, kHuge, true);
  return g;
}

ScenarioGrid read_grid(const Section& s) {
  s.allow_only({"height", "azimuth", "depression", "velocity", "band", "offset", "traffic"});
  ScenarioGrid grid;
  if (!s.has("height")) throw ConfigError(join(s.path(), "height"), line_of(s.node()), "missing required key");
  if (!s.has("azimuth")) throw ConfigError(join(s.path(), "azimuth"), line_of(s.node()), "missing required key");
  grid.heights = list_or_scalar<double>(s, "height");
  grid.azimuths = list_or_scalar<double>(s, "azimuth");
  if (s.has("depression")) grid.depressions = list_or_scalar<double>(s, "depression");
  if (s.has("velocity")) grid.velocities = list_or_scalar<double>(s, "velocity");
  if (s.has("band")) {
    grid.bands.clear();
    const YAML::Node n = s.child("band");
    const std::string field = join(s.path(), "band");
    if (n.IsSequence()) {
      for (const auto& b : n) grid.bands.push_back(read_band(b, field));
    } else {
      grid.bands.push_back(read_band(n, field));
    }
  }
  grid.road_offset = s.number_in("offset", grid.road_offset, 0.0, kHuge);
  if (s.has("traffic") && s.get<std::string>("traffic", "") != "free-flow")
    throw ConfigError(join(s.path(), "traffic"), line_of(s.child("traffic")),
                      "only 'free-flow' is supported");
  for (double h : grid.heights) Section::check_range(h, 0.0, kHuge, true, join(s.path(), "height"), line_of(s.child("height")));
  for (double a : grid.azimuths) Section::check_range(a, 0.0, 180.0, false, join(s.path(), "azimuth"), line_of(s.child("azimuth")));
  for (double d : grid.depressions) Section::check_range(d, 0.0, 90.0, true, join(s.path(), "depression"), line_of(s.child("depression")));
  for (double v : grid.velocities) Section::check_range(v, 0.0, kHuge, false, join(s.path(), "velocity"), line_of(s.child("velocity")));
  if (grid.depressions.size() != 1 && grid.depressions.size() != grid.azimuths.size())
    throw ConfigError(join(s.path(), "depression"), line_of(s.child("depression")),
                      "give one depression or one per azimuth");
  return grid;
}

void read_mixture(const Section& s, MixtureParams& m, bool& classify_explicit) {
  s.allow_only({"max_components", "match_threshold_sq", "classify_threshold_sq", "learning_rate",
                "history", "background_ratio", "initial_variance", "min_variance", "warmup_frames"});
  m.max_components = static_cast<int>(s.number_in("max_components", m.max_components, 1, 255));
  m.match_threshold_sq = s.number_in("match_threshold_sq", m.match_threshold_sq, 0.0, kHuge, true);
  if (s.has("classify_threshold_sq")) {
    m.classify_threshold_sq = s.number_in("classify_threshold_sq", 16.0, 0.0, kHuge, true);
    classify_explicit = true;
  }
  if (s.has("learning_rate") && s.has("history"))
    throw ConfigError(join(s.path(), "history"), line_of(s.child("history")),
                      "give either learning_rate or history, not both");
  m.learning_rate = s.number_in("learning_rate", m.learning_rate, 0.0, 1.0, true);
  if (s.has("history")) m.learning_rate = 1.0 / s.number_in("history", 500.0, 1.0, kHuge);
  m.background_ratio = s.number_in("background_ratio", m.background_ratio, 0.0, 1.0, true);
  if (m.background_ratio >= 1.0)
    throw ConfigError(join(s.path(), "background_ratio"), line_of(s.child("background_ratio")),
                      "must be < 1");
  m.initial_variance = s.number_in("initial_variance", m.initial_variance, 0.0, kHuge, true);
  m.min_variance = s.number_in("min_variance", m.min_variance, 0.0, kHuge, true);
  m.warmup_frames = static_cast<int>(s.number_in("warmup_frames", m.warmup_frames, 0, 1e9));
}

void read_pipeline(const Section& s, RunConfig& cfg) {
  s.allow_only({"color", "mixture", "kernel", "open_iterations", "close_iterations", "min_area",
                "min_area_fraction", "focal_length_px", "vehicle"});
  PipelineConfig& p = cfg.pipeline;
  if (s.has("color")) {
    const auto c = s.get<std::string>("color", "luminance");
    if (c == "luminance" || c == "gray") {
      p.color_mode = ColorMode::Luminance;
    } else if (c == "rgb") {
      p.color_mode = ColorMode::Rgb;
    } else {
      throw ConfigError(join(s.path(), "color"), line_of(s.child("color")),
                        "expected 'luminance' or 'rgb'");
    }
  }
  read_mixture(s.section("mixture"), p.mixture, cfg.classify_threshold_explicit);
  if (s.has("kernel")) {
    const auto field = join(s.path(), "kernel");
    const YAML::Node k = s.child("kernel");
    if (k.IsSequence() && k.size() == 2) {
      p.se = {Section::convert<int>(k[0], field), Section::convert<int>(k[1], field)};
    } else {
      const int side = Section::convert<int>(k, field);
      p.se = {side, side};
    }
    try {
      p.se.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(field, line_of(k), e.what());
    }
  }
  p.open_iterations = static_cast<int>(s.number_in("open_iterations", 1, 1, 1000));
  p.close_iterations = static_cast<int>(s.number_in("close_iterations", 1, 1, 1000));
  if (s.has("min_area")) {
    const YAML::Node n = s.child("min_area");
    if (n.IsScalar() && n.Scalar() == "auto") {
      p.min_area.reset();
    } else {
      p.min_area = s.number_in("min_area", 0.0, 0.0, kHuge);
    }
  } else if (s.has("focal_length_px")) {
    p.min_area.reset();
  } else {
    p.min_area = 0.0;
  }
  p.min_area_fraction = s.number_in("min_area_fraction", p.min_area_fraction, 0.0, kHuge);
  if (s.has("focal_length_px"))
    p.focal_length_px = s.number_in("focal_length_px", 1.0, 0.0, kHuge, true);
  const Section v = s.section("vehicle");
  v.allow_only({"length_ft", "width_ft"});
  p.vehicle.length_ft = v.number_in("length_ft", p.vehicle.length_ft, 0.0, kHuge);
  p.vehicle.width_ft = v.number_in("width_ft", p.vehicle.width_ft, 0.0, kHuge);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

YAML::Node load_yaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("<document>", e.mark.line + 1, e.msg);
  }
}

SceneConfig read_scene(const Section& s) {
  s.allow_only({"width", "height", "frames", "seed", "preset", "headway", "band", "noise_sigma",
                "clutter", "clutter_amplitude", "background", "cutoff_fraction", "directions",
                "vehicles", "occlusion"});
  SceneConfig scene;
  const int width = static_cast<int>(s.number_in("width", 640, 1, 1 << 16));
  const int height = static_cast<int>(s.number_in("height", 480, 1, 1 << 16));
  const int frames = static_cast<int>(s.number_in("frames", 750, 1, 1e8));
  const auto seed = s.get<std::uint64_t>("seed", 1);
  const double cutoff = s.get<double>("cutoff_fraction", 0.4);
  if (!(cutoff >= 0.0 && cutoff < 1.0))
    throw ConfigError(join(s.path(), "cutoff_fraction"), line_of(s.child("cutoff_fraction")),
                      "must be within [0, 1)");

  BandLike band = BandLike::RgbLike;
  if (s.has("band")) {
    const Band b = read_band(s.child("band"), join(s.path(), "band"));
    band = b == Band::IR ? BandLike::IrLike : BandLike::RgbLike;
  }
  HighwayLayout layout{width, height, cutoff};
  const double clutter_amp = s.number_in("clutter_amplitude", 120.0, 0.0, 255.0);
  BandModel model = band == BandLike::IrLike
                        ? BandModel::ir_like(width, layout.road_top(), layout.road_bottom(),
                                             layout.median_row(), clutter_amp)
                        : BandModel::rgb_like();

  if (s.has("preset")) {
    const auto preset = s.get<std::string>("preset", "");
    if (preset != "free-flow")
      throw ConfigError(join(s.path(), "preset"), line_of(s.child("preset")),
                        "unknown preset (expected 'free-flow')");
    const int headway = static_cast<int>(s.number_in("headway", 40, 1, 1e6));
    scene = free_flow_scene(layout, frames, seed, headway, model);
  } else {
    scene.width = width;
    scene.height = height;
    scene.frame_count = frames;
    scene.seed = seed;
    scene.cutoff_fraction = cutoff;
    scene.band_model = model;
  }

  if (s.has("noise_sigma")) scene.band_model.noise_sigma = s.number_in("noise_sigma", 0.0, 0.0, 255.0);
  if (s.has("clutter")) {
    scene.band_model.clutter.clear();
    const YAML::Node list = s.child("clutter");
    const std::string field = join(s.path(), "clutter");
    if (!list.IsSequence()) throw ConfigError(field, line_of(list), "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Section c(list[i], field + "[" + std::to_string(i) + "]");
      c.allow_only({"region", "amplitude", "period", "cell_size", "duty"});
      ClutterRegion r;
      if (!c.has("region")) throw ConfigError(join(c.path(), "region"), line_of(list[i]), "missing required key");
      r.region = read_box(c.child("region"), join(c.path(), "region"));
      r.amplitude = c.number_in("amplitude", 40.0, 0.0, 255.0);
      r.period = static_cast<int>(c.number_in("period", 60, 1, 1e9));
      r.cell_size = static_cast<int>(c.number_in("cell_size", 8, 1, 1e6));
      r.duty = c.number_in("duty", 1.0, 1e-6, 1.0);
      scene.band_model.clutter.push_back(r);
    }
  }
  if (s.has("background")) {
    const Section b = s.section("background");
    b.allow_only({"kind", "intensity", "texture_amplitude"});
    const auto kind = b.get<std::string>("kind", "flat");
    if (kind == "flat") {
      scene.background.kind = BackgroundKind::Flat;
    } else if (kind == "textured") {
      scene.background.kind = BackgroundKind::Textured;
    } else {
      throw ConfigError(join(b.path(), "kind"), line_of(b.child("kind")), "expected 'flat' or 'textured'");
    }
    scene.background.intensity = b.number_in("intensity", 90.0, 0.0, 255.0);
    scene.background.texture_amplitude = b.number_in("texture_amplitude", 0.0, 0.0, 255.0);
  }
  if (s.has("directions")) {
    const YAML::Node dirs = s.child("directions");
    const std::string field = join(s.path(), "directions");
    if (!dirs.IsMap()) throw ConfigError(field, line_of(dirs), "expected a mapping of label -> polygon");
    scene.direction_polygons.clear();
    for (const auto& kv : dirs) {
      const auto label = kv.first.as<std::string>();
      scene.direction_polygons[label] = read_polygon(kv.second, join(field, label));
    }
  }
  if (s.has("vehicles")) {
    const YAML::Node list = s.child("vehicles");
    const std::string field = join(s.path(), "vehicles");
    if (!list.IsSequence()) throw ConfigError(field, line_of(list), "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Section v(list[i], field + "[" + std::to_string(i) + "]");
      v.allow_only({"id", "entry", "duration", "direction", "x", "y", "speed", "width", "height",
                    "intensity"});
      VehicleSpec spec;
      spec.id = v.get<int>("id", static_cast<int>(scene.vehicles.size()) + 1);
      spec.entry_frame = v.require<int>("entry");
      spec.duration = v.require<int>("duration");
      spec.direction = v.require<std::string>("direction");
      spec.x = v.require<int>("x");
      spec.y = v.require<int>("y");
      spec.speed = v.require<int>("speed");
      spec.width = v.get<int>("width", spec.width);
      spec.height = v.get<int>("height", spec.height);
      spec.intensity = static_cast<std::uint8_t>(v.number_in("intensity", 200, 0, 255));
      scene.vehicles.push_back(spec);
    }
  }
  try {
    scene.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(s.path().empty() ? "<scene>" : s.path(), line_of(s.node()), e.what());
  }
  if (s.has("occlusion")) {
    const Section o = s.section("occlusion");
    o.allow_only({"overlap", "vertical_gap"});
    try {
      scene = occlusion_scene(scene, o.get<double>("overlap", 0.0), o.get<int>("vertical_gap", 0));
    } catch (const InvalidArgument& e) {
      throw ConfigError(o.path(), line_of(o.node()), e.what());
    }
  }
  return scene;
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  const YAML::Node doc = load_yaml(text);
  if (!doc || doc.IsNull()) throw ConfigError("<document>", 0, "configuration is empty");
  const Section root(doc, "");
  root.allow_only({"scenario", "grid", "input", "output", "emit", "frame_rate", "pipeline", "roi",
                   "roi_file", "directions", "sampling", "matching"});
  auto resolve = [&](const std::filesystem::path& p) {
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };

  RunConfig cfg;

  if (root.has("scenario") && root.has("grid"))
    throw ConfigError("grid", line_of(root.child("grid")), "give either scenario or grid, not both");
  if (root.has("grid")) {
    try {
      cfg.scenarios = expand_grid(read_grid(root.section("grid")));
    } catch (const InvalidArgument& e) {
      throw ConfigError("grid", line_of(root.child("grid")), e.what());
    }
    cfg.from_grid = true;
  } else {
    const Section s = root.section("scenario");
    s.allow_only({"height", "azimuth", "depression", "offset", "velocity", "band", "fov_length"});
    Scenario sc;
    sc.geometry = read_geometry(s);
    if (s.has("band")) sc.band = read_band(s.child("band"), "scenario.band");
    cfg.scenarios.push_back(sc);
  }

  if (!root.has("input")) throw ConfigError("input", line_of(doc), "missing input source");
  const Section in = root.section("input");
  in.allow_only({"frames", "synth", "scene_file"});
  const int sources = int(in.has("frames")) + int(in.has("synth")) + int(in.has("scene_file"));
  if (sources != 1)
    throw ConfigError("input", line_of(in.node()),
                      "give exactly one of frames, synth, scene_file");
  if (in.has("frames")) {
    cfg.input = FramesInput{resolve(in.get<std::string>("frames", ""))};
  } else if (in.has("synth")) {
    cfg.input = SynthInput{read_scene(in.section("synth"))};
  } else {
    const auto path = resolve(in.get<std::string>("scene_file", ""));
    cfg.input = SynthInput{load_scene_config(path)};
  }

  cfg.output_dir = resolve(root.get<std::string>("output", "out"));
  const Section emit = root.section("emit");
  emit.allow_only({"csv", "svg", "annotated_frames"});
  cfg.emit.csv = emit.get<bool>("csv", cfg.emit.csv);
  cfg.emit.svg = emit.get<bool>("svg", cfg.emit.svg);
  cfg.emit.annotated_frames = emit.get<bool>("annotated_frames", cfg.emit.annotated_frames);
  if (root.has("frame_rate")) cfg.frame_rate = root.number_in("frame_rate", 30.0, 0.0, kHuge, true);

  read_pipeline(root.section("pipeline"), cfg);

  if (root.has("roi") && root.has("roi_file"))
    throw ConfigError("roi_file", line_of(root.child("roi_file")), "give either roi or roi_file, not both");
  if (root.has("roi")) {
    cfg.pipeline.roi = read_roi(root.section("roi"));
  } else if (root.has("roi_file")) {
    const auto path = resolve(root.get<std::string>("roi_file", ""));
    try {
      cfg.pipeline.roi = parse_roi(read_file(path));
    } catch (const ConfigError& e) {
      throw ConfigError("roi_file", line_of(root.child("roi_file")), path.string() + ": " + e.what());
    }
  } else if (const auto* synth = std::get_if<SynthInput>(&cfg.input);
             synth && !synth->scene.direction_polygons.empty()) {
    cfg.pipeline.roi = RoiSpec{synth->scene.cutoff_fraction, synth->scene.direction_polygons};
  }
  if (cfg.pipeline.roi.direction_polygons.empty()) {
    // Whole frame below the cutoff.
    cfg.pipeline.roi.direction_polygons["all"] = rectangle_polygon(0, 0, 1 << 20, 1 << 20);
  }

  if (root.has("directions")) {
    cfg.pipeline.directions = list_or_scalar<std::string>(root, "directions");
    for (const auto& d : cfg.pipeline.directions) {
      if (!cfg.pipeline.roi.direction_polygons.contains(d))
        throw ConfigError("directions", line_of(root.child("directions")),
                          "direction '" + d + "' has no roi polygon");
    }
  } else {
    for (const auto& [label, poly] : cfg.pipeline.roi.direction_polygons)
      cfg.pipeline.directions.push_back(label);
  }

  const Section sampling = root.section("sampling");
  sampling.allow_only({"start", "end", "step"});
  cfg.sampling.start = sampling.get<int>("start", cfg.pipeline.mixture.warmup_frames);
  cfg.sampling.end = sampling.get<int>("end", cfg.sampling.end);
  cfg.sampling.step = sampling.get<int>("step", cfg.sampling.step);
  try {
    cfg.sampling.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("sampling", line_of(sampling.node()), e.what());
  }

  const Section matching = root.section("matching");
  matching.allow_only({"iou_min"});
  cfg.iou_min = matching.number_in("iou_min", cfg.iou_min, 0.0, 1.0, true);

  if (!cfg.pipeline.min_area && !cfg.pipeline.focal_length_px)
    throw ConfigError("pipeline.min_area", line_of(root.child("pipeline")),
                      "'auto' requires pipeline.focal_length_px");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

PipelineConfig pipeline_for(const RunConfig& config, const Scenario& scenario) {
  PipelineConfig p = config.pipeline;
  p.band = scenario.band;
  p.geometry = scenario.geometry;
  if (!config.classify_threshold_explicit)
    p.mixture.classify_threshold_sq = default_classify_threshold_sq(scenario.band);
  return p;
}

std::string scenario_key(const Scenario& scenario) {
  std::ostringstream os;
  os << 'h' << scenario.geometry.height_above_road << "_a" << scenario.geometry.azimuth_deg << '_'
     << to_string(scenario.band);
  if (scenario.geometry.drone_speed_mph != 0.0) os << "_v" << scenario.geometry.drone_speed_mph;
  return os.str();
}

SceneConfig parse_scene_config(std::string_view text) {
  const YAML::Node doc = load_yaml(text);
  if (!doc || doc.IsNull()) throw ConfigError("<document>", 0, "scene is empty");
  return read_scene(Section(doc, ""));
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
  return parse_scene_config(read_file(path));
}

RoiSpec parse_roi(std::string_view text) {
  const YAML::Node doc = load_yaml(text);
  return read_roi(Section(doc, ""));
}

namespace {

// Shortest text that parses back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string roi_to_yaml(const RoiSpec& roi) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "cutoff_fraction" << YAML::Value << shortest(roi.cutoff_fraction);
  out << YAML::Key << "directions" << YAML::Value << YAML::BeginMap;
  for (const auto& [label, poly] : roi.direction_polygons) {
    out << YAML::Key << label << YAML::Value << YAML::BeginSeq;
    for (const auto& p : poly) out << YAML::Flow << YAML::BeginSeq << shortest(p.x) << shortest(p.y) << YAML::EndSeq;
    out << YAML::EndSeq;
  }
  out << YAML::EndMap << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace uasdetect::io
