#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "uasdetect/error.hpp"
#include "uasdetect/io/annotate.hpp"
#include "uasdetect/io/annotations.hpp"
#include "uasdetect/io/config.hpp"
#include "uasdetect/io/raster.hpp"
#include "uasdetect/io/report.hpp"
#include "uasdetect/scoring.hpp"
#include "uasdetect/synth.hpp"

namespace uasdetect::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kTruthFile = "ground_truth.jsonl";
constexpr const char* kDetectionsFile = "detections.jsonl";
constexpr const char* kRoiFile = "roi.yaml";

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error("cannot create output directory '" + dir.string() + "'");
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) ensure_directory(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

void print_summary(const json& j) { std::cout << j.dump() << '\n'; }

// Frames for one scenario of a run: `<frames>` for a single scenario; for a
// grid `<frames>/<key>/frames` or, failing that, `<frames>/<key>`.
fs::path frames_directory(const io::RunConfig& cfg, const Scenario& scenario) {
  const auto& root = std::get<io::FramesInput>(cfg.input).directory;
  if (!cfg.from_grid) return root;
  const fs::path dir = root / io::scenario_key(scenario);
  return fs::is_directory(dir / "frames") ? dir / "frames" : dir;
}

fs::path scenario_output(const io::RunConfig& cfg, const Scenario& scenario,
                         const fs::path& out_root) {
  return cfg.from_grid ? out_root / io::scenario_key(scenario) : out_root;
}

std::optional<fs::path> find_truth(const io::RunConfig& cfg, const Scenario& scenario,
                                   const fs::path& out_dir) {
  if (fs::exists(out_dir / kTruthFile)) return out_dir / kTruthFile;
  if (std::holds_alternative<io::FramesInput>(cfg.input)) {
    const fs::path frames = frames_directory(cfg, scenario);
    if (fs::exists(frames / kTruthFile)) return frames / kTruthFile;
    if (fs::exists(frames.parent_path() / kTruthFile)) return frames.parent_path() / kTruthFile;
  }
  return std::nullopt;
}

class RendererSource final : public FrameSource {
 public:
  explicit RendererSource(const SceneRenderer& renderer) : renderer_(renderer) {}
  std::optional<Frame> next() override {
    if (index_ >= renderer_.frame_count()) return std::nullopt;
    return renderer_.render(index_++);
  }

 private:
  const SceneRenderer& renderer_;
  int index_ = 0;
};

json detect_scenario(const io::RunConfig& cfg, const Scenario& scenario, const fs::path& out_dir,
                     const std::optional<fs::path>& truth_path) {
  ensure_directory(out_dir);
  const PipelineConfig pc = io::pipeline_for(cfg, scenario);

  std::unique_ptr<FrameSource> source;
  std::optional<SceneRenderer> renderer;
  std::optional<GroundTruthLog> truth;
  if (const auto* synth = std::get_if<io::SynthInput>(&cfg.input)) {
    renderer.emplace(synth->scene);
    truth = renderer->truth_log();
    io::save_ground_truth(out_dir / kTruthFile, *truth);
    source = std::make_unique<RendererSource>(*renderer);
  } else {
    source = std::make_unique<io::DirectoryFrameSource>(frames_directory(cfg, scenario));
    if (truth_path) truth = io::load_ground_truth(*truth_path);
  }

  Pipeline pipeline(pc);
  DetectionLog log;
  log.config = pc;
  const fs::path annotated_dir = out_dir / "annotated";
  if (cfg.emit.annotated_frames) ensure_directory(annotated_dir);
  std::size_t detections = 0;
  while (auto frame = source->next()) {
    if (log.frames.empty()) {
      log.width = frame->width();
      log.height = frame->height();
    }
    FrameDetections fd = pipeline.process_frame(*frame);
    detections += fd.detections.size();
    if (cfg.emit.annotated_frames) {
      std::span<const GroundTruthEntry> gt;
      const auto f = static_cast<std::size_t>(fd.frame_index);
      if (truth && f < truth->frames.size()) gt = truth->frames[f];
      const Frame annotated = io::annotate_frame(
          *frame, fd.detections, gt, cutoff_row(pc.roi.cutoff_fraction, frame->height()));
      io::write_pnm(annotated_dir / io::frame_filename(fd.frame_index, 3), annotated);
    }
    log.frames.push_back(std::move(fd));
  }
  if (log.frames.empty()) throw InvalidArgument("scenario " + io::scenario_key(scenario) + " has no frames");
  io::save_detection_log(out_dir / kDetectionsFile, log);
  return json{{"scenario", io::scenario_key(scenario)},
              {"frames", log.frames.size()},
              {"detections", detections},
              {"log", (out_dir / kDetectionsFile).string()}};
}

void emit_charts(const fs::path& dir, const std::vector<MetricsRecord>& records) {
  for (const auto& [metric, name] : {std::pair{io::ChartMetric::F1, "f1.svg"},
                                     std::pair{io::ChartMetric::Recall, "recall.svg"}}) {
    auto out = open_output(dir / name);
    out << io::render_bar_chart_svg(records, metric);
  }
}

}  // namespace

int run_synth(const SynthOptions& options) {
  const SceneConfig scene = io::load_scene_config(options.scene);
  const SceneRenderer renderer(scene);
  const fs::path frames_dir = options.out / "frames";
  ensure_directory(frames_dir);
  for (int f = 0; f < renderer.frame_count(); ++f) {
    const Frame frame = renderer.render(f);
    io::write_pnm(frames_dir / io::frame_filename(f, frame.channels()), frame);
  }
  const GroundTruthLog truth = renderer.truth_log();
  io::save_ground_truth(options.out / kTruthFile, truth);
  auto roi = open_output(options.out / kRoiFile);
  roi << io::roi_to_yaml(renderer.roi());

  std::size_t instances = 0;
  for (const auto& entries : truth.frames) instances += entries.size();
  print_summary({{"command", "synth"},
                 {"frames", renderer.frame_count()},
                 {"vehicles", scene.vehicles.size()},
                 {"truth_boxes", instances},
                 {"out", options.out.string()}});
  return 0;
}

int run_detect(const DetectOptions& options) {
  const io::RunConfig cfg = io::load_config(options.config);
  const fs::path out_root = options.out.value_or(cfg.output_dir);
  ensure_directory(out_root);
  if (options.truth && cfg.from_grid)
    throw InvalidArgument("--truth applies to single-scenario runs only");

  std::vector<json> summaries(cfg.scenarios.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.scenarios.size(); i = next++) {
      try {
        const Scenario& sc = cfg.scenarios[i];
        const fs::path out_dir = scenario_output(cfg, sc, out_root);
        auto truth = options.truth;
        if (!truth && std::holds_alternative<io::FramesInput>(cfg.input))
          truth = find_truth(cfg, sc, out_dir);
        summaries[i] = detect_scenario(cfg, sc, out_dir, truth);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.scenarios.size();
      }
    }
  };
  const int jobs = std::clamp<int>(options.jobs, 1, static_cast<int>(cfg.scenarios.size()));
  {
    std::vector<std::jthread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  print_summary({{"command", "detect"}, {"scenarios", summaries}});
  return 0;
}

int run_eval(const EvalOptions& options) {
  ScoringOptions scoring;
  std::vector<MetricsRecord> records;
  fs::path csv_path;
  bool svg = false;
  fs::path svg_dir;

  auto apply_overrides = [&] {
    if (options.start) scoring.sampling.start = *options.start;
    if (options.end) scoring.sampling.end = *options.end;
    if (options.step) scoring.sampling.step = *options.step;
    if (options.iou_min) scoring.iou_min = *options.iou_min;
    scoring.sampling.validate();
  };

  if (options.config) {
    if (options.detections || options.truth)
      throw InvalidArgument("give either --config or --detections/--truth");
    const io::RunConfig cfg = io::load_config(*options.config);
    scoring.sampling = cfg.sampling;
    scoring.iou_min = cfg.iou_min;
    apply_overrides();
    for (const auto& sc : cfg.scenarios) {
      const fs::path dir = scenario_output(cfg, sc, cfg.output_dir);
      const auto truth = find_truth(cfg, sc, dir);
      if (!truth)
        throw Error("no ground truth found for scenario " + io::scenario_key(sc) + " under '" +
                    dir.string() + "'");
      const auto scored = score_log(io::load_detection_log(dir / kDetectionsFile),
                                    io::load_ground_truth(*truth), scoring);
      records.insert(records.end(), scored.begin(), scored.end());
    }
    csv_path = options.out.value_or(cfg.output_dir / "metrics.csv");
    svg = cfg.emit.svg;
    svg_dir = csv_path.parent_path();
    if (!cfg.emit.csv && !options.out) csv_path.clear();
  } else {
    if (!options.detections || !options.truth)
      throw InvalidArgument("eval needs --config, or both --detections and --truth");
    apply_overrides();
    records = score_log(io::load_detection_log(*options.detections),
                        io::load_ground_truth(*options.truth), scoring);
    csv_path = options.out.value_or("metrics.csv");
  }

  if (!csv_path.empty()) {
    auto out = open_output(csv_path);
    io::write_metrics_csv(out, records);
  }
  if (svg) emit_charts(svg_dir, records);

  json rows = json::array();
  for (const auto& r : records) {
    json row{{"direction", r.id.direction}, {"tp", r.tp}, {"fp", r.fp}, {"fn", r.fn}};
    row["f1"] = r.f1 ? json(*r.f1) : json(nullptr);
    rows.push_back(row);
  }
  print_summary({{"command", "eval"}, {"csv", csv_path.string()}, {"records", rows}});
  return 0;
}

int run_report(const ReportOptions& options) {
  std::ifstream in(options.csv, std::ios::binary);
  if (!in) throw Error("cannot open '" + options.csv.string() + "'");
  const auto records = io::read_metrics_csv(in);
  if (records.empty()) throw InvalidArgument("'" + options.csv.string() + "' holds no records");
  io::ChartMetric metric = io::ChartMetric::F1;
  if (options.metric == "recall") metric = io::ChartMetric::Recall;
  else if (options.metric == "precision") metric = io::ChartMetric::Precision;
  else if (options.metric != "f1") throw InvalidArgument("unknown metric '" + options.metric + "'");
  auto out = open_output(options.out);
  out << io::render_bar_chart_svg(records, metric);
  print_summary({{"command", "report"}, {"records", records.size()}, {"svg", options.out.string()}});
  return 0;
}

int run_fixture_check(const FixtureOptions& options, const fs::path& exe_path) {
  fs::path path;
  if (options.fixture) {
    path = *options.fixture;
  } else {
    const fs::path installed =
        exe_path.parent_path().parent_path() / "share" / "uasdetect" / "detection_counts_fixture.csv";
    path = fs::exists(installed) ? installed : fs::path(UASDETECT_SOURCE_FIXTURE);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open fixture '" + path.string() + "'");
  const auto rows = io::read_fixture_csv(in);

  const auto start = std::chrono::steady_clock::now();
  const FixtureReport report = fixture_check(rows);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::cout << io::format_fixture_report(report);
  if (options.csv) {
    auto out = open_output(*options.csv);
    io::write_metrics_csv(out, report.recomputed);
  }
  if (options.svg) {
    auto out = open_output(*options.svg);
    out << io::render_bar_chart_svg(report.recomputed, io::ChartMetric::F1);
  }
  print_summary({{"command", "fixture-check"},
                 {"fixture", path.string()},
                 {"rows", report.rows},
                 {"values_checked", report.values_checked},
                 {"mismatches", report.mismatches.size()},
                 {"seconds", seconds}});
  if (options.strict && !report.consistent())
    throw CommandFailure{"fixture_mismatch",
                         std::to_string(report.mismatches.size()) + " printed values disagree", 4};
  return 0;
}

int run_bench(const BenchOptions& options) {
  std::vector<Frame> frames;
  RoiSpec roi;
  if (options.frames_dir) {
    frames = io::load_frames(*options.frames_dir);
    const fs::path roi_path = options.frames_dir->parent_path() / kRoiFile;
    if (fs::exists(roi_path)) {
      std::ifstream in(roi_path);
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      roi = io::parse_roi(text);
    } else {
      roi.direction_polygons["all"] = rectangle_polygon(0, 0, 1 << 20, 1 << 20);
    }
  } else {
    if (options.frames < 2) throw InvalidArgument("--frames must be at least 2");
    const HighwayLayout layout{options.width, options.height, 0.4};
    const SceneRenderer renderer(free_flow_scene(layout, options.frames, options.seed));
    frames.reserve(static_cast<std::size_t>(options.frames));
    for (int f = 0; f < options.frames; ++f) frames.push_back(renderer.render(f));
    roi = renderer.roi();
  }

  PipelineConfig pc;
  pc.roi = roi;
  for (const auto& [label, poly] : roi.direction_polygons) pc.directions.push_back(label);
  pc.min_area = 50.0;

  Pipeline pipeline(pc);
  std::size_t detections = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& frame : frames) detections += pipeline.process_frame(frame).detections.size();
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double fps = static_cast<double>(frames.size()) / seconds;

  print_summary({{"command", "bench"},
                 {"frames", frames.size()},
                 {"width", frames.front().width()},
                 {"height", frames.front().height()},
                 {"seconds", seconds},
                 {"fps", fps},
                 {"detections", detections}});
  if (fps < options.min_fps)
    throw CommandFailure{"throughput",
                         "measured " + std::to_string(fps) + " fps, required " +
                             std::to_string(options.min_fps),
                         3};
  return 0;
}

}  // namespace uasdetect::cli
