#pragma once

// Run configuration: a YAML document whose scenario keys mirror the
// data-collection table columns (height, azimuth, velocity, depression,
// offset). See configs/ for annotated samples.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uasdetect/error.hpp"
#include "uasdetect/eval.hpp"
#include "uasdetect/geometry.hpp"
#include "uasdetect/pipeline.hpp"
#include "uasdetect/synth.hpp"

namespace uasdetect::io {

// Parse or validation failure tied to a configuration field. `line` is
// 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, int line, const std::string& message);

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

struct EmitFlags {
  bool csv = true;
  bool svg = true;
  bool annotated_frames = false;
};

struct FramesInput {
  std::filesystem::path directory;
};

struct SynthInput {
  SceneConfig scene;
};

struct RunConfig {
  // One entry for a single scenario; the expansion for a grid.
  std::vector<Scenario> scenarios;
  bool from_grid = false;
  // Pipeline settings shared by all scenarios. The band and geometry are
  // filled per scenario by pipeline_for().
  PipelineConfig pipeline;
  // Set when the file states classify_threshold_sq; otherwise the band
  // default applies per scenario.
  bool classify_threshold_explicit = false;
  SamplingPolicy sampling;
  double iou_min = 0.3;
  std::variant<FramesInput, SynthInput> input;
  std::filesystem::path output_dir = "out";
  EmitFlags emit;
  std::optional<double> frame_rate;
};

// Relative paths resolve against `base_dir`.
RunConfig parse_config(std::string_view text,
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

PipelineConfig pipeline_for(const RunConfig& config, const Scenario& scenario);

// Directory-safe identifier, e.g. "h100_a45_RGB" ("_v5" appended for a
// moving drone).
std::string scenario_key(const Scenario& scenario);

SceneConfig parse_scene_config(std::string_view text);
SceneConfig load_scene_config(const std::filesystem::path& path);

RoiSpec parse_roi(std::string_view text);
std::string roi_to_yaml(const RoiSpec& roi);

}  // namespace uasdetect::io
