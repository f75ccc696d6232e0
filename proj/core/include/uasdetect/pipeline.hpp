#pragma once

// Frame-to-detections pipeline: background model, per-direction ROI masking,
// opening then closing, connected components, area and ROI filtering.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uasdetect/bgmodel.hpp"
#include "uasdetect/box.hpp"
#include "uasdetect/frame.hpp"
#include "uasdetect/geometry.hpp"
#include "uasdetect/maskops.hpp"

namespace uasdetect {

enum class ColorMode { Luminance, Rgb };

struct VehicleSize {
  double length_ft = 15.0;
  double width_ft = 6.0;
};

struct PipelineConfig {
  MixtureParams mixture;
  ColorMode color_mode = ColorMode::Luminance;
  StructuringElement se;
  int open_iterations = 1;
  int close_iterations = 1;
  // Empty means "auto": min_area_fraction * expected_vehicle_area_px.
  std::optional<double> min_area;
  double min_area_fraction = 0.25;
  RoiSpec roi;
  std::vector<std::string> directions;
  Band band = Band::RGB;
  std::optional<ScenarioGeometry> geometry;
  std::optional<double> focal_length_px;
  VehicleSize vehicle;

  void validate() const;
  double resolved_min_area() const;
};

struct Detection {
  int frame_index = 0;
  std::string direction;
  Box box;
  std::int64_t area = 0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

struct FrameDetections {
  int frame_index = 0;
  std::vector<Detection> detections;  // grouped by direction, config order

  friend bool operator==(const FrameDetections&, const FrameDetections&) = default;
};

struct DetectionLog {
  int width = 0;
  int height = 0;
  PipelineConfig config;
  std::vector<FrameDetections> frames;  // strictly increasing frame_index
};

// Ordered frame supplier. next() returns nullopt once exhausted.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::optional<Frame> next() = 0;
};

class VectorFrameSource final : public FrameSource {
 public:
  explicit VectorFrameSource(std::vector<Frame> frames)
      : frames_(std::move(frames)) {}
  std::optional<Frame> next() override;

 private:
  std::vector<Frame> frames_;
  std::size_t pos_ = 0;
};

// Stateful per-sequence pipeline. The first frame initializes the model and
// yields no detections; every later frame updates the model.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  FrameDetections process_frame(const Frame& frame);

  // Detections for one direction given a foreground mask; exposed so callers
  // can reuse a mask (for example a frozen-model classification).
  std::vector<Detection> detect_direction(const BinaryMask& foreground,
                                          std::size_t direction_index,
                                          int frame_index) const;

  bool initialized() const { return model_.has_value(); }
  const MixtureModel& model() const { return *model_; }
  const BinaryMask& last_foreground() const { return foreground_; }
  const BinaryMask& roi_mask(std::size_t direction_index) const {
    return roi_masks_.at(direction_index);
  }
  const PipelineConfig& config() const { return config_; }
  int frames_seen() const { return next_index_; }
  double min_area() const { return min_area_; }

  // Converts an input frame to what the model consumes (luminance or RGB).
  Frame prepare(const Frame& frame) const;

 private:
  void initialize(const Frame& prepared);

  PipelineConfig config_;
  double min_area_ = 0.0;
  std::optional<MixtureModel> model_;
  std::vector<BinaryMask> roi_masks_;
  BinaryMask foreground_;
  int width_ = 0;
  int height_ = 0;
  int next_index_ = 0;
};

// Runs every frame of `source` through a fresh pipeline and logs detections
// for all frames. Throws InvalidArgument on an empty source.
DetectionLog run_sequence(const PipelineConfig& config, FrameSource& source);

}  // namespace uasdetect
