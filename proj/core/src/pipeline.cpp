#include "uasdetect/pipeline.hpp"

#include <string>
#include <utility>

#include "uasdetect/error.hpp"

namespace uasdetect {

void PipelineConfig::validate() const {
  mixture.validate();
  se.validate();
  if (open_iterations < 1) throw InvalidArgument("open_iterations must be >= 1");
  if (close_iterations < 1) throw InvalidArgument("close_iterations must be >= 1");
  if (directions.empty()) throw InvalidArgument("pipeline needs at least one direction");
  for (const auto& d : directions) {
    if (!roi.direction_polygons.contains(d))
      throw InvalidArgument("direction '" + d + "' has no roi polygon");
  }
  if (min_area) {
    if (!(*min_area >= 0.0)) throw InvalidArgument("min_area must be >= 0");
  } else {
    if (!geometry || !focal_length_px)
      throw InvalidArgument("min_area 'auto' requires scenario geometry and focal_length_px");
    if (!(min_area_fraction >= 0.0)) throw InvalidArgument("min_area_fraction must be >= 0");
  }
  if (geometry) geometry->validate();
}

double PipelineConfig::resolved_min_area() const {
  if (min_area) return *min_area;
  if (!geometry || !focal_length_px)
    throw InvalidArgument("min_area 'auto' requires scenario geometry and focal_length_px");
  return min_area_fraction * expected_vehicle_area_px(*geometry, *focal_length_px,
                                                      vehicle.length_ft, vehicle.width_ft);
}

std::optional<Frame> VectorFrameSource::next() {
  if (pos_ >= frames_.size()) return std::nullopt;
  return frames_[pos_++];
}

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
  config_.validate();
  min_area_ = config_.resolved_min_area();
}

Frame Pipeline::prepare(const Frame& frame) const {
  return config_.color_mode == ColorMode::Luminance ? to_luminance(frame) : to_rgb(frame);
}

void Pipeline::initialize(const Frame& prepared) {
  width_ = prepared.width();
  height_ = prepared.height();
  config_.roi.validate(width_, height_);
  roi_masks_.clear();
  for (const auto& d : config_.directions) {
    roi_masks_.push_back(build_roi_mask(width_, height_, config_.roi, d));
  }
  model_.emplace(config_.mixture, prepared);
  foreground_ = BinaryMask(width_, height_);
}

FrameDetections Pipeline::process_frame(const Frame& frame) {
  const Frame prepared = prepare(frame);
  FrameDetections out;
  out.frame_index = next_index_;
  if (!model_) {
    initialize(prepared);
    ++next_index_;
    return out;
  }
  if (prepared.width() != width_ || prepared.height() != height_) {
    throw DimensionMismatch("frame " + std::to_string(next_index_) + " is " +
                            std::to_string(prepared.width()) + "x" +
                            std::to_string(prepared.height()) + ", sequence is " +
                            std::to_string(width_) + "x" + std::to_string(height_));
  }
  model_->apply(prepared, foreground_);
  for (std::size_t d = 0; d < config_.directions.size(); ++d) {
    auto dets = detect_direction(foreground_, d, next_index_);
    out.detections.insert(out.detections.end(), std::make_move_iterator(dets.begin()),
                          std::make_move_iterator(dets.end()));
  }
  ++next_index_;
  return out;
}

std::vector<Detection> Pipeline::detect_direction(const BinaryMask& foreground,
                                                  std::size_t direction_index,
                                                  int frame_index) const {
  const BinaryMask& roi = roi_masks_.at(direction_index);
  const BinaryMask masked = mask_and(foreground, roi);
  const BinaryMask cleaned =
      close(open(masked, config_.se, config_.open_iterations), config_.se,
            config_.close_iterations);
  const auto blobs = regions_to_detections(connected_components(cleaned), min_area_, roi);
  std::vector<Detection> out;
  out.reserve(blobs.size());
  for (const Blob& b : blobs) {
    out.push_back(Detection{frame_index, config_.directions[direction_index], b.box, b.area});
  }
  return out;
}

DetectionLog run_sequence(const PipelineConfig& config, FrameSource& source) {
  Pipeline pipeline(config);
  DetectionLog log;
  log.config = config;
  while (auto frame = source.next()) {
    log.frames.push_back(pipeline.process_frame(*frame));
  }
  if (log.frames.empty()) throw InvalidArgument("frame source is empty");
  log.width = pipeline.model().width();
  log.height = pipeline.model().height();
  return log;
}

}  // namespace uasdetect
