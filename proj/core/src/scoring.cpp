#include "uasdetect/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "uasdetect/error.hpp"

namespace uasdetect {

bool truth_in_roi(const Box& box, const BinaryMask& roi) {
  if (box.empty()) return false;
  const int x = static_cast<int>(std::floor(box.center_x()));
  const int y = static_cast<int>(std::floor(box.center_y()));
  return roi.in_bounds(x, y) && roi.get(x, y);
}

std::vector<FrameCounts> score_direction(const DetectionLog& log, const GroundTruthLog& truth,
                                         const std::string& direction,
                                         const ScoringOptions& options) {
  if (log.width != truth.width || log.height != truth.height)
    throw InvalidArgument("detection log is " + std::to_string(log.width) + "x" +
                          std::to_string(log.height) + " but ground truth is " +
                          std::to_string(truth.width) + "x" + std::to_string(truth.height));
  const BinaryMask roi = build_roi_mask(log.width, log.height, log.config.roi, direction);

  std::unordered_map<int, const FrameDetections*> by_index;
  for (const auto& fd : log.frames) by_index[fd.frame_index] = &fd;

  std::vector<FrameCounts> out;
  for (const int f : sample_frames(options.sampling)) {
    const auto it = by_index.find(f);
    if (it == by_index.end())
      throw InvalidArgument("sampled frame " + std::to_string(f) + " is missing from the detection log");
    if (f < 0 || static_cast<std::size_t>(f) >= truth.frames.size())
      throw InvalidArgument("sampled frame " + std::to_string(f) + " is missing from the ground truth");
    std::vector<Box> dets;
    for (const auto& d : it->second->detections)
      if (d.direction == direction) dets.push_back(d.box);
    std::vector<Box> gts;
    for (const auto& g : truth.frames[static_cast<std::size_t>(f)])
      if (g.direction == direction && truth_in_roi(g.box, roi)) gts.push_back(g.box);
    out.push_back(match_frame(dets, gts, options.iou_min, f));
  }
  return out;
}

std::vector<MetricsRecord> score_log(const DetectionLog& log, const GroundTruthLog& truth,
                                     const ScoringOptions& options) {
  std::vector<MetricsRecord> out;
  for (const auto& direction : log.config.directions) {
    ScenarioId id;
    if (log.config.geometry) {
      id.height = log.config.geometry->height_above_road;
      id.azimuth = log.config.geometry->azimuth_deg;
    }
    id.band = log.config.band;
    id.direction = direction;
    const auto counts = score_direction(log, truth, direction, options);
    out.push_back(aggregate(counts, id));
  }
  return out;
}

}  // namespace uasdetect
