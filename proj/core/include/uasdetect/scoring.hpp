#pragma once

// Scores a detection log against ground truth over a sampled frame set.

#include <span>
#include <vector>

#include "uasdetect/eval.hpp"
#include "uasdetect/pipeline.hpp"
#include "uasdetect/synth.hpp"

namespace uasdetect {

struct ScoringOptions {
  SamplingPolicy sampling;
  double iou_min = 0.3;
};

// A ground-truth box counts for a direction when the pixel holding its
// center lies in that direction's ROI mask, the same rule applied to
// detection centroids.
bool truth_in_roi(const Box& box, const BinaryMask& roi);

// Per sampled frame counts for one direction. Throws InvalidArgument when a
// sampled frame is missing from the log or the ground truth, or when their
// frame dimensions differ.
std::vector<FrameCounts> score_direction(const DetectionLog& log,
                                         const GroundTruthLog& truth,
                                         const std::string& direction,
                                         const ScoringOptions& options);

// One record per configured direction, in configuration order. The scenario
// id comes from the geometry and band stored in the log's configuration.
std::vector<MetricsRecord> score_log(const DetectionLog& log,
                                     const GroundTruthLog& truth,
                                     const ScoringOptions& options);

}  // namespace uasdetect
