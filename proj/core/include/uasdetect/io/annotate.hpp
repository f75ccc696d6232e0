#pragma once

#include <span>
#include <vector>

#include "uasdetect/frame.hpp"
#include "uasdetect/pipeline.hpp"
#include "uasdetect/synth.hpp"

namespace uasdetect::io {

struct Rgb {
  std::uint8_t r, g, b;
};

struct AnnotationStyle {
  Rgb detection{255, 40, 40};
  Rgb ground_truth{40, 220, 40};
  Rgb cutoff{255, 220, 0};
};

// RGB copy of `frame` with a one-pixel outline per detection, a second
// outline color for ground truth, and a horizontal line on the cutoff row.
Frame annotate_frame(const Frame& frame, std::span<const Detection> detections,
                     std::span<const GroundTruthEntry> truth, int cutoff_row,
                     const AnnotationStyle& style = {});

// Annotates frames[i] with the log entry whose frame_index is i. Throws
// InvalidArgument when the log references a frame that does not exist or
// when the ground truth is shorter than the frame sequence.
std::vector<Frame> annotate_frames(std::span<const Frame> frames,
                                   const DetectionLog& log,
                                   const GroundTruthLog* truth = nullptr,
                                   const AnnotationStyle& style = {});

}  // namespace uasdetect::io
