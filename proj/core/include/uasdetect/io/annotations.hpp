#pragma once

// Line-delimited JSON records for detections and ground truth.
//
// Line 1 is a header object ({"type": "detections" | "ground_truth",
// "width", "height", ...}); every following line is one frame:
// {"frame": i, "records": [{"direction", "box": [x_min, y_min, x_max, y_max],
// "source": "detection" | "ground_truth", "area" | "id"}]}. Boxes are
// half-open pixel rectangles. Frames without records are still written.

#include <iosfwd>
#include <filesystem>

#include "uasdetect/pipeline.hpp"
#include "uasdetect/synth.hpp"

namespace uasdetect::io {

void write_detection_log(std::ostream& os, const DetectionLog& log);
DetectionLog read_detection_log(std::istream& is);

void write_ground_truth(std::ostream& os, const GroundTruthLog& log);
GroundTruthLog read_ground_truth(std::istream& is);

void save_detection_log(const std::filesystem::path& path, const DetectionLog& log);
DetectionLog load_detection_log(const std::filesystem::path& path);
void save_ground_truth(const std::filesystem::path& path, const GroundTruthLog& log);
GroundTruthLog load_ground_truth(const std::filesystem::path& path);

}  // namespace uasdetect::io
