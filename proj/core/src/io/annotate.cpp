#include "uasdetect/io/annotate.hpp"

#include <algorithm>

#include "uasdetect/error.hpp"
#include "uasdetect/geometry.hpp"

namespace uasdetect::io {

namespace {

void put(Frame& f, int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= f.width() || y >= f.height()) return;
  f.at(x, y, 0) = c.r;
  f.at(x, y, 1) = c.g;
  f.at(x, y, 2) = c.b;
}

void outline(Frame& f, const Box& b, Rgb c) {
  if (b.empty()) return;
  const int x1 = b.x_max - 1;
  const int y1 = b.y_max - 1;
  for (int x = b.x_min; x <= x1; ++x) {
    put(f, x, b.y_min, c);
    put(f, x, y1, c);
  }
  for (int y = b.y_min; y <= y1; ++y) {
    put(f, b.x_min, y, c);
    put(f, x1, y, c);
  }
}

}  // namespace

Frame annotate_frame(const Frame& frame, std::span<const Detection> detections,
                     std::span<const GroundTruthEntry> truth, int cutoff_row,
                     const AnnotationStyle& style) {
  Frame out = frame.channels() == 3 ? frame : to_rgb(frame);
  if (cutoff_row >= 0 && cutoff_row < out.height())
    for (int x = 0; x < out.width(); ++x) put(out, x, cutoff_row, style.cutoff);
  for (const auto& t : truth) outline(out, t.box, style.ground_truth);
  for (const auto& d : detections) outline(out, d.box, style.detection);
  return out;
}

std::vector<Frame> annotate_frames(std::span<const Frame> frames, const DetectionLog& log,
                                   const GroundTruthLog* truth, const AnnotationStyle& style) {
  if (truth && truth->frames.size() < frames.size())
    throw InvalidArgument("ground truth covers " + std::to_string(truth->frames.size()) +
                          " frames, sequence has " + std::to_string(frames.size()));
  std::vector<const FrameDetections*> by_frame(frames.size(), nullptr);
  for (const auto& fd : log.frames) {
    if (fd.frame_index < 0 || static_cast<std::size_t>(fd.frame_index) >= frames.size())
      throw InvalidArgument("detection log references frame " + std::to_string(fd.frame_index) +
                            " of a " + std::to_string(frames.size()) + "-frame sequence");
    by_frame[static_cast<std::size_t>(fd.frame_index)] = &fd;
  }
  const int height = frames.empty() ? 0 : frames.front().height();
  const int cutoff = frames.empty() ? -1 : cutoff_row(log.config.roi.cutoff_fraction, height);
  std::vector<Frame> out;
  out.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::span<const Detection> dets;
    if (by_frame[i]) dets = by_frame[i]->detections;
    std::span<const GroundTruthEntry> gt;
    if (truth) gt = truth->frames[i];
    out.push_back(annotate_frame(frames[i], dets, gt, cutoff, style));
  }
  return out;
}

}  // namespace uasdetect::io
