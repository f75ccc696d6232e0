#pragma once

// Binary morphology and connected-component extraction for foreground
// masks. Pixels outside the frame count as background for every operation.

#include <cstdint>
#include <vector>

#include "uasdetect/box.hpp"
#include "uasdetect/mask.hpp"

namespace uasdetect {

// Centered rectangle with odd side lengths.
struct StructuringElement {
  int width = 3;
  int height = 3;

  int radius_x() const { return width / 2; }
  int radius_y() const { return height / 2; }
  void validate() const;

  static StructuringElement rectangle(int width, int height);
};

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);

// `iterations` erosions followed by as many dilations (open), or the reverse
// (close). Throws InvalidArgument when iterations < 1.
BinaryMask open(const BinaryMask& mask, const StructuringElement& se,
                int iterations = 1);
BinaryMask close(const BinaryMask& mask, const StructuringElement& se,
                 int iterations = 1);

struct Region {
  std::vector<std::int32_t> pixels;  // raster indices y * width + x, ascending
  std::int64_t area = 0;
  Box box;                           // tight, half-open
  double centroid_x = 0.0;           // mean of pixel centers (x + 0.5)
  double centroid_y = 0.0;
};

struct LabeledRegions {
  int width = 0;
  int height = 0;
  // Ordered by first pixel in raster order.
  std::vector<Region> regions;
  // 0 for background, otherwise 1 + index into `regions`.
  std::vector<std::int32_t> labels;
};

// 8-connected labeling.
LabeledRegions connected_components(const BinaryMask& mask);

struct Blob {
  Box box;
  std::int64_t area = 0;
};

// Keeps regions with area >= min_area whose centroid falls on an active
// pixel of `roi`.
std::vector<Blob> regions_to_detections(const LabeledRegions& regions,
                                        double min_area, const BinaryMask& roi);

}  // namespace uasdetect
