#include "uasdetect/maskops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "uasdetect/error.hpp"

namespace uasdetect {

void StructuringElement::validate() const {
  if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0)
    throw InvalidArgument("structuring element sides must be odd and >= 1, got " +
                          std::to_string(width) + "x" + std::to_string(height));
}

StructuringElement StructuringElement::rectangle(int width, int height) {
  StructuringElement se{width, height};
  se.validate();
  return se;
}

namespace {

// Counts set pixels in the clipped window [x - r, x + r] of each row. Erosion
// keeps pixels whose count equals the full window length, which fails
// automatically wherever the window is clipped by the border.
template <bool Erode>
BinaryMask horizontal_pass(const BinaryMask& in, int radius) {
  const int w = in.width();
  const int h = in.height();
  const int full = 2 * radius + 1;
  BinaryMask out(w, h);
  auto src = in.bits();
  auto dst = out.bits();
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = src.data() + static_cast<std::size_t>(y) * w;
    std::uint8_t* orow = dst.data() + static_cast<std::size_t>(y) * w;
    int count = 0;
    for (int x = 0; x <= std::min(radius, w - 1); ++x) count += row[x];
    for (int x = 0; x < w; ++x) {
      orow[x] = Erode ? (count == full) : (count > 0);
      const int enter = x + radius + 1;
      const int leave = x - radius;
      if (enter < w) count += row[enter];
      if (leave >= 0) count -= row[leave];
    }
  }
  return out;
}

template <bool Erode>
BinaryMask vertical_pass(const BinaryMask& in, int radius) {
  const int w = in.width();
  const int h = in.height();
  const int full = 2 * radius + 1;
  BinaryMask out(w, h);
  auto src = in.bits();
  auto dst = out.bits();
  std::vector<int> counts(static_cast<std::size_t>(w), 0);
  auto add_row = [&](int y, int sign) {
    const std::uint8_t* row = src.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) counts[x] += sign * row[x];
  };
  for (int y = 0; y <= std::min(radius, h - 1); ++y) add_row(y, +1);
  for (int y = 0; y < h; ++y) {
    std::uint8_t* orow = dst.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) orow[x] = Erode ? (counts[x] == full) : (counts[x] > 0);
    const int enter = y + radius + 1;
    const int leave = y - radius;
    if (enter < h) add_row(enter, +1);
    if (leave >= 0) add_row(leave, -1);
  }
  return out;
}

}  // namespace

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
  se.validate();
  if (mask.size() == 0) return mask;
  return vertical_pass<true>(horizontal_pass<true>(mask, se.radius_x()), se.radius_y());
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
  se.validate();
  if (mask.size() == 0) return mask;
  return vertical_pass<false>(horizontal_pass<false>(mask, se.radius_x()), se.radius_y());
}

BinaryMask open(const BinaryMask& mask, const StructuringElement& se, int iterations) {
  if (iterations < 1) throw InvalidArgument("open: iterations must be >= 1");
  BinaryMask m = mask;
  for (int i = 0; i < iterations; ++i) m = erode(m, se);
  for (int i = 0; i < iterations; ++i) m = dilate(m, se);
  return m;
}

BinaryMask close(const BinaryMask& mask, const StructuringElement& se, int iterations) {
  if (iterations < 1) throw InvalidArgument("close: iterations must be >= 1");
  BinaryMask m = mask;
  for (int i = 0; i < iterations; ++i) m = dilate(m, se);
  for (int i = 0; i < iterations; ++i) m = erode(m, se);
  return m;
}

namespace {

std::int32_t find_root(std::vector<std::int32_t>& parent, std::int32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void unite(std::vector<std::int32_t>& parent, std::int32_t a, std::int32_t b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a == b) return;
  if (a < b) {
    parent[b] = a;
  } else {
    parent[a] = b;
  }
}

}  // namespace

LabeledRegions connected_components(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  LabeledRegions out;
  out.width = w;
  out.height = h;
  out.labels.assign(mask.size(), 0);
  if (mask.size() == 0) return out;

  // First pass: provisional labels are the raster index of the pixel that
  // opened them, merged through union-find over the four causal 8-neighbors.
  auto bits = mask.bits();
  std::vector<std::int32_t> parent(mask.size(), -1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t p = y * w + x;
      if (!bits[p]) continue;
      parent[p] = p;
      if (x > 0 && bits[p - 1]) unite(parent, p, p - 1);
      if (y > 0) {
        const std::int32_t up = p - w;
        if (x > 0 && bits[up - 1]) unite(parent, p, up - 1);
        if (bits[up]) unite(parent, p, up);
        if (x + 1 < w && bits[up + 1]) unite(parent, p, up + 1);
      }
    }
  }

  // Second pass: regions are numbered in order of their first pixel.
  std::vector<std::int32_t> region_of_root(mask.size(), -1);
  for (std::int32_t p = 0; p < static_cast<std::int32_t>(mask.size()); ++p) {
    if (!bits[p]) continue;
    const std::int32_t root = find_root(parent, p);
    std::int32_t& idx = region_of_root[root];
    if (idx < 0) {
      idx = static_cast<std::int32_t>(out.regions.size());
      Region r;
      const int x = p % w;
      const int y = p / w;
      r.box = Box{x, y, x + 1, y + 1};
      out.regions.push_back(std::move(r));
    }
    Region& r = out.regions[idx];
    const int x = p % w;
    const int y = p / w;
    r.pixels.push_back(p);
    r.box.x_min = std::min(r.box.x_min, x);
    r.box.y_min = std::min(r.box.y_min, y);
    r.box.x_max = std::max(r.box.x_max, x + 1);
    r.box.y_max = std::max(r.box.y_max, y + 1);
    r.centroid_x += x;
    r.centroid_y += y;
    out.labels[p] = idx + 1;
  }
  for (Region& r : out.regions) {
    r.area = static_cast<std::int64_t>(r.pixels.size());
    r.centroid_x = r.centroid_x / static_cast<double>(r.area) + 0.5;
    r.centroid_y = r.centroid_y / static_cast<double>(r.area) + 0.5;
  }
  return out;
}

std::vector<Blob> regions_to_detections(const LabeledRegions& regions, double min_area,
                                        const BinaryMask& roi) {
  if (!(min_area >= 0.0)) throw InvalidArgument("min_area must be >= 0");
  if (roi.width() != regions.width || roi.height() != regions.height)
    throw DimensionMismatch("roi mask shape differs from the labeled mask");
  std::vector<Blob> out;
  for (const Region& r : regions.regions) {
    if (static_cast<double>(r.area) < min_area) continue;
    const int cx = static_cast<int>(std::floor(r.centroid_x));
    const int cy = static_cast<int>(std::floor(r.centroid_y));
    if (!roi.in_bounds(cx, cy) || !roi.get(cx, cy)) continue;
    out.push_back(Blob{r.box, r.area});
  }
  return out;
}

}  // namespace uasdetect
