#pragma once

#include <cstdint>
#include <iosfwd>

namespace uasdetect {

// Axis-aligned pixel box in half-open coordinates: columns [x_min, x_max),
// rows [y_min, y_max). A box covering the single pixel (3, 4) is
// {3, 4, 4, 5}.
struct Box {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  int width() const { return x_max - x_min; }
  int height() const { return y_max - y_min; }
  std::int64_t area() const {
    return empty() ? 0 : std::int64_t{width()} * height();
  }
  bool empty() const { return x_max <= x_min || y_max <= y_min; }
  bool valid() const { return x_min <= x_max && y_min <= y_max; }
  bool within(int frame_width, int frame_height) const {
    return valid() && x_min >= 0 && y_min >= 0 && x_max <= frame_width &&
           y_max <= frame_height;
  }
  double center_x() const { return 0.5 * (x_min + x_max); }
  double center_y() const { return 0.5 * (y_min + y_max); }

  friend bool operator==(const Box&, const Box&) = default;
};

Box intersection(const Box& a, const Box& b);

std::ostream& operator<<(std::ostream& os, const Box& box);

}  // namespace uasdetect
