#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uasdetect {

// 8-bit raster, interleaved channels, row-major. channels is 1 (gray) or 3
// (RGB).
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, int channels = 1, std::uint8_t fill = 0);
  Frame(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const { return pixel_count() == 0; }
  bool same_shape(const Frame& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  std::uint8_t& at(int x, int y, int c = 0) {
    return data_[index(x, y) * static_cast<std::size_t>(channels_) + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return data_[index(x, y) * static_cast<std::size_t>(channels_) + c];
  }

  std::span<std::uint8_t> data() { return data_; }
  std::span<const std::uint8_t> data() const { return data_; }
  std::span<const std::uint8_t> row(int y) const {
    return std::span<const std::uint8_t>(data_).subspan(
        static_cast<std::size_t>(y) * width_ * channels_,
        static_cast<std::size_t>(width_) * channels_);
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<std::uint8_t> data_;
};

// Single-channel frame; the unit the background model consumes in
// luminance mode.
using GrayFrame = Frame;

// BT.601 integer luma, (299 R + 587 G + 114 B + 500) / 1000. Gray frames are
// returned unchanged.
Frame to_luminance(const Frame& frame);

// Replicates a gray frame into three channels. RGB frames are returned
// unchanged.
Frame to_rgb(const Frame& frame);

}  // namespace uasdetect
