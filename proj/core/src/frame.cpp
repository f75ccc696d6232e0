#include "uasdetect/frame.hpp"

#include <string>

#include "uasdetect/error.hpp"

namespace uasdetect {

namespace {

void check_dims(int width, int height, int channels) {
  if (width < 0 || height < 0)
    throw InvalidArgument("frame dimensions must be non-negative");
  if (channels != 1 && channels != 3)
    throw InvalidArgument("frame channels must be 1 or 3, got " +
                          std::to_string(channels));
}

}  // namespace

Frame::Frame(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height, channels);
  data_.assign(pixel_count() * static_cast<std::size_t>(channels), fill);
}

Frame::Frame(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dims(width, height, channels);
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels))
    throw DimensionMismatch("frame buffer holds " + std::to_string(data_.size()) +
                            " bytes, expected " +
                            std::to_string(pixel_count() * channels));
}

Frame to_luminance(const Frame& frame) {
  if (frame.channels() == 1) return frame;
  Frame out(frame.width(), frame.height(), 1);
  auto src = frame.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const unsigned r = src[3 * i];
    const unsigned g = src[3 * i + 1];
    const unsigned b = src[3 * i + 2];
    dst[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
  }
  return out;
}

Frame to_rgb(const Frame& frame) {
  if (frame.channels() == 3) return frame;
  Frame out(frame.width(), frame.height(), 3);
  auto src = frame.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[3 * i] = dst[3 * i + 1] = dst[3 * i + 2] = src[i];
  }
  return out;
}

}  // namespace uasdetect
