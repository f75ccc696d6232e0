#pragma once

// Binary netpbm frames: P5 (8-bit gray) and P6 (24-bit RGB), maxval 255.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uasdetect/frame.hpp"
#include "uasdetect/pipeline.hpp"

namespace uasdetect::io {

Frame read_pnm(const std::filesystem::path& path);
void write_pnm(const std::filesystem::path& path, const Frame& frame);

// "000042.pgm" or "000042.ppm" depending on channel count.
std::string frame_filename(int index, int channels);

// .pgm/.ppm files of `directory` in lexicographic order. Throws when the
// directory is missing or holds no frames.
std::vector<std::filesystem::path> list_frame_files(
    const std::filesystem::path& directory);

// Lazily reads frames in filename order. Throws, naming the file, when a
// frame is unreadable or its dimensions differ from the first.
class DirectoryFrameSource final : public FrameSource {
 public:
  explicit DirectoryFrameSource(const std::filesystem::path& directory);
  std::optional<Frame> next() override;
  std::size_t size() const { return files_.size(); }

 private:
  std::vector<std::filesystem::path> files_;
  std::size_t pos_ = 0;
  int width_ = -1;
  int height_ = -1;
};

std::vector<Frame> load_frames(const std::filesystem::path& directory);
void write_frames(const std::filesystem::path& directory,
                  std::span<const Frame> frames);

}  // namespace uasdetect::io
