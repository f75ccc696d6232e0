#include "uasdetect/io/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "uasdetect/error.hpp"

namespace uasdetect::io {

namespace fs = std::filesystem;

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

int header_int(std::istream& in, const fs::path& path, const char* what) {
  const std::string tok = header_token(in);
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error("'" + path.string() + "': bad " + what + " in header");
  return std::stoi(tok);
}

}  // namespace

Frame read_pnm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("'" + path.string() + "': cannot open");
  const std::string magic = header_token(in);
  int channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw Error("'" + path.string() + "': not a binary PGM/PPM file");
  }
  const int width = header_int(in, path, "width");
  const int height = header_int(in, path, "height");
  const int maxval = header_int(in, path, "maxval");
  if (maxval != 255) throw Error("'" + path.string() + "': only 8-bit rasters (maxval 255) are supported");
  if (width <= 0 || height <= 0) throw Error("'" + path.string() + "': empty raster");
  std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height * channels);
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (in.gcount() != static_cast<std::streamsize>(data.size()))
    throw Error("'" + path.string() + "': truncated pixel data");
  return Frame(width, height, channels, std::move(data));
}

void write_pnm(const fs::path& path, const Frame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("'" + path.string() + "': cannot open for writing");
  out << (frame.channels() == 1 ? "P5" : "P6") << '\n'
      << frame.width() << ' ' << frame.height() << "\n255\n";
  auto data = frame.data();
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("'" + path.string() + "': write failed");
}

std::string frame_filename(int index, int channels) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06d.%s", index, channels == 1 ? "pgm" : "ppm");
  return buf;
}

std::vector<fs::path> list_frame_files(const fs::path& directory) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec))
    throw Error("'" + directory.string() + "': not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".pgm" || ext == ".ppm") files.push_back(entry.path());
  }
  if (files.empty()) throw Error("'" + directory.string() + "': no .pgm/.ppm frames found");
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return files;
}

DirectoryFrameSource::DirectoryFrameSource(const fs::path& directory)
    : files_(list_frame_files(directory)) {}

std::optional<Frame> DirectoryFrameSource::next() {
  if (pos_ >= files_.size()) return std::nullopt;
  const fs::path& path = files_[pos_++];
  Frame f = read_pnm(path);
  if (width_ < 0) {
    width_ = f.width();
    height_ = f.height();
  } else if (f.width() != width_ || f.height() != height_) {
    throw DimensionMismatch("'" + path.string() + "': " + std::to_string(f.width()) + "x" +
                            std::to_string(f.height()) + " differs from the first frame (" +
                            std::to_string(width_) + "x" + std::to_string(height_) + ")");
  }
  return f;
}

std::vector<Frame> load_frames(const fs::path& directory) {
  DirectoryFrameSource source(directory);
  std::vector<Frame> out;
  out.reserve(source.size());
  while (auto f = source.next()) out.push_back(std::move(*f));
  return out;
}

void write_frames(const fs::path& directory, std::span<const Frame> frames) {
  fs::create_directories(directory);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    write_pnm(directory / frame_filename(static_cast<int>(i), frames[i].channels()), frames[i]);
  }
}

}  // namespace uasdetect::io
