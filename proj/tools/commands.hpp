#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace uasdetect::cli {

struct SynthOptions {
  std::filesystem::path scene;
  std::filesystem::path out;
};

struct DetectOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> truth;  // for annotated frames
  int jobs = 1;
};

struct EvalOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> detections;
  std::optional<std::filesystem::path> truth;
  std::optional<std::filesystem::path> out;
  std::optional<int> start;
  std::optional<int> end;
  std::optional<int> step;
  std::optional<double> iou_min;
};

struct ReportOptions {
  std::filesystem::path csv;
  std::filesystem::path out;
  std::string metric = "f1";
};

struct FixtureOptions {
  std::optional<std::filesystem::path> fixture;
  std::optional<std::filesystem::path> csv;
  std::optional<std::filesystem::path> svg;
  bool strict = false;
};

struct BenchOptions {
  int frames = 300;
  int width = 640;
  int height = 480;
  std::uint64_t seed = 7;
  std::optional<std::filesystem::path> frames_dir;
  double min_fps = 0.0;
};

// Each returns the process exit code. Failures are thrown.
int run_synth(const SynthOptions& options);
int run_detect(const DetectOptions& options);
int run_eval(const EvalOptions& options);
int run_report(const ReportOptions& options);
int run_fixture_check(const FixtureOptions& options, const std::filesystem::path& exe_path);
int run_bench(const BenchOptions& options);

// Thrown when a command completes but its outcome is a failure, such as
// throughput below --min-fps.
struct CommandFailure {
  std::string kind;
  std::string message;
  int exit_code = 1;
};

}  // namespace uasdetect::cli
