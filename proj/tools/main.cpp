// uasdetect command-line entry point. Every failure ends with one JSON line
// on stderr: {"error": kind, "message": ..., ["field", "line"]}.

#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "uasdetect/error.hpp"
#include "uasdetect/io/config.hpp"

namespace {

int fail(const std::string& kind, const std::string& message, int code,
         nlohmann::json extra = nlohmann::json::object()) {
  extra["error"] = kind;
  extra["message"] = message;
  std::cerr << extra.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace uasdetect::cli;

  CLI::App app{"Vehicle detection in fixed-viewpoint traffic video"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic scene to frames plus ground truth");
  synth_cmd->add_option("--scene", synth.scene, "Scene YAML file")->required()->check(CLI::ExistingFile);
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();

  DetectOptions detect;
  auto* detect_cmd = app.add_subcommand("detect", "Run the detection pipeline over a run configuration");
  detect_cmd->add_option("--config", detect.config, "Run YAML file")->required()->check(CLI::ExistingFile);
  detect_cmd->add_option("--out", detect.out, "Output directory (overrides the config)");
  detect_cmd->add_option("--truth", detect.truth, "Ground truth for annotated frames");
  detect_cmd->add_option("--jobs", detect.jobs, "Scenarios processed in parallel")->check(CLI::PositiveNumber);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score detection logs against ground truth");
  eval_cmd->add_option("--config", eval.config, "Run YAML file")->check(CLI::ExistingFile);
  eval_cmd->add_option("--detections", eval.detections, "Detection log")->check(CLI::ExistingFile);
  eval_cmd->add_option("--truth", eval.truth, "Ground truth log")->check(CLI::ExistingFile);
  eval_cmd->add_option("--out", eval.out, "Metrics CSV path");
  eval_cmd->add_option("--start", eval.start, "First sampled frame");
  eval_cmd->add_option("--end", eval.end, "Last sampled frame (inclusive)");
  eval_cmd->add_option("--step", eval.step, "Sampling step");
  eval_cmd->add_option("--iou-min", eval.iou_min, "Minimum IoU for a match");

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Render an SVG bar chart from a metrics CSV");
  report_cmd->add_option("--csv", report.csv, "Metrics CSV")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--out", report.out, "SVG path")->required();
  report_cmd->add_option("--metric", report.metric, "f1, recall or precision")
      ->check(CLI::IsMember({"f1", "recall", "precision"}));

  FixtureOptions fixture;
  auto* fixture_cmd = app.add_subcommand("fixture-check", "Recompute the bundled published-table fixture");
  fixture_cmd->add_option("--fixture", fixture.fixture, "Fixture CSV (defaults to the bundled table)")
      ->check(CLI::ExistingFile);
  fixture_cmd->add_option("--csv", fixture.csv, "Write the recomputed metrics CSV");
  fixture_cmd->add_option("--svg", fixture.svg, "Write an F1 chart of the recomputed metrics");
  fixture_cmd->add_flag("--strict", fixture.strict, "Exit nonzero when any printed value disagrees");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Measure end-to-end pipeline throughput");
  bench_cmd->add_option("--frames", bench.frames, "Synthetic frames to process");
  bench_cmd->add_option("--width", bench.width, "Frame width")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--height", bench.height, "Frame height")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Scene seed");
  bench_cmd->add_option("--frames-dir", bench.frames_dir, "Benchmark these frames instead")
      ->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--min-fps", bench.min_fps, "Fail below this throughput");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (*synth_cmd) return run_synth(synth);
    if (*detect_cmd) return run_detect(detect);
    if (*eval_cmd) return run_eval(eval);
    if (*report_cmd) return run_report(report);
    if (*fixture_cmd) return run_fixture_check(fixture, argv[0]);
    if (*bench_cmd) return run_bench(bench);
  } catch (const CommandFailure& e) {
    return fail(e.kind, e.message, e.exit_code);
  } catch (const uasdetect::io::ConfigError& e) {
    return fail("config", e.what(), 1, {{"field", e.field()}, {"line", e.line()}});
  } catch (const uasdetect::InvalidArgument& e) {
    return fail("invalid_argument", e.what(), 1);
  } catch (const uasdetect::Error& e) {
    return fail("runtime", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return fail("usage", "no subcommand", 2);
}
