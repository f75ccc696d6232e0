#pragma once

// Detection-versus-ground-truth matching and precision / recall / F1.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uasdetect/box.hpp"
#include "uasdetect/geometry.hpp"

namespace uasdetect {

// Intersection over union; 0 when either box is empty or they are disjoint.
double iou(const Box& a, const Box& b);

struct FrameCounts {
  int frame_index = 0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  friend bool operator==(const FrameCounts&, const FrameCounts&) = default;
};

// Greedy one-to-one matching: candidate pairs with IoU >= iou_min are taken
// in descending IoU order, ties broken by lower detection index, then lower
// ground-truth index. Throws InvalidArgument unless iou_min is in (0, 1].
FrameCounts match_frame(std::span<const Box> detections,
                        std::span<const Box> ground_truth, double iou_min,
                        int frame_index = 0);

struct SamplingPolicy {
  int start = 200;
  int end = 700;  // inclusive
  int step = 5;

  void validate() const;
};

// {start, start + step, ...} up to and including `end`.
std::vector<int> sample_frames(const SamplingPolicy& policy);

// Exact rational value with half-away-from-zero rounding.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 0;

  bool defined() const { return den != 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  // round(num / den * 10^digits), ties away from zero. Requires defined().
  std::int64_t rounded_scaled(int digits = 3) const;
};

// Half-away-from-zero rounding of a double to `digits` decimals.
double round_half_away(double value, int digits = 3);

struct ScenarioId {
  double height = 0.0;
  double azimuth = 0.0;
  Band band = Band::RGB;
  std::string direction;

  friend bool operator==(const ScenarioId&, const ScenarioId&) = default;
};

struct MetricsRecord {
  ScenarioId id;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  // Raw values; nullopt means undefined (never coerced to 0 or 1).
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  // Set when every count is zero and no metric is defined.
  bool flagged = false;

  Ratio precision_ratio() const { return {tp, tp + fp}; }
  Ratio recall_ratio() const { return {tp, tp + fn}; }
  // 2TP / (2TP + FP + FN); equals the harmonic mean of precision and recall
  // whenever f1 is defined.
  Ratio f1_ratio() const;

  // Values rounded half-away-from-zero to 3 decimals, expressed in
  // thousandths.
  std::optional<std::int64_t> precision_milli() const;
  std::optional<std::int64_t> recall_milli() const;
  std::optional<std::int64_t> f1_milli() const;
};

double harmonic_f1(double precision, double recall);

// Sums per-frame counts, then computes precision = TP/(TP+FP),
// recall = TP/(TP+FN), and F1 = 2pr/(p+r).
MetricsRecord aggregate(std::span<const FrameCounts> counts, ScenarioId id);
MetricsRecord metrics_from_counts(std::int64_t tp, std::int64_t fp,
                                  std::int64_t fn, ScenarioId id);

// One printed row of a published results table: counts plus the printed
// derived values in thousandths (nullopt when the cell is blank).
struct FixtureRow {
  ScenarioId id;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::optional<std::int64_t> precision_milli;
  std::optional<std::int64_t> recall_milli;
  std::optional<std::int64_t> f1_milli;
};

struct FixtureMismatch {
  std::size_t row = 0;
  ScenarioId id;
  std::string metric;
  std::optional<std::int64_t> printed_milli;
  std::optional<std::int64_t> computed_milli;
};

struct FixtureReport {
  std::size_t rows = 0;
  std::size_t values_checked = 0;
  std::vector<FixtureMismatch> mismatches;
  std::vector<MetricsRecord> recomputed;

  bool consistent() const { return mismatches.empty(); }
};

// Recomputes the derived values of every row from its counts and lists each
// disagreement with the printed value at 3 decimals. Never throws on a
// disagreement.
FixtureReport fixture_check(std::span<const FixtureRow> rows);

}  // namespace uasdetect
