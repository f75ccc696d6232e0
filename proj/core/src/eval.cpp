#include "uasdetect/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "uasdetect/error.hpp"

namespace uasdetect {

double iou(const Box& a, const Box& b) {
  if (a.empty() || b.empty()) return 0.0;
  const std::int64_t inter = intersection(a, b).area();
  if (inter == 0) return 0.0;
  const std::int64_t uni = a.area() + b.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

FrameCounts match_frame(std::span<const Box> detections, std::span<const Box> ground_truth,
                        double iou_min, int frame_index) {
  if (!(iou_min > 0.0 && iou_min <= 1.0))
    throw InvalidArgument("iou_min must be within (0, 1]");

  struct Pair {
    double iou;
    std::size_t det;
    std::size_t gt;
  };
  std::vector<Pair> pairs;
  for (std::size_t d = 0; d < detections.size(); ++d) {
    for (std::size_t g = 0; g < ground_truth.size(); ++g) {
      const double v = iou(detections[d], ground_truth[g]);
      if (v >= iou_min) pairs.push_back({v, d, g});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.det != b.det) return a.det < b.det;
    return a.gt < b.gt;
  });

  std::vector<bool> det_used(detections.size(), false);
  std::vector<bool> gt_used(ground_truth.size(), false);
  std::int64_t tp = 0;
  for (const Pair& p : pairs) {
    if (det_used[p.det] || gt_used[p.gt]) continue;
    det_used[p.det] = gt_used[p.gt] = true;
    ++tp;
  }
  FrameCounts c;
  c.frame_index = frame_index;
  c.tp = tp;
  c.fp = static_cast<std::int64_t>(detections.size()) - tp;
  c.fn = static_cast<std::int64_t>(ground_truth.size()) - tp;
  return c;
}

void SamplingPolicy::validate() const {
  if (start < 0) throw InvalidArgument("sampling start must be >= 0");
  if (end < start) throw InvalidArgument("sampling end must be >= start");
  if (step < 1) throw InvalidArgument("sampling step must be >= 1");
}

std::vector<int> sample_frames(const SamplingPolicy& policy) {
  policy.validate();
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>((policy.end - policy.start) / policy.step + 1));
  for (int f = policy.start; f <= policy.end; f += policy.step) out.push_back(f);
  return out;
}

std::int64_t Ratio::rounded_scaled(int digits) const {
  if (den == 0) throw InvalidArgument("rounding an undefined ratio");
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = (num < 0) != (den < 0);
  const std::int64_t n = std::abs(num) * scale;
  const std::int64_t d = std::abs(den);
  // floor(n / d + 1/2) on magnitudes rounds halves away from zero.
  const std::int64_t q = (2 * n + d) / (2 * d);
  return negative ? -q : q;
}

double round_half_away(double value, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(value * scale) / scale;
}

Ratio MetricsRecord::f1_ratio() const { return {2 * tp, 2 * tp + fp + fn}; }

std::optional<std::int64_t> MetricsRecord::precision_milli() const {
  if (!precision) return std::nullopt;
  return precision_ratio().rounded_scaled(3);
}

std::optional<std::int64_t> MetricsRecord::recall_milli() const {
  if (!recall) return std::nullopt;
  return recall_ratio().rounded_scaled(3);
}

std::optional<std::int64_t> MetricsRecord::f1_milli() const {
  if (!f1) return std::nullopt;
  return f1_ratio().rounded_scaled(3);
}

double harmonic_f1(double precision, double recall) {
  return 2.0 * precision * recall / (precision + recall);
}

MetricsRecord metrics_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn,
                                  ScenarioId id) {
  if (tp < 0 || fp < 0 || fn < 0) throw InvalidArgument("counts must be non-negative");
  MetricsRecord r;
  r.id = std::move(id);
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  if (tp + fp > 0) r.precision = r.precision_ratio().value();
  if (tp + fn > 0) r.recall = r.recall_ratio().value();
  if (r.precision && r.recall && *r.precision + *r.recall > 0.0)
    r.f1 = harmonic_f1(*r.precision, *r.recall);
  r.flagged = tp == 0 && fp == 0 && fn == 0;
  return r;
}

MetricsRecord aggregate(std::span<const FrameCounts> counts, ScenarioId id) {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  for (const auto& c : counts) {
    tp += c.tp;
    fp += c.fp;
    fn += c.fn;
  }
  return metrics_from_counts(tp, fp, fn, std::move(id));
}

FixtureReport fixture_check(std::span<const FixtureRow> rows) {
  FixtureReport report;
  report.rows = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const FixtureRow& row = rows[i];
    MetricsRecord rec = metrics_from_counts(row.tp, row.fp, row.fn, row.id);
    auto compare = [&](const char* name, std::optional<std::int64_t> printed,
                       std::optional<std::int64_t> computed) {
      ++report.values_checked;
      if (printed != computed) {
        report.mismatches.push_back(FixtureMismatch{i, row.id, name, printed, computed});
      }
    };
    compare("precision", row.precision_milli, rec.precision_milli());
    compare("recall", row.recall_milli, rec.recall_milli());
    compare("f1", row.f1_milli, rec.f1_milli());
    report.recomputed.push_back(std::move(rec));
  }
  return report;
}

}  // namespace uasdetect
