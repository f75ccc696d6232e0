#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "oracles.hpp"
#include "uasdetect/error.hpp"
#include "uasdetect/eval.hpp"
#include "uasdetect/io/report.hpp"

using namespace uasdetect;

namespace {

Box box_of(const oracle::Rect& r) { return {r.x0, r.y0, r.x1, r.y1}; }

oracle::Rect random_rect(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pos(0, 20), size(1, 10);
  const int x = pos(rng), y = pos(rng);
  return {x, y, x + size(rng), y + size(rng)};
}

std::vector<FixtureRow> bundled_fixture() {
  std::ifstream in(UASDETECT_TEST_FIXTURE);
  return io::read_fixture_csv(in);
}

const FixtureRow& find_row(const std::vector<FixtureRow>& rows, Band band, double h, double a,
                           const std::string& dir) {
  for (const auto& r : rows)
    if (r.id.band == band && r.id.height == h && r.id.azimuth == a && r.id.direction == dir) return r;
  throw std::runtime_error("row not in fixture");
}

}  // namespace

TEST(Iou, HandComputed) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {20, 20, 30, 30}), 0.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {10, 0, 20, 10}), 0.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {5, 0, 15, 10}), 50.0 / 150.0);
  EXPECT_DOUBLE_EQ(iou({1, 1, 11, 11}, {0, 0, 10, 10}), 81.0 / 119.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 0, 5}, {0, 0, 0, 5}), 0.0);
}

TEST(Iou, MatchesPixelCountingOracle) {
  std::mt19937_64 rng(20);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_rect(rng), b = random_rect(rng);
    ASSERT_NEAR(iou(box_of(a), box_of(b)), oracle::iou(a, b), 1e-12);
  }
}

TEST(MatchFrame, Examples) {
  const std::vector<Box> none;
  const std::vector<Box> one_gt{{0, 0, 10, 10}};
  EXPECT_EQ(match_frame(none, one_gt, 0.3), (FrameCounts{0, 0, 0, 1}));
  const std::vector<Box> det{{1, 1, 11, 11}};
  EXPECT_EQ(match_frame(det, one_gt, 0.3), (FrameCounts{0, 1, 0, 0}));
  const std::vector<Box> two{{0, 0, 10, 10}, {1, 0, 11, 10}};
  EXPECT_EQ(match_frame(two, one_gt, 0.3), (FrameCounts{0, 1, 1, 0}));
}

TEST(MatchFrame, RejectsBadThreshold) {
  const std::vector<Box> b{{0, 0, 1, 1}};
  EXPECT_THROW(match_frame(b, b, 0.0), InvalidArgument);
  EXPECT_THROW(match_frame(b, b, 1.5), InvalidArgument);
  EXPECT_NO_THROW(match_frame(b, b, 1.0));
}

TEST(MatchFrame, TieGoesToLowerDetectionIndex) {
  // Both detections have the same IoU with the single ground truth.
  const std::vector<Box> dets{{2, 0, 12, 10}, {-2, 0, 8, 10}};
  const std::vector<Box> gts{{0, 0, 10, 10}};
  EXPECT_EQ(iou(dets[0], gts[0]), iou(dets[1], gts[0]));
  const auto c = match_frame(dets, gts, 0.3);
  EXPECT_EQ(c.tp, 1);
  EXPECT_EQ(c.fp, 1);
}

TEST(MatchFrame, CountIdentitiesAndOptimalityGap) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> n(0, 6);
  int worst_gap = 0;
  for (int i = 0; i < 3000; ++i) {
    std::vector<oracle::Rect> d, g;
    for (int k = n(rng); k > 0; --k) d.push_back(random_rect(rng));
    for (int k = n(rng); k > 0; --k) g.push_back(random_rect(rng));
    std::vector<Box> db, gb;
    for (const auto& r : d) db.push_back(box_of(r));
    for (const auto& r : g) gb.push_back(box_of(r));
    const double thr = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    const auto c = match_frame(db, gb, thr);
    ASSERT_LE(c.tp, static_cast<std::int64_t>(std::min(db.size(), gb.size())));
    ASSERT_EQ(c.tp + c.fp, static_cast<std::int64_t>(db.size()));
    ASSERT_EQ(c.tp + c.fn, static_cast<std::int64_t>(gb.size()));
    const int best = oracle::optimal_matches(d, g, thr);
    ASSERT_LE(c.tp, best);
    worst_gap = std::max(worst_gap, best - static_cast<int>(c.tp));
    ASSERT_LE(best - c.tp, 1) << "case " << i;
    // Raising the threshold never adds a match.
    const double higher = std::min(1.0, thr + 0.1);
    ASSERT_LE(match_frame(db, gb, higher).tp, c.tp);
  }
  RecordProperty("worst_gap", worst_gap);
}

TEST(MatchFrame, PureFunction) {
  std::mt19937_64 rng(22);
  std::vector<Box> d, g;
  for (int k = 0; k < 8; ++k) d.push_back(box_of(random_rect(rng)));
  for (int k = 0; k < 8; ++k) g.push_back(box_of(random_rect(rng)));
  EXPECT_EQ(match_frame(d, g, 0.2), match_frame(d, g, 0.2));
}

TEST(SampleFrames, Examples) {
  const auto f = sample_frames({200, 700, 5});
  ASSERT_EQ(f.size(), 101u);
  EXPECT_EQ(f.front(), 200);
  EXPECT_EQ(f.back(), 700);
  EXPECT_EQ(sample_frames({0, 0, 5}), std::vector<int>{0});
  EXPECT_EQ(sample_frames({200, 703, 5}).back(), 700);
  EXPECT_THROW(sample_frames({10, 5, 1}), InvalidArgument);
  EXPECT_THROW(sample_frames({0, 5, 0}), InvalidArgument);
}

TEST(Aggregate, SumsCountsFirst) {
  const std::vector<FrameCounts> counts{{0, 2, 1, 0}, {5, 3, 0, 0}};
  const auto r = aggregate(counts, {});
  EXPECT_EQ(r.tp, 5);
  EXPECT_EQ(r.fp, 1);
  EXPECT_NEAR(*r.precision, 5.0 / 6.0, 1e-15);
  EXPECT_EQ(r.precision_milli(), 833);
}

TEST(Aggregate, PublishedRows) {
  const auto a = metrics_from_counts(20, 5, 1, {});
  EXPECT_EQ(a.precision_milli(), 800);
  EXPECT_EQ(a.recall_milli(), 952);
  EXPECT_EQ(a.f1_milli(), 870);
  const auto b = metrics_from_counts(148, 0, 0, {});
  EXPECT_EQ(b.precision_milli(), 1000);
  EXPECT_EQ(b.recall_milli(), 1000);
  EXPECT_EQ(b.f1_milli(), 1000);
}

TEST(Aggregate, UndefinedMetrics) {
  const auto none = metrics_from_counts(0, 0, 0, {});
  EXPECT_TRUE(none.flagged);
  EXPECT_FALSE(none.precision || none.recall || none.f1);
  const auto misses = metrics_from_counts(0, 0, 4, {});
  EXPECT_FALSE(misses.flagged);
  EXPECT_FALSE(misses.precision);
  EXPECT_EQ(*misses.recall, 0.0);
  EXPECT_FALSE(misses.f1);
  const auto wrong = metrics_from_counts(0, 3, 4, {});
  EXPECT_EQ(*wrong.precision, 0.0);
  EXPECT_FALSE(wrong.f1);
  EXPECT_THROW(metrics_from_counts(-1, 0, 0, {}), InvalidArgument);
}

TEST(Rounding, HalfAwayFromZeroMatchesLongDivision) {
  EXPECT_EQ((Ratio{91, 251}.rounded_scaled(3)), 363);  // 0.36255...
  EXPECT_EQ((Ratio{29, 80}.rounded_scaled(3)), 363);    // exactly 0.3625
  EXPECT_EQ((Ratio{156, 192}.rounded_scaled(3)), 813);  // 0.8125
  EXPECT_EQ((Ratio{-29, 80}.rounded_scaled(3)), -363);
  EXPECT_EQ((Ratio{1, 2000}.rounded_scaled(3)), 1);
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long long> den(1, 100000);
  for (int i = 0; i < 100000; ++i) {
    const long long d = den(rng);
    const long long n = std::uniform_int_distribution<long long>(0, d)(rng);
    ASSERT_EQ((Ratio{n, d}.rounded_scaled(3)), oracle::round3(n, d)) << n << "/" << d;
  }
}

TEST(F1, HarmonicIdentity) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double p = u(rng), r = u(rng);
    const double expected = 1.0 / ((1.0 / p + 1.0 / r) / 2.0);
    ASSERT_NEAR(harmonic_f1(p, r), expected, 1e-12);
  }
  std::uniform_int_distribution<int> c(0, 1000);
  for (int i = 0; i < 10000; ++i) {
    const auto rec = metrics_from_counts(c(rng) + 1, c(rng), c(rng), {});
    ASSERT_NEAR(*rec.f1, rec.f1_ratio().value(), 1e-12);
  }
}

TEST(FixtureCheck, PublishedRowsReproduce) {
  const auto rows = bundled_fixture();
  ASSERT_EQ(rows.size(), 60u);
  const auto report = fixture_check(rows);
  EXPECT_EQ(report.values_checked, 180u);
  EXPECT_TRUE(report.consistent()) << io::format_fixture_report(report);

  const auto& a = find_row(rows, Band::RGB, 400, 135, "South");
  EXPECT_EQ(std::tie(a.tp, a.fp, a.fn), std::make_tuple(253, 0, 47));
  EXPECT_EQ(a.recall_milli, 843);
  EXPECT_EQ(a.f1_milli, 915);
  const auto& b = find_row(rows, Band::RGB, 300, 45, "North");
  EXPECT_EQ(std::tie(b.tp, b.fp, b.fn), std::make_tuple(621, 14, 123));
  EXPECT_EQ(b.precision_milli, 978);
  const auto& c = find_row(rows, Band::IR, 50, 45, "South");
  EXPECT_EQ(std::tie(c.tp, c.fp, c.fn), std::make_tuple(91, 0, 160));
  EXPECT_EQ(c.recall_milli, 363);
  EXPECT_EQ(c.f1_milli, 532);
}

TEST(FixtureCheck, ReportsDisagreementWithoutThrowing) {
  auto rows = bundled_fixture();
  rows[3].f1_milli = *rows[3].f1_milli + 1;
  rows[7].precision_milli.reset();
  const auto report = fixture_check(rows);
  ASSERT_EQ(report.mismatches.size(), 2u);
  EXPECT_EQ(report.mismatches[0].row, 3u);
  EXPECT_EQ(report.mismatches[0].metric, "f1");
  EXPECT_EQ(report.mismatches[1].row, 7u);
  EXPECT_EQ(report.mismatches[1].metric, "precision");
}
