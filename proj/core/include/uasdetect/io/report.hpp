#pragma once

// Metrics tables (CSV), published-table fixtures, and SVG bar charts.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "uasdetect/eval.hpp"

namespace uasdetect::io {

// Columns: height,azimuth,band,direction,TP,FP,FN,precision,recall,F1.
// Metrics are written with 3 decimals (half away from zero); undefined
// values are written as NA.
void write_metrics_csv(std::ostream& os, std::span<const MetricsRecord> records);
std::vector<MetricsRecord> read_metrics_csv(std::istream& is);

// Columns: band,height,azimuth,direction,tp,fp,fn,precision,recall,f1.
std::vector<FixtureRow> read_fixture_csv(std::istream& is);
std::string format_fixture_report(const FixtureReport& report);

enum class ChartMetric { F1, Recall, Precision };

// Grouped bar chart: one panel per direction, groups of bars per
// height x azimuth scenario, one series per band. The value axis spans
// [0, 1]; records with an undefined metric get no bar.
std::string render_bar_chart_svg(std::span<const MetricsRecord> records,
                                 ChartMetric metric);

}  // namespace uasdetect::io
