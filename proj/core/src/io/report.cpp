#include "uasdetect/io/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "uasdetect/error.hpp"

namespace uasdetect::io {

namespace {

constexpr const char* kMetricsHeader = "height,azimuth,band,direction,TP,FP,FN,precision,recall,F1";

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_milli(std::optional<std::int64_t> milli) {
  if (!milli) return "NA";
  const std::int64_t v = *milli;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%lld.%03lld", v < 0 ? "-" : "",
                static_cast<long long>(std::llabs(v) / 1000), static_cast<long long>(std::llabs(v) % 1000));
  return buf;
}

// Parses "0.870" / "1" / "NA" into thousandths without going through a
// binary double.
std::optional<std::int64_t> parse_milli(const std::string& text, const std::string& where) {
  if (text == "NA" || text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '-') {
    negative = true;
    ++i;
  }
  std::int64_t whole = 0;
  bool digits = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    whole = whole * 10 + (text[i] - '0');
    digits = true;
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      if (frac_digits < 3) {
        frac = frac * 10 + (text[i] - '0');
        ++frac_digits;
      } else if (text[i] != '0') {
        throw Error(where + ": more than 3 decimals in '" + text + "'");
      }
      digits = true;
    }
  }
  if (!digits || i != text.size()) throw Error(where + ": not a number: '" + text + "'");
  while (frac_digits < 3) {
    frac *= 10;
    ++frac_digits;
  }
  const std::int64_t v = whole * 1000 + frac;
  return negative ? -v : v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && s[b] == ' ') ++b;
  return s.substr(b);
}

std::int64_t parse_count(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(where + ": bad count '" + text + "'");
  }
}

double parse_double(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(where + ": bad number '" + text + "'");
  }
}

std::optional<double> from_milli(std::optional<std::int64_t> m) {
  if (!m) return std::nullopt;
  return static_cast<double>(*m) / 1000.0;
}

}  // namespace

void write_metrics_csv(std::ostream& os, std::span<const MetricsRecord> records) {
  os << kMetricsHeader << '\n';
  for (const auto& r : records) {
    if (r.id.direction.find_first_of(",\n") != std::string::npos)
      throw InvalidArgument("direction label '" + r.id.direction + "' cannot be written to CSV");
    os << format_number(r.id.height) << ',' << format_number(r.id.azimuth) << ','
       << to_string(r.id.band) << ',' << r.id.direction << ',' << r.tp << ',' << r.fp << ','
       << r.fn << ',' << format_milli(r.precision_milli()) << ','
       << format_milli(r.recall_milli()) << ',' << format_milli(r.f1_milli()) << '\n';
  }
}

std::vector<MetricsRecord> read_metrics_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != kMetricsHeader)
    throw Error("metrics CSV: unexpected header (expected '" + std::string(kMetricsHeader) + "')");
  std::vector<MetricsRecord> out;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    const std::string where = "metrics CSV line " + std::to_string(line_no);
    if (cells.size() != 10) throw Error(where + ": expected 10 columns");
    MetricsRecord r;
    r.id.height = parse_double(cells[0], where);
    r.id.azimuth = parse_double(cells[1], where);
    try {
      r.id.band = parse_band(cells[2]);
    } catch (const InvalidArgument& e) {
      throw Error(where + ": " + e.what());
    }
    r.id.direction = cells[3];
    r.tp = parse_count(cells[4], where);
    r.fp = parse_count(cells[5], where);
    r.fn = parse_count(cells[6], where);
    r.precision = from_milli(parse_milli(cells[7], where));
    r.recall = from_milli(parse_milli(cells[8], where));
    r.f1 = from_milli(parse_milli(cells[9], where));
    r.flagged = r.tp == 0 && r.fp == 0 && r.fn == 0;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<FixtureRow> read_fixture_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) ||
      trim(line) != "band,height,azimuth,direction,tp,fp,fn,precision,recall,f1")
    throw Error("fixture CSV: unexpected header");
  std::vector<FixtureRow> rows;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    const std::string where = "fixture CSV line " + std::to_string(line_no);
    if (cells.size() != 10) throw Error(where + ": expected 10 columns");
    FixtureRow row;
    try {
      row.id.band = parse_band(cells[0]);
    } catch (const InvalidArgument& e) {
      throw Error(where + ": " + e.what());
    }
    row.id.height = parse_double(cells[1], where);
    row.id.azimuth = parse_double(cells[2], where);
    row.id.direction = cells[3];
    row.tp = parse_count(cells[4], where);
    row.fp = parse_count(cells[5], where);
    row.fn = parse_count(cells[6], where);
    row.precision_milli = parse_milli(cells[7], where);
    row.recall_milli = parse_milli(cells[8], where);
    row.f1_milli = parse_milli(cells[9], where);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_fixture_report(const FixtureReport& report) {
  std::ostringstream os;
  os << "rows checked: " << report.rows << '\n'
     << "values checked: " << report.values_checked << '\n'
     << "mismatches: " << report.mismatches.size() << '\n';
  for (const auto& m : report.mismatches) {
    os << "  row " << m.row + 1 << ' ' << to_string(m.id.band) << ' ' << format_number(m.id.height)
       << "ft-" << format_number(m.id.azimuth) << ' ' << m.id.direction << ' ' << m.metric
       << ": printed " << format_milli(m.printed_milli) << ", computed "
       << format_milli(m.computed_milli) << '\n';
  }
  return os.str();
}

namespace {

struct GroupKey {
  double azimuth;
  double height;
  auto operator<=>(const GroupKey&) const = default;
};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* metric_name(ChartMetric m) {
  switch (m) {
    case ChartMetric::F1: return "F1";
    case ChartMetric::Recall: return "Recall";
    case ChartMetric::Precision: return "Precision";
  }
  return "?";
}

std::optional<double> metric_value(const MetricsRecord& r, ChartMetric m) {
  switch (m) {
    case ChartMetric::F1: return r.f1;
    case ChartMetric::Recall: return r.recall;
    case ChartMetric::Precision: return r.precision;
  }
  return std::nullopt;
}

}  // namespace

std::string render_bar_chart_svg(std::span<const MetricsRecord> records, ChartMetric metric) {
  std::vector<std::string> directions;
  std::vector<Band> bands;
  std::map<GroupKey, int> groups;
  for (const auto& r : records) {
    if (std::find(directions.begin(), directions.end(), r.id.direction) == directions.end())
      directions.push_back(r.id.direction);
    if (std::find(bands.begin(), bands.end(), r.id.band) == bands.end()) bands.push_back(r.id.band);
    groups.emplace(GroupKey{r.id.azimuth, r.id.height}, 0);
  }
  std::sort(bands.begin(), bands.end());
  int gi = 0;
  for (auto& [key, index] : groups) index = gi++;

  constexpr double kBar = 14;
  constexpr double kGroupGap = 12;
  constexpr double kPlotH = 220;
  constexpr double kLeft = 50;
  constexpr double kTop = 40;
  constexpr double kBottom = 70;
  constexpr double kPanelGap = 30;
  const double group_w = kBar * static_cast<double>(std::max<std::size_t>(bands.size(), 1)) + kGroupGap;
  const double panel_w = std::max(1, gi) * group_w + kGroupGap;
  const double width = kLeft + static_cast<double>(std::max<std::size_t>(directions.size(), 1)) * (panel_w + kPanelGap) + 80;
  const double height = kTop + kPlotH + kBottom;
  static const char* kColors[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  os << "<text x=\"" << kLeft << "\" y=\"18\" font-size=\"13\">" << metric_name(metric)
     << " by scenario, direction and band</text>\n";

  for (std::size_t d = 0; d < directions.size(); ++d) {
    const double x0 = kLeft + static_cast<double>(d) * (panel_w + kPanelGap);
    const double y0 = kTop;
    os << "<g class=\"panel\" data-direction=\"" << xml_escape(directions[d]) << "\">\n";
    os << "<text x=\"" << x0 + panel_w / 2 << "\" y=\"" << y0 - 6
       << "\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(directions[d]) << "</text>\n";
    os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << panel_w << "\" height=\""
       << kPlotH << "\" fill=\"none\" stroke=\"#999\"/>\n";
    for (int t = 0; t <= 5; ++t) {
      const double v = t / 5.0;
      const double y = y0 + kPlotH * (1.0 - v);
      os << "<line x1=\"" << x0 - 4 << "\" y1=\"" << y << "\" x2=\"" << x0 << "\" y2=\"" << y
         << "\" stroke=\"#999\"/>\n";
      os << "<text x=\"" << x0 - 6 << "\" y=\"" << y + 3 << "\" text-anchor=\"end\">" << v
         << "</text>\n";
    }
    for (const auto& [key, index] : groups) {
      const double gx = x0 + kGroupGap + index * group_w;
      os << "<text x=\"" << gx + (group_w - kGroupGap) / 2 << "\" y=\"" << y0 + kPlotH + 12
         << "\" text-anchor=\"end\" transform=\"rotate(-45 " << gx + (group_w - kGroupGap) / 2
         << ' ' << y0 + kPlotH + 12 << ")\">" << format_number(key.height) << "ft-"
         << format_number(key.azimuth) << "&#176;</text>\n";
    }
    for (const auto& r : records) {
      if (r.id.direction != directions[d]) continue;
      const auto value = metric_value(r, metric);
      if (!value) continue;
      const int index = groups.at(GroupKey{r.id.azimuth, r.id.height});
      const auto b = static_cast<std::size_t>(
          std::find(bands.begin(), bands.end(), r.id.band) - bands.begin());
      const double v = std::clamp(*value, 0.0, 1.0);
      const double bx = x0 + kGroupGap + index * group_w + static_cast<double>(b) * kBar;
      const double bh = kPlotH * v;
      os << "<rect class=\"bar\" x=\"" << bx << "\" y=\"" << y0 + kPlotH - bh << "\" width=\""
         << kBar - 2 << "\" height=\"" << bh << "\" fill=\"" << kColors[b % 4] << "\"><title>"
         << to_string(r.id.band) << ' ' << format_number(r.id.height) << "ft-"
         << format_number(r.id.azimuth) << ' ' << xml_escape(r.id.direction) << ": "
         << format_milli(std::llround(v * 1000.0))
         << "</title></rect>\n";
    }
    os << "</g>\n";
  }
  const double lx = width - 70;
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const double ly = kTop + 14 * static_cast<double>(b);
    os << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"10\" height=\"10\" fill=\""
       << kColors[b % 4] << "\"/><text x=\"" << lx + 14 << "\" y=\"" << ly + 9 << "\">"
       << to_string(bands[b]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace uasdetect::io
