#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "evoc/engine.hpp"
#include "evoc/experiments.hpp"

namespace evoc {

/// Fixed six-decimal formatting used for every decimal value in emitted
/// files; always C-locale digits.
inline std::string format_fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// format_fixed6 with trailing zeros trimmed, for chart labels.
inline std::string format_trimmed(double v) {
  std::string s = format_fixed6(v);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

/// Round to the six decimals that survive CSV emission.
inline double round_fixed6(double v) { return std::strtod(format_fixed6(v).c_str(), nullptr); }

namespace detail {

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

inline void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

/// Sort key used by the series CSV: (sweep_value, iteration, metric name).
inline bool series_row_before(const SeriesPoint& a, const SeriesPoint& b) {
  if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
  if (a.iteration != b.iteration) return a.iteration < b.iteration;
  return to_string(a.metric) < to_string(b.metric);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace detail

inline constexpr std::string_view kSeriesCsvHeader = "sweep_param,sweep_value,iteration,metric,mean,std,runs";

/// Emit an aggregated sweep table. Rows are sorted by (sweep_value,
/// iteration, metric); decimals carry fixed six digits; newline is \n.
inline void write_series_csv(const SeriesTable& table, const std::filesystem::path& path) {
  std::vector<SeriesPoint> rows = table.rows;
  std::stable_sort(rows.begin(), rows.end(), detail::series_row_before);
  auto out = detail::open_for_write(path);
  out << kSeriesCsvHeader << '\n';
  for (const SeriesPoint& row : rows) {
    out << to_string(table.param) << ',' << format_fixed6(row.sweep_value) << ',' << row.iteration
        << ',' << to_string(row.metric) << ',' << format_fixed6(row.mean) << ','
        << format_fixed6(row.stddev) << ',' << row.runs << '\n';
  }
  detail::finish_write(out, path);
}

/// Parse a file produced by write_series_csv. Values are recovered exactly
/// at the emitted six-decimal precision.
inline SeriesTable read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kSeriesCsvHeader)
    throw std::runtime_error("bad series CSV header in " + path.string());
  SeriesTable table;
  bool have_param = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 7) throw std::runtime_error("bad series CSV row in " + path.string());
    SweepParam param{};
    bool known = false;
    for (const SweepParam p : {SweepParam::LeaderInventProb, SweepParam::FollowerInventProb,
                               SweepParam::LeaderChangeProb, SweepParam::FollowerChangeProb}) {
      if (fields[0] == to_string(p)) {
        param = p;
        known = true;
        break;
      }
    }
    if (!known) throw std::runtime_error("unknown sweep parameter: " + fields[0]);
    if (!have_param) {
      table.param = param;
      have_param = true;
    } else if (param != table.param) {
      throw std::runtime_error("mixed sweep parameters in " + path.string());
    }
    SeriesPoint row;
    row.sweep_value = std::strtod(fields[1].c_str(), nullptr);
    row.iteration = std::strtoll(fields[2].c_str(), nullptr, 10);
    if (fields[3] == to_string(Metric::Fitness)) {
      row.metric = Metric::Fitness;
    } else if (fields[3] == to_string(Metric::Diversity)) {
      row.metric = Metric::Diversity;
    } else {
      throw std::runtime_error("unknown metric: " + fields[3]);
    }
    row.mean = std::strtod(fields[4].c_str(), nullptr);
    row.stddev = std::strtod(fields[5].c_str(), nullptr);
    row.runs = static_cast<int>(std::strtol(fields[6].c_str(), nullptr, 10));
    table.rows.push_back(row);
  }
  return table;
}

/// Per-iteration statistics of a single run.
inline void write_run_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  out << "iteration,mean_fitness,diversity\n";
  for (const IterationRecord& r : trajectory.records)
    out << r.iteration << ',' << format_fixed6(r.mean_fitness) << ',' << r.diversity << '\n';
  detail::finish_write(out, path);
}

/// The full landscape, fittest action first. With `normalized`, adds a
/// column of fitness divided by the landscape maximum.
inline void write_optima_csv(std::ostream& out, bool normalized = false,
                             const LandscapeTable& landscape = default_landscape()) {
  out << "left_arm,right_arm,left_leg,right_leg,head,hips,fitness";
  if (normalized) out << ",fitness_norm";
  out << '\n';
  for (const auto& [action, fitness] : enumerate_landscape(landscape)) {
    for (const auto part : action.parts) out << static_cast<int>(part) << ',';
    out << format_fixed6(fitness);
    if (normalized) out << ',' << format_fixed6(fitness / landscape.max_fitness());
    out << '\n';
  }
}

inline void write_optima_csv(const std::filesystem::path& path, bool normalized = false,
                             const LandscapeTable& landscape = default_landscape()) {
  auto out = detail::open_for_write(path);
  write_optima_csv(out, normalized, landscape);
  detail::finish_write(out, path);
}

namespace detail {

inline const std::array<std::string_view, 10> kChartPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

inline std::string chart_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

/// Render an aggregated table as a static SVG chart: iteration on x, metric
/// mean on y, one polyline per sweep value. The table must be non-empty and
/// carry a single metric. The chart is a pure function of the CSV content:
/// means are rounded to the CSV's six decimals before any coordinate math,
/// so regenerating the chart from its own CSV reproduces it byte for byte.
inline void write_chart(const SeriesTable& table, const std::filesystem::path& path) {
  if (table.rows.empty()) throw std::invalid_argument("chart needs a non-empty table");
  const Metric metric = table.rows.front().metric;
  for (const SeriesPoint& row : table.rows)
    if (row.metric != metric)
      throw std::invalid_argument("chart needs a single-metric table");

  std::vector<SeriesPoint> rows = table.rows;
  std::stable_sort(rows.begin(), rows.end(), detail::series_row_before);

  std::vector<double> sweep_values;
  std::int64_t min_iter = rows.front().iteration;
  std::int64_t max_iter = rows.front().iteration;
  double max_mean = 0.0;
  for (const SeriesPoint& row : rows) {
    if (sweep_values.empty() || sweep_values.back() != row.sweep_value)
      sweep_values.push_back(row.sweep_value);
    min_iter = std::min(min_iter, row.iteration);
    max_iter = std::max(max_iter, row.iteration);
    max_mean = std::max(max_mean, round_fixed6(row.mean));
  }
  const double y_top = max_mean > 0.0 ? max_mean * 1.05 : 1.0;
  const double x_span = max_iter > min_iter ? static_cast<double>(max_iter - min_iter) : 1.0;

  constexpr double kWidth = 960.0, kHeight = 600.0;
  constexpr double kLeft = 70.0, kRight = 770.0, kTop = 50.0, kBottom = 550.0;
  const auto x_of = [&](std::int64_t it) {
    return kLeft + (static_cast<double>(it - min_iter) / x_span) * (kRight - kLeft);
  };
  const auto y_of = [&](double v) { return kBottom - (v / y_top) * (kBottom - kTop); };

  auto out = detail::open_for_write(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">mean " << to_string(metric) << " by "
      << to_string(table.param) << "</text>\n";

  // Axes and ticks.
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const auto it = min_iter + (max_iter - min_iter) * i / kTicks;
    const std::string x = detail::chart_coord(x_of(it));
    out << "<line x1=\"" << x << "\" y1=\"" << kBottom << "\" x2=\"" << x << "\" y2=\""
        << kBottom + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << kBottom + 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << it
        << "</text>\n";
    const double v = y_top * i / kTicks;
    const std::string y = detail::chart_coord(y_of(v));
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 9 << "\" y=\"" << y
        << "\" text-anchor=\"end\" dominant-baseline=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << format_trimmed(round_fixed6(v)) << "</text>\n";
  }
  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 42
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">iteration</text>\n";

  // One polyline per sweep value, rows already sorted by iteration.
  for (std::size_t s = 0; s < sweep_values.size(); ++s) {
    const auto color = detail::kChartPalette[s % detail::kChartPalette.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const SeriesPoint& row : rows) {
      if (row.sweep_value != sweep_values[s]) continue;
      if (!first) out << ' ';
      out << detail::chart_coord(x_of(row.iteration)) << ','
          << detail::chart_coord(y_of(round_fixed6(row.mean)));
      first = false;
    }
    out << "\"/>\n";
  }

  // Legend.
  for (std::size_t s = 0; s < sweep_values.size(); ++s) {
    const auto color = detail::kChartPalette[s % detail::kChartPalette.size()];
    const double y = kTop + 8.0 + 20.0 * static_cast<double>(s);
    out << "<line x1=\"" << kRight + 14 << "\" y1=\"" << y << "\" x2=\"" << kRight + 38
        << "\" y2=\"" << y << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kRight + 44 << "\" y=\"" << y
        << "\" dominant-baseline=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << to_string(table.param) << '=' << format_trimmed(sweep_values[s]) << "</text>\n";
  }
  out << "</svg>\n";
  detail::finish_write(out, path);
}

}  // namespace evoc
