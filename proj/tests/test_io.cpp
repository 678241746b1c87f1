#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "evoc/io.hpp"

using namespace evoc;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static int counter = 0;
  const fs::path dir =
      fs::temp_directory_path() / ("evoc_io_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

SeriesTable sample_table() {
  SeriesTable table;
  table.param = SweepParam::LeaderInventProb;
  for (const double value : {1.0, 0.25, 0.5})  // deliberately unsorted
    for (std::int64_t it = 1; it <= 4; ++it)
      table.rows.push_back({value, it, Metric::Fitness, 2.0 + static_cast<double>(it) * value,
                            0.125, 7});
  return table;
}

}  // namespace

TEST_CASE("format_fixed6 is stable", "[io]") {
  REQUIRE(format_fixed6(2.0) == "2.000000");
  REQUIRE(format_fixed6(1.0 / 6.0) == "0.166667");
  REQUIRE(format_fixed6(0.0) == "0.000000");
  REQUIRE(format_trimmed(0.25) == "0.25");
  REQUIRE(format_trimmed(1.0) == "1");
  REQUIRE(round_fixed6(1.0 / 3.0) == 0.333333);
}

TEST_CASE("series CSV emits sorted six-digit rows", "[io]") {
  const fs::path dir = temp_dir();
  const fs::path path = dir / "series.csv";
  write_series_csv(sample_table(), path);
  const std::string text = slurp(path);

  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  REQUIRE(line == "sweep_param,sweep_value,iteration,metric,mean,std,runs");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 12);
  REQUIRE(rows.front() == "i-leader,0.250000,1,fitness,2.250000,0.125000,7");
  REQUIRE(rows.back() == "i-leader,1.000000,4,fitness,6.000000,0.125000,7");
  // Sorted by (sweep_value, iteration).
  REQUIRE(rows[4] == "i-leader,0.500000,1,fitness,2.500000,0.125000,7");
  REQUIRE(text.find("\r") == std::string::npos);
}

TEST_CASE("series CSV round-trips exactly", "[io]") {
  const fs::path dir = temp_dir();
  const fs::path path = dir / "series.csv";
  const SeriesTable table = sample_table();
  write_series_csv(table, path);
  const SeriesTable parsed = read_series_csv(path);
  REQUIRE(parsed.param == table.param);
  REQUIRE(parsed.rows.size() == table.rows.size());

  // Writing the parsed table again reproduces the file byte for byte.
  const fs::path again = dir / "series2.csv";
  write_series_csv(parsed, again);
  REQUIRE(slurp(path) == slurp(again));
}

TEST_CASE("read_series_csv rejects malformed input", "[io]") {
  const fs::path dir = temp_dir();
  const fs::path path = dir / "bad.csv";
  {
    std::ofstream out(path, std::ios::binary);
    out << "nope\n";
  }
  REQUIRE_THROWS_AS(read_series_csv(path), std::runtime_error);
  REQUIRE_THROWS_AS(read_series_csv(dir / "missing.csv"), std::runtime_error);
}

TEST_CASE("run CSV lists every iteration", "[io]") {
  RunConfig config;
  config.seed = 3;
  config.iterations = 12;
  const Trajectory trajectory = run(config);
  const fs::path dir = temp_dir();
  write_run_csv(trajectory, dir / "run.csv");
  const std::string text = slurp(dir / "run.csv");
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  REQUIRE(line == "iteration,mean_fitness,diversity");
  int count = 0;
  while (std::getline(lines, line)) ++count;
  REQUIRE(count == 12);
}

TEST_CASE("optima CSV carries the whole landscape", "[io]") {
  const fs::path dir = temp_dir();
  write_optima_csv(dir / "optima.csv");
  const std::string text = slurp(dir / "optima.csv");
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  REQUIRE(line == "left_arm,right_arm,left_leg,right_leg,head,hips,fitness");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 729);
  REQUIRE(rows.front() == "-1,-1,-1,-1,-1,0,14.000000");
  int at_max = 0;
  for (const std::string& r : rows) at_max += r.ends_with(",14.000000");
  REQUIRE(at_max == 8);

  write_optima_csv(dir / "norm.csv", /*normalized=*/true);
  const std::string norm = slurp(dir / "norm.csv");
  REQUIRE(norm.find("fitness,fitness_norm") != std::string::npos);
  REQUIRE(norm.find("14.000000,1.000000") != std::string::npos);
}

TEST_CASE("chart renders one polyline per sweep value", "[io]") {
  const fs::path dir = temp_dir();
  const fs::path path = dir / "chart.svg";
  write_chart(sample_table(), path);
  const std::string svg = slurp(path);
  std::size_t polylines = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1))
    ++polylines;
  REQUIRE(polylines == 3);
  REQUIRE(svg.find("i-leader=0.25") != std::string::npos);
  REQUIRE(svg.find("i-leader=1") != std::string::npos);
  REQUIRE(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("chart rejects empty and mixed-metric tables", "[io]") {
  const fs::path dir = temp_dir();
  SeriesTable empty;
  REQUIRE_THROWS_AS(write_chart(empty, dir / "no.svg"), std::invalid_argument);
  REQUIRE_FALSE(fs::exists(dir / "no.svg"));

  SeriesTable mixed = sample_table();
  mixed.rows.push_back({0.5, 1, Metric::Diversity, 3.0, 0.0, 7});
  REQUIRE_THROWS_AS(write_chart(mixed, dir / "no2.svg"), std::invalid_argument);
}

TEST_CASE("chart regenerated from its own CSV is identical", "[io]") {
  const fs::path dir = temp_dir();
  // Means with more precision than the CSV keeps: the chart must quantize
  // the same way the CSV does.
  SeriesTable table;
  table.param = SweepParam::LeaderChangeProb;
  for (const double value : {0.1, 0.9})
    for (std::int64_t it = 1; it <= 50; ++it)
      table.rows.push_back({value, it, Metric::Fitness,
                            2.0 + 11.3 * (1.0 - 1.0 / (1.0 + 0.17 * value * static_cast<double>(it))),
                            0.03141592653589793, 100});
  write_series_csv(table, dir / "t.csv");
  write_chart(table, dir / "direct.svg");
  write_chart(read_series_csv(dir / "t.csv"), dir / "roundtrip.svg");
  REQUIRE(slurp(dir / "direct.svg") == slurp(dir / "roundtrip.svg"));
}

TEST_CASE("writes to unopenable paths fail loudly", "[io]") {
  REQUIRE_THROWS_AS(write_series_csv(sample_table(), "/nonexistent_dir_xyz/out.csv"),
                    std::runtime_error);
}
