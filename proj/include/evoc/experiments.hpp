#pragma once

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

#include "evoc/engine.hpp"

namespace evoc {

enum class SweepParam : std::uint8_t {
  LeaderInventProb,
  FollowerInventProb,
  LeaderChangeProb,
  FollowerChangeProb,
};

enum class Metric : std::uint8_t { Fitness, Diversity };

constexpr std::string_view to_string(SweepParam p) noexcept {
  switch (p) {
    case SweepParam::LeaderInventProb: return "i-leader";
    case SweepParam::FollowerInventProb: return "i-followers";
    case SweepParam::LeaderChangeProb: return "c-leader";
    case SweepParam::FollowerChangeProb: return "c-followers";
  }
  return "";
}

constexpr std::string_view to_string(Metric m) noexcept {
  return m == Metric::Fitness ? "fitness" : "diversity";
}

/// A parameter sweep: `runs_per_point` seeded runs of `base` at each value
/// of the swept parameter.
struct ExperimentSpec {
  RunConfig base{};
  SweepParam param = SweepParam::LeaderInventProb;
  std::vector<double> values;
  int runs_per_point = 100;
  std::uint64_t master_seed = 0;
};

/// One aggregated row: per-iteration statistics over runs at one sweep value.
struct SeriesPoint {
  double sweep_value = 0.0;
  std::int64_t iteration = 0;
  Metric metric = Metric::Fitness;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n-1); 0 for a single run
  int runs = 0;
};

struct SeriesTable {
  SweepParam param = SweepParam::LeaderInventProb;
  std::vector<SeriesPoint> rows;
};

/// Execute `runs` independent runs; run k is seeded with
/// derive_seed(master_seed, k) and results are returned in run-index order
/// no matter how many worker threads execute them. threads == 0 uses the
/// hardware thread count.
inline std::vector<Trajectory> run_batch(const RunConfig& config, int runs,
                                         std::uint64_t master_seed, int threads = 0,
                                         const LandscapeTable& landscape = default_landscape()) {
  if (runs < 1) throw std::invalid_argument("runs must be at least 1");
  validate(config);
  std::vector<Trajectory> results(static_cast<std::size_t>(runs));
  const auto execute = [&](int k) {
    RunConfig rc = config;
    rc.seed = derive_seed(master_seed, static_cast<std::uint64_t>(k));
    results[static_cast<std::size_t>(k)] = run(rc, landscape);
  };
  const unsigned hardware = std::thread::hardware_concurrency();
  const int workers = std::min(threads > 0 ? threads : static_cast<int>(hardware ? hardware : 1), runs);
  if (workers <= 1) {
    for (int k = 0; k < runs; ++k) execute(k);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int k = next.fetch_add(1); k < runs; k = next.fetch_add(1)) execute(k);
      });
    for (auto& t : pool) t.join();
  }
  return results;
}

/// Copy of `config` with the swept parameter set to `value`.
constexpr RunConfig with_param(RunConfig config, SweepParam param, double value) noexcept {
  switch (param) {
    case SweepParam::LeaderInventProb: config.leader_params.invent_prob = value; break;
    case SweepParam::FollowerInventProb: config.follower_params.invent_prob = value; break;
    case SweepParam::LeaderChangeProb: config.leader_params.change_prob = value; break;
    case SweepParam::FollowerChangeProb: config.follower_params.change_prob = value; break;
  }
  return config;
}

/// Master seed of one sweep point. Derived from the value's bit pattern
/// rather than its grid position, so adding or reordering sweep values never
/// reshuffles the runs of the other points.
constexpr std::uint64_t sweep_point_seed(std::uint64_t master_seed, double value) noexcept {
  return derive_seed(master_seed, std::bit_cast<std::uint64_t>(value));
}

/// Run the sweep and aggregate the requested metrics per (value, iteration).
/// Aggregation folds runs in run-index order, so results do not depend on
/// the parallel schedule.
inline SeriesTable run_sweep(const ExperimentSpec& spec, std::initializer_list<Metric> metrics,
                             int threads = 0, const LandscapeTable& landscape = default_landscape()) {
  if (spec.values.empty()) throw std::invalid_argument("sweep needs at least one value");
  for (const double v : spec.values)
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("sweep values must be in [0, 1]");
  SeriesTable table;
  table.param = spec.param;
  const auto iterations = static_cast<std::size_t>(spec.base.iterations);
  table.rows.reserve(spec.values.size() * metrics.size() * iterations);
  for (const double value : spec.values) {
    const RunConfig point_config = with_param(spec.base, spec.param, value);
    const auto trajectories = run_batch(point_config, spec.runs_per_point,
                                        sweep_point_seed(spec.master_seed, value), threads,
                                        landscape);
    for (const Metric metric : metrics) {
      for (std::size_t t = 0; t < iterations; ++t) {
        double sum = 0.0;
        for (const Trajectory& trajectory : trajectories) {
          const IterationRecord& r = trajectory.records[t];
          sum += metric == Metric::Fitness ? r.mean_fitness : static_cast<double>(r.diversity);
        }
        const auto n = static_cast<double>(trajectories.size());
        const double mean = sum / n;
        double sq = 0.0;
        for (const Trajectory& trajectory : trajectories) {
          const IterationRecord& r = trajectory.records[t];
          const double x = metric == Metric::Fitness ? r.mean_fitness : static_cast<double>(r.diversity);
          sq += (x - mean) * (x - mean);
        }
        const double stddev = trajectories.size() > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
        table.rows.push_back({value, static_cast<std::int64_t>(t) + 1, metric, mean, stddev,
                              static_cast<int>(trajectories.size())});
      }
    }
  }
  return table;
}

namespace detail {

/// Shared base for the leader-inventiveness experiments: a society of one
/// leader and followers at `follower_invent_prob`, conceptual-change rate
/// 1/6 for every inventor, broadcasting on. Calling this with the same seed
/// for both metrics reuses identical underlying dynamics.
inline ExperimentSpec leadership_spec(double follower_invent_prob, std::vector<double> sweep,
                                      int runs, std::int64_t iterations,
                                      std::uint64_t master_seed) {
  ExperimentSpec spec;
  spec.base.iterations = iterations;
  spec.base.broadcasting = true;
  spec.base.follower_params.invent_prob = follower_invent_prob;
  spec.base.follower_params.change_prob = 1.0 / 6.0;
  spec.base.leader_params.change_prob = 1.0 / 6.0;
  spec.param = SweepParam::LeaderInventProb;
  spec.values = std::move(sweep);
  spec.runs_per_point = runs;
  spec.master_seed = master_seed;
  return spec;
}

}  // namespace detail

inline const std::vector<double> kLeaderInventSweep = {0.0, 0.25, 0.5, 0.75, 1.0};
inline const std::vector<double> kLeaderChangeSweep = {0.1, 0.2, 0.3, 0.4, 0.5,
                                                       0.6, 0.7, 0.8, 0.9, 1.0};

/// Leader-inventiveness sweep, mean-fitness aggregate.
inline SeriesTable exp1a(double follower_invent_prob, std::vector<double> sweep = kLeaderInventSweep,
                         int runs = 100, std::int64_t iterations = 100,
                         std::uint64_t master_seed = 0, int threads = 0) {
  return run_sweep(detail::leadership_spec(follower_invent_prob, std::move(sweep), runs,
                                           iterations, master_seed),
                   {Metric::Fitness}, threads);
}

/// Leader-inventiveness sweep, diversity aggregate. The longer default
/// horizon covers convergence of the society onto a single action.
inline SeriesTable exp1b(double follower_invent_prob, std::vector<double> sweep = kLeaderInventSweep,
                         int runs = 100, std::int64_t iterations = 500,
                         std::uint64_t master_seed = 0, int threads = 0) {
  return run_sweep(detail::leadership_spec(follower_invent_prob, std::move(sweep), runs,
                                           iterations, master_seed),
                   {Metric::Diversity}, threads);
}

/// Leader conceptual-change sweep: the leader always invents, followers only
/// imitate (and would change nothing if they did invent).
inline SeriesTable exp2(std::vector<double> sweep = kLeaderChangeSweep, int runs = 100,
                        std::int64_t iterations = 100, std::uint64_t master_seed = 0,
                        int threads = 0) {
  ExperimentSpec spec;
  spec.base.iterations = iterations;
  spec.base.broadcasting = true;
  spec.base.leader_params.invent_prob = 1.0;
  spec.base.follower_params.invent_prob = 0.0;
  spec.base.follower_params.change_prob = 0.0;
  spec.param = SweepParam::LeaderChangeProb;
  spec.values = std::move(sweep);
  spec.runs_per_point = runs;
  spec.master_seed = master_seed;
  return run_sweep(spec, {Metric::Fitness}, threads);
}

}  // namespace evoc
