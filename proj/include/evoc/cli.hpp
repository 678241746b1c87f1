#pragma once

#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evoc/io.hpp"
#include "evoc/version.hpp"

namespace evoc {

namespace cli_detail {

/// Exit codes: 0 success, 2 usage or configuration error, 1 internal error.
inline constexpr int kOk = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kUsageError = 2;

struct Options {
  int width = 10;
  int height = 10;
  std::int64_t iterations = 100;
  std::uint64_t seed = 0;
  double i_leader = 0.5;
  double i_followers = 0.5;
  double c_leader = 1.0 / 6.0;
  double c_followers = 1.0 / 6.0;
  std::string broadcast = "on";
  std::string operators = "on";
  std::string neighborhood = "moore";
  std::string param;
  std::string metric = "fitness";
  std::vector<double> sweep;
  int runs = 100;
  int threads = 0;
  std::string out;
  bool normalized = false;
};

inline void add_seed_option(CLI::App& cmd, Options& opt) {
  cmd.add_option("--seed", opt.seed, "Master seed (defaults to $EVOC_SEED, then 0)")
      ->envname("EVOC_SEED");
}

inline void add_threads_option(CLI::App& cmd, Options& opt) {
  cmd.add_option("--threads", opt.threads,
                 "Worker threads for batches; 0 = hardware count. Results are identical for "
                 "any thread count")
      ->check(CLI::NonNegativeNumber);
}

inline void add_out_option(CLI::App& cmd, Options& opt, bool required = true) {
  auto* o = cmd.add_option("--out", opt.out, "Output directory");
  if (required) o->required();
}

inline void add_run_params(CLI::App& cmd, Options& opt) {
  cmd.add_option("--width", opt.width, "World width")->check(CLI::PositiveNumber);
  cmd.add_option("--height", opt.height, "World height")->check(CLI::PositiveNumber);
  cmd.add_option("--iterations", opt.iterations, "Iterations per run")->check(CLI::PositiveNumber);
  cmd.add_option("--i-leader", opt.i_leader, "Leader invention-to-imitation ratio")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--i-followers", opt.i_followers, "Follower invention-to-imitation ratio")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--c-leader", opt.c_leader, "Leader rate of conceptual change")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--c-followers", opt.c_followers, "Follower rate of conceptual change")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--broadcast", opt.broadcast, "Leader broadcasting")
      ->check(CLI::IsMember({"on", "off"}));
  cmd.add_option("--operators", opt.operators, "Knowledge-based operators")
      ->check(CLI::IsMember({"on", "off"}));
  cmd.add_option("--neighborhood", opt.neighborhood, "Grid neighborhood")
      ->check(CLI::IsMember({"moore", "vonneumann"}));
  add_seed_option(cmd, opt);
}

inline RunConfig to_run_config(const Options& opt) {
  RunConfig config;
  config.width = opt.width;
  config.height = opt.height;
  config.iterations = opt.iterations;
  config.seed = opt.seed;
  config.broadcasting = opt.broadcast == "on";
  config.neighborhood = opt.neighborhood == "moore" ? Neighborhood::Moore : Neighborhood::VonNeumann;
  const bool operators_on = opt.operators == "on";
  config.leader_params = {opt.i_leader, opt.c_leader, operators_on};
  config.follower_params = {opt.i_followers, opt.c_followers, operators_on};
  return config;
}

inline std::filesystem::path prepare_out_dir(const std::string& out) {
  const std::filesystem::path dir(out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::invalid_argument("cannot create output directory " + out + ": " + ec.message());
  const std::filesystem::path probe = dir / ".write_probe";
  {
    std::ofstream f(probe, std::ios::binary);
    if (!f) throw std::invalid_argument("output directory not writable: " + out);
  }
  std::filesystem::remove(probe, ec);
  return dir;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Every emitted file is reproducible from (version, config, seed); the
/// timestamp lives only here, never in the CSVs.
inline void write_metadata(const std::filesystem::path& dir, const std::string& command,
                           nlohmann::json config) {
  nlohmann::json meta;
  meta["tool"] = kToolName;
  meta["version"] = kVersion;
  meta["rng"] = kRngAlgorithm;
  meta["command"] = command;
  meta["config"] = std::move(config);
  meta["timestamp_utc"] = utc_timestamp();
  const auto path = dir / "metadata.json";
  auto out = detail::open_for_write(path);
  out << meta.dump(2) << '\n';
  detail::finish_write(out, path);
}

inline nlohmann::json run_config_json(const Options& opt) {
  return {{"width", opt.width},
          {"height", opt.height},
          {"iterations", opt.iterations},
          {"seed", opt.seed},
          {"i_leader", opt.i_leader},
          {"i_followers", opt.i_followers},
          {"c_leader", opt.c_leader},
          {"c_followers", opt.c_followers},
          {"broadcast", opt.broadcast},
          {"operators", opt.operators},
          {"neighborhood", opt.neighborhood}};
}

inline void emit_series(const SeriesTable& table, const std::filesystem::path& dir,
                        const std::string& stem) {
  write_series_csv(table, dir / (stem + ".csv"));
  write_chart(table, dir / (stem + ".svg"));
}

inline void execute_run(const Options& opt) {
  const auto dir = prepare_out_dir(opt.out);
  const Trajectory trajectory = run(to_run_config(opt));
  write_run_csv(trajectory, dir / "run.csv");
  write_metadata(dir, "run", run_config_json(opt));
}

inline void execute_exp1(const Options& opt, bool diversity) {
  const auto dir = prepare_out_dir(opt.out);
  const std::string stem = diversity ? "exp1b" : "exp1a";
  const SeriesTable table =
      diversity ? exp1b(opt.i_followers, opt.sweep, opt.runs, opt.iterations, opt.seed, opt.threads)
                : exp1a(opt.i_followers, opt.sweep, opt.runs, opt.iterations, opt.seed, opt.threads);
  emit_series(table, dir, stem);
  write_metadata(dir, stem,
                 {{"i_followers", opt.i_followers},
                  {"sweep", opt.sweep},
                  {"runs", opt.runs},
                  {"iterations", opt.iterations},
                  {"seed", opt.seed}});
}

inline void execute_exp2(const Options& opt) {
  const auto dir = prepare_out_dir(opt.out);
  const SeriesTable table = exp2(opt.sweep, opt.runs, opt.iterations, opt.seed, opt.threads);
  emit_series(table, dir, "exp2");
  write_metadata(dir, "exp2",
                 {{"sweep", opt.sweep},
                  {"runs", opt.runs},
                  {"iterations", opt.iterations},
                  {"seed", opt.seed}});
}

inline void execute_sweep(const Options& opt) {
  const auto dir = prepare_out_dir(opt.out);
  ExperimentSpec spec;
  spec.base = to_run_config(opt);
  if (opt.param == "i-leader") {
    spec.param = SweepParam::LeaderInventProb;
  } else if (opt.param == "i-followers") {
    spec.param = SweepParam::FollowerInventProb;
  } else if (opt.param == "c-leader") {
    spec.param = SweepParam::LeaderChangeProb;
  } else {
    spec.param = SweepParam::FollowerChangeProb;
  }
  spec.values = opt.sweep;
  spec.runs_per_point = opt.runs;
  spec.master_seed = opt.seed;
  const Metric metric = opt.metric == "fitness" ? Metric::Fitness : Metric::Diversity;
  const SeriesTable table = run_sweep(spec, {metric}, opt.threads);
  emit_series(table, dir, "sweep");
  nlohmann::json config = run_config_json(opt);
  config["param"] = opt.param;
  config["metric"] = opt.metric;
  config["values"] = opt.sweep;
  config["runs"] = opt.runs;
  write_metadata(dir, "sweep", config);
}

inline void execute_optima(const Options& opt) {
  if (opt.out.empty()) {
    write_optima_csv(std::cout, opt.normalized);
    return;
  }
  const auto dir = prepare_out_dir(opt.out);
  write_optima_csv(dir / "optima.csv", opt.normalized);
  write_metadata(dir, "optima", {{"normalized", opt.normalized}});
}

}  // namespace cli_detail

/// Entry point behind the `evoc` binary; also callable from tests.
inline int run_cli(int argc, const char* const* argv) {
  using namespace cli_detail;
  CLI::App app{"evoc: an agent-based simulation of cultural evolution"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options opt;

  CLI::App* cmd_run = app.add_subcommand("run", "Execute a single run and dump its trajectory");
  add_run_params(*cmd_run, opt);
  add_out_option(*cmd_run, opt);
  cmd_run->set_config("--config");

  CLI::App* cmd_exp1a = app.add_subcommand(
      "exp1a", "Sweep leader inventiveness, aggregate mean fitness over runs");
  CLI::App* cmd_exp1b =
      app.add_subcommand("exp1b", "Sweep leader inventiveness, aggregate action diversity");
  for (CLI::App* cmd : {cmd_exp1a, cmd_exp1b}) {
    cmd->add_option("--i-followers", opt.i_followers, "Follower invention-to-imitation ratio")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--sweep", opt.sweep, "Leader i values")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--runs", opt.runs, "Runs per sweep point")->check(CLI::PositiveNumber);
    cmd->add_option("--iterations", opt.iterations, "Iterations per run")
        ->check(CLI::PositiveNumber);
    add_seed_option(*cmd, opt);
    add_threads_option(*cmd, opt);
    add_out_option(*cmd, opt);
    cmd->set_config("--config");
  }

  CLI::App* cmd_exp2 = app.add_subcommand(
      "exp2", "Sweep leader rate of conceptual change with imitate-only followers");
  cmd_exp2->add_option("--sweep", opt.sweep, "Leader c values")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  cmd_exp2->add_option("--runs", opt.runs, "Runs per sweep point")->check(CLI::PositiveNumber);
  cmd_exp2->add_option("--iterations", opt.iterations, "Iterations per run")
      ->check(CLI::PositiveNumber);
  add_seed_option(*cmd_exp2, opt);
  add_threads_option(*cmd_exp2, opt);
  add_out_option(*cmd_exp2, opt);
  cmd_exp2->set_config("--config");

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "Generic single-parameter sweep");
  cmd_sweep->add_option("--param", opt.param, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"i-leader", "i-followers", "c-leader", "c-followers"}));
  cmd_sweep->add_option("--values", opt.sweep, "Sweep values")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  cmd_sweep->add_option("--metric", opt.metric, "Aggregated metric")
      ->check(CLI::IsMember({"fitness", "diversity"}));
  cmd_sweep->add_option("--runs", opt.runs, "Runs per sweep point")->check(CLI::PositiveNumber);
  add_run_params(*cmd_sweep, opt);
  add_threads_option(*cmd_sweep, opt);
  add_out_option(*cmd_sweep, opt);
  cmd_sweep->set_config("--config");

  CLI::App* cmd_optima = app.add_subcommand("optima", "Dump the full 729-action landscape as CSV");
  cmd_optima->add_flag("--normalized", opt.normalized, "Add a fitness/max column");
  add_out_option(*cmd_optima, opt, /*required=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (cmd_run->parsed()) {
      execute_run(opt);
    } else if (cmd_exp1a->parsed() || cmd_exp1b->parsed()) {
      if (opt.sweep.empty()) opt.sweep = kLeaderInventSweep;
      if (cmd_exp1b->parsed() && cmd_exp1b->get_option("--iterations")->empty()) {
        opt.iterations = 500;  // diversity convergence horizon
      }
      execute_exp1(opt, cmd_exp1b->parsed());
    } else if (cmd_exp2->parsed()) {
      if (opt.sweep.empty()) opt.sweep = kLeaderChangeSweep;
      execute_exp2(opt);
    } else if (cmd_sweep->parsed()) {
      execute_sweep(opt);
    } else if (cmd_optima->parsed()) {
      execute_optima(opt);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternalError;
  }
  return kOk;
}

}  // namespace evoc
