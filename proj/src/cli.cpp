#include "mmwsim/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mmwsim/config.hpp"
#include "mmwsim/error.hpp"
#include "mmwsim/output.hpp"
#include "mmwsim/rng.hpp"
#include "mmwsim/validate.hpp"

#ifndef MMWSIM_VERSION
#define MMWSIM_VERSION "dev"
#endif

namespace mmwsim {

namespace {

struct CommonFlags {
  std::string config = "table1";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> drops;
  std::string out_dir = "mmwsim_out";
  std::optional<std::string> policy;
  unsigned threads = 0;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "YAML config path, or 'table1' for the preset");
  cmd->add_option("--seed", f.seed, "master seed (falls back to $MMWSIM_SEED, then the config)");
  cmd->add_option("--drops", f.drops, "Monte Carlo drops per scenario point");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--policy", f.policy, "pf | maxmin | bapf");
  cmd->add_option("--threads", f.threads, "worker threads for drops (0 = all cores)");
  cmd->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

RunConfig resolve(const CommonFlags& f) {
  RunConfig cfg = load_run_config(f.config);
  if (f.seed) {
    cfg.scenario.master_seed = *f.seed;
  } else if (const char* env = std::getenv("MMWSIM_SEED"); env && *env) {
    try {
      std::size_t pos = 0;
      cfg.scenario.master_seed = std::stoull(env, &pos);
      if (env[pos] != '\0') throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("MMWSIM_SEED", std::string("not an unsigned integer: '") + env + "'");
    }
  }
  if (f.drops) cfg.scenario.drops = *f.drops;
  if (f.policy) cfg.scenario.policy = parse_policy(*f.policy);
  cfg.scenario.validate();
  return cfg;
}

unsigned thread_count(unsigned requested) {
  return requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
}

std::string command_line(int argc, const char* const* argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

int emit(const std::vector<CampaignResult>& results, const CommonFlags& f, const RunConfig& cfg,
         const std::string& command, double seconds, std::ostream& out) {
  RunManifest manifest;
  manifest.command = command;
  manifest.tool_version = MMWSIM_VERSION;
  manifest.master_seed = cfg.scenario.master_seed;
  manifest.threads = thread_count(f.threads);
  manifest.wall_clock_s = seconds;
  const auto files = emit_results(results, parse_output_format(f.format), f.out_dir, cfg, manifest);

  for (const auto& r : results)
    out << r.point.label() << ": p1=" << r.report.p1_rate_bps << " bps mean=" << r.report.mean_rate_bps
        << " bps jain=" << r.report.jain_mean << '\n';
  out << "wrote " << files.size() << " files to " << f.out_dir << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"mmWave downlink scheduling simulator under human blockage", "mmwsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MMWSIM_VERSION);

  CommonFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "run one scenario point");
  add_common(simulate, sim_flags);

  CommonFlags sweep_flags;
  std::vector<double> lambdas, taus, windows;
  std::vector<std::string> policies;
  auto* sweep = app.add_subcommand("sweep", "run a grid over lambda_B / tau_B / n_T / policy");
  add_common(sweep, sweep_flags);
  sweep->add_option("--lambdas", lambdas, "blocker arrival rates (1/s)");
  sweep->add_option("--taus", taus, "mean blockage durations (ms)");
  sweep->add_option("--windows", windows, "prediction windows (ms)");
  sweep->add_option("--policies", policies, "policies to compare");

  CommonFlags trace_flags;
  std::size_t trace_drop = 0;
  auto* trace = app.add_subcommand("trace", "export per-UE blockage traces for one drop");
  add_common(trace, trace_flags);
  trace->add_option("--drop", trace_drop, "drop index");

  unsigned validate_threads = 0;
  auto* validate = app.add_subcommand("validate", "run the invariant self-checks");
  validate->add_option("--threads", validate_threads, "threads for the determinism check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  const std::string command = command_line(argc, argv);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  try {
    if (*simulate) {
      const RunConfig cfg = resolve(sim_flags);
      const auto& s = cfg.scenario;
      const ScenarioPoint point{s.policy, s.blockage.arrival_rate_per_s, s.blockage.mean_duration_ms,
                                s.policy == Policy::kBaPf ? s.prediction.window_ms : 0.0,
                                s.policy == Policy::kBaPf ? s.effective_error_std() : 0.0};
      const auto result = run_point(s, point, thread_count(sim_flags.threads));
      return emit({result}, sim_flags, cfg, command, elapsed(), out);
    }

    if (*sweep) {
      RunConfig cfg = resolve(sweep_flags);
      if (!lambdas.empty()) cfg.grid.arrival_rates_per_s = lambdas;
      if (!taus.empty()) cfg.grid.mean_durations_ms = taus;
      if (!windows.empty()) cfg.grid.windows_ms = windows;
      if (!policies.empty()) {
        cfg.grid.policies.clear();
        for (const auto& p : policies) cfg.grid.policies.push_back(parse_policy(p));
      } else if (sweep_flags.policy) {
        cfg.grid.policies = {cfg.scenario.policy};
      }
      const auto results = run_campaign(cfg.scenario, cfg.grid, thread_count(sweep_flags.threads));
      return emit(results, sweep_flags, cfg, command, elapsed(), out);
    }

    if (*trace) {
      const RunConfig cfg = resolve(trace_flags);
      const auto& s = cfg.scenario;
      const std::uint64_t seed = drop_seed(s.master_seed, trace_drop);
      std::filesystem::create_directories(trace_flags.out_dir);
      for (std::size_t u = 0; u < s.n_ues; ++u) {
        const auto tr = generate_trace(s.blockage, s.horizon_slots, s.slot_duration_ms(),
                                       derive_seed(seed, {static_cast<std::uint64_t>(Stream::kBlockage), u}));
        const auto path = std::filesystem::path(trace_flags.out_dir) / ("trace_ue" + std::to_string(u) + ".csv");
        std::ofstream os(path, std::ios::binary);
        if (!os) throw Error("cannot write " + path.string());
        write_trace_csv(os, tr);
        if (!os.flush()) throw Error("write failed for " + path.string());
        out << path.string() << ": " << tr.blockage_events() << " blockage events, " << tr.blocked_slots()
            << " blocked slots\n";
      }
      return 0;
    }

    if (*validate) {
      bool ok = true;
      for (const auto& c : run_self_checks(validate_threads)) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << (c.passed ? "" : ": " + c.detail) << '\n';
        ok = ok && c.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "mmwsim: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace mmwsim
