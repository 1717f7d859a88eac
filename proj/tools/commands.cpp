#include "commands.hpp"

#include "trustnet/arh_model.hpp"
#include "trustnet/errors.hpp"
#include "trustnet/serialization.hpp"
#include "trustnet/simulator.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

namespace trustnet::cli {
namespace {

void write_file(const std::filesystem::path &path, const std::string &content)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << content;
  out.flush();
  if (!out)
  {
    throw IoError("failed writing " + path.string());
  }
}

struct Replay
{
  risk::TrustState state;
  arh::ExperienceCounters counters;
};

Replay replay(const EvalConfig &config, const TraceFile &trace, const Banding &banding)
{
  config.params.validate();
  if (config.start_period < 0)
  {
    throw ConfigError("start-period", "must be >= 0");
  }
  Replay r;
  r.state        = risk::bootstrap(config.recs, config.params);
  r.state.window = risk::ExperienceWindow(config.start_period, config.params.n);
  for (auto v : trace.values)
  {
    risk::push_experience(r.state, v, config.params);
    r.counters.record(tenths_to_degree(v, banding));
  }
  return r;
}

nlohmann::json verdict_json(const risk::TrustState &state, const risk::ModelParams &params)
{
  auto const c = risk::evaluate(state, params);
  return nlohmann::json{
      {"td_gen", *state.td_gen},
      {"rv", *state.rv},
      {"trustworthy", c.trustworthy},
      {"risky", c.risky},
      {"state", state_to_json(state)},
  };
}

// Shared error mapping for commands that read a trace file.
template <typename Body>
int guarded(std::ostream &err, Body &&body)
{
  try
  {
    return body();
  }
  catch (const TraceParseError &e)
  {
    err << "error: trace " << e.what() << '\n';
    return kInputError;
  }
  catch (const ConfigError &e)
  {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  catch (const IoError &e)
  {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  catch (const Error &e)
  {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

void ParamOverrides::apply(risk::ModelParams &params) const
{
  params.k     = k.value_or(params.k);
  params.n     = n.value_or(params.n);
  params.td_th = td_th.value_or(params.td_th);
  params.rv_th = rv_th.value_or(params.rv_th);
}

int default_jobs()
{
  if (char const *env = std::getenv("TRUSTNET_JOBS"))
  {
    char *end        = nullptr;
    long const value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0 && value <= 1024)
    {
      return static_cast<int>(value);
    }
  }
  return 1;
}

int cmd_simulate(const RunConfig &config, std::ostream &err)
{
  sim::Scenario scenario;
  try
  {
    if (config.replications < 1)
    {
      throw ConfigError("replications", "must be >= 1");
    }
    if (config.jobs < 1)
    {
      throw ConfigError("jobs", "must be >= 1");
    }
    if (!config.write_csv && !config.write_json)
    {
      throw ConfigError("format", "nothing to write");
    }
    scenario = load_scenario(config.scenario);
    config.overrides.apply(scenario.params);
    scenario.validate();
  }
  catch (const ConfigError &e)
  {
    err << "error: invalid scenario: " << e.what() << '\n';
    return kInputError;
  }
  catch (const IoError &e)
  {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec || !std::filesystem::is_directory(config.out_dir))
  {
    err << "error: cannot create output directory " << config.out_dir.string() << '\n';
    return kIoError;
  }

  std::uint64_t const base = config.base_seed.value_or(scenario.seed);
  std::atomic<int> next{0};
  std::atomic<int> status{kOk};
  std::mutex err_mutex;

  auto worker = [&] {
    for (int r = next++; r < config.replications; r = next++)
    {
      auto replica = scenario;
      replica.seed = base + static_cast<std::uint64_t>(r);
      try
      {
        auto const report = sim::run_scenario(replica);
        auto const stem   = "_r" + std::to_string(r);
        if (config.write_csv)
        {
          write_file(config.out_dir / ("report" + stem + ".csv"), report_csv(report));
        }
        if (config.write_json)
        {
          write_file(config.out_dir / ("summary" + stem + ".json"),
                     dump_stable(summary_json(report)));
        }
      }
      catch (const IoError &e)
      {
        std::scoped_lock lock(err_mutex);
        err << "error: " << e.what() << '\n';
        status = kIoError;
      }
    }
  };

  int const threads = std::min(config.jobs, config.replications);
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < threads; ++i)
    {
      pool.emplace_back(worker);
    }
    worker();
  }
  return status;
}

int cmd_eval(const EvalConfig &config, std::ostream &out, std::ostream &err)
{
  return guarded(err, [&] {
    auto const trace  = load_trace(config.trace);
    auto const result = replay(config, trace, Banding{});
    out << dump_stable(verdict_json(result.state, config.params));
    return static_cast<int>(kOk);
  });
}

int cmd_compare(const CompareConfig &config, std::ostream &out, std::ostream &err)
{
  return guarded(err, [&] {
    auto const trace = load_trace(config.eval.trace);
    if (trace.values.empty())
    {
      err << "error: trace " << config.eval.trace.string() << " has no values\n";
      return static_cast<int>(kInputError);
    }
    auto const result = replay(config.eval, trace, config.banding);
    auto const direct = arh::direct_trust_degree(result.counters);
    auto const tuple  = result.counters.as_tuple();
    auto const &bands = config.banding.lower_bounds();

    nlohmann::json doc{
        {"risk_trust", verdict_json(result.state, config.eval.params)},
        {"arh",
         {{"direct", std::string(to_token(direct))},
          {"trustworthy", rank(direct) >= rank(Degree::Good)},
          {"counters", {tuple[0], tuple[1], tuple[2], tuple[3]}}}},
        {"banding", {bands[0].to_string(), bands[1].to_string(), bands[2].to_string()}},
    };
    if (trace.subject)
    {
      doc["subject"] = *trace.subject;
    }
    out << dump_stable(doc);
    return static_cast<int>(kOk);
  });
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Trust and reputation models with a community simulator", "trustnet"};
  app.require_subcommand(1);

  ParamOverrides overrides;
  auto add_params = [&](CLI::App *cmd, bool thresholds_required) {
    cmd->add_option("--k", overrides.k, "Forgiveness factor k > 0");
    cmd->add_option("--n", overrides.n, "Experience window growth cap n >= 1");
    auto *td = cmd->add_option("--td-th", overrides.td_th, "Trust-degree threshold in [0, 1]");
    auto *rv = cmd->add_option("--rv-th", overrides.rv_th, "Risk-value threshold >= 0");
    if (thresholds_required)
    {
      td->required();
      rv->required();
    }
  };

  RunConfig run_config;
  run_config.jobs    = default_jobs();
  std::string format = "both";
  std::uint64_t seed = 0;
  auto *simulate     = app.add_subcommand("simulate", "Run a scenario and write reports");
  simulate->add_option("--scenario", run_config.scenario, "Scenario JSON file")->required();
  simulate->add_option("--out", run_config.out_dir, "Output directory")->required();
  simulate->add_option("--format", format, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  simulate->add_option("--replications", run_config.replications, "Replication count");
  auto *seed_opt = simulate->add_option("--seed", seed, "Base seed (default: scenario seed)");
  simulate->add_option("--jobs", run_config.jobs, "Concurrent replications (env TRUSTNET_JOBS)");
  add_params(simulate, false);

  std::filesystem::path trace;
  std::string recs;
  std::string banding;
  int start_period = 0;
  auto add_trace   = [&](CLI::App *cmd) {
    cmd->add_option("--trace", trace, "Trace file, one value per line")->required();
    cmd->add_option("--recs", recs, "Comma-separated recommendations, e.g. 0.6,0.8");
    cmd->add_option("--start-period", start_period, "Periods already completed (pre-grows the window)");
    add_params(cmd, true);
  };
  auto *eval = app.add_subcommand("eval", "Replay one trace through the risk model");
  add_trace(eval);
  auto *compare = app.add_subcommand("compare", "Replay one trace through both models");
  add_trace(compare);
  compare->add_option("--banding", banding, "Lower bounds of b,g,vg, e.g. 0.3,0.6,0.9");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e, out, err);
  }
  catch (const CLI::ParseError &e)
  {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (simulate->parsed())
  {
    run_config.write_csv  = format != "json";
    run_config.write_json = format != "csv";
    if (seed_opt->count() > 0)
    {
      run_config.base_seed = seed;
    }
    run_config.overrides = overrides;
    return cmd_simulate(run_config, err);
  }

  EvalConfig eval_config;
  eval_config.trace        = trace;
  eval_config.start_period = start_period;
  overrides.apply(eval_config.params);
  try
  {
    eval_config.recs = parse_value_list(recs);
  }
  catch (const InvalidValue &e)
  {
    err << "error: --recs: " << e.what() << '\n';
    return kInputError;
  }
  if (eval->parsed())
  {
    return cmd_eval(eval_config, out, err);
  }

  CompareConfig compare_config{eval_config, Banding{}};
  if (!banding.empty())
  {
    try
    {
      auto const bounds = parse_value_list(banding);
      if (bounds.size() != 3)
      {
        throw InvalidValue("expected three bounds");
      }
      compare_config.banding = Banding(bounds[0], bounds[1], bounds[2]);
    }
    catch (const InvalidValue &e)
    {
      err << "error: --banding: " << e.what() << '\n';
      return kInputError;
    }
  }
  return cmd_compare(compare_config, out, err);
}

}  // namespace trustnet::cli
