#pragma once

#include "trustnet/risk_trust.hpp"
#include "trustnet/trust_metric.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace trustnet::cli {

enum ExitCode : int
{
  kOk         = 0,
  kInputError = 2,
  kIoError    = 3,
};

struct ParamOverrides
{
  std::optional<double> k;
  std::optional<int> n;
  std::optional<double> td_th;
  std::optional<double> rv_th;

  void apply(risk::ModelParams &params) const;
};

struct RunConfig
{
  std::filesystem::path scenario;
  std::filesystem::path out_dir;
  bool write_csv{true};
  bool write_json{true};
  int replications{1};
  std::optional<std::uint64_t> base_seed;  ///< defaults to the scenario's seed
  int jobs{1};
  ParamOverrides overrides;
};

/// Runs `replications` copies of the scenario, replication r with seed
/// base + r, writing report_r<r>.csv and summary_r<r>.json under out_dir.
int cmd_simulate(const RunConfig &config, std::ostream &err);

struct EvalConfig
{
  std::filesystem::path trace;
  risk::ModelParams params;
  std::vector<TrustTenths> recs;
  int start_period{0};  ///< periods already completed before the trace starts
};

/// Bootstraps, replays the trace and prints the final verdict and state as JSON.
int cmd_eval(const EvalConfig &config, std::ostream &out, std::ostream &err);

struct CompareConfig
{
  EvalConfig eval;
  Banding banding;
};

/// Replays the trace through both models and prints both verdicts as JSON.
int cmd_compare(const CompareConfig &config, std::ostream &out, std::ostream &err);

/// Jobs default: TRUSTNET_JOBS if set to a positive integer, else 1.
int default_jobs();

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace trustnet::cli
