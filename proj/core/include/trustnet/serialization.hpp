#pragma once

// Stable text formats: scenario JSON, report CSV, summary JSON, trust-state
// JSON and trace files. Reals always render with six fractional digits and
// JSON objects always have sorted keys, so identical inputs give
// byte-identical output.

#include "trustnet/risk_trust.hpp"
#include "trustnet/simulator.hpp"
#include "trustnet/trust_metric.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trustnet {

/// Fixed notation, six fractional digits, ties to even; "-0.000000" is
/// normalised to "0.000000".
std::string format_real(double value);

/// Like nlohmann::json::dump(2) but floating-point numbers go through format_real.
std::string dump_stable(const nlohmann::json &value);

// ---- scenario ---------------------------------------------------------------

/// Top-level keys: agents, rounds, seed, params{k,n,td_th,rv_th}, and the
/// optional banding [b, g, vg] lower bounds and pairing ("all-pairs" |
/// "round-robin"). Unknown keys are rejected. Throws ConfigError naming the
/// field.
sim::Scenario parse_scenario(const nlohmann::json &doc);

/// Reads and parses a scenario file. Throws IoError if unreadable, ConfigError
/// if the JSON is malformed or invalid.
sim::Scenario load_scenario(const std::filesystem::path &path);

nlohmann::json scenario_to_json(const sim::Scenario &scenario);

// ---- reports ----------------------------------------------------------------

inline constexpr std::string_view kReportCsvHeader =
    "round,observer,subject,outcome,td_gen,rv,trustworthy,risky,arh_direct,arh_combined";

std::string report_csv(const sim::SimulationReport &report);

nlohmann::json summary_json(const sim::SimulationReport &report);

/// Keys: capacity, period_index, rv, td_gen, window (decimal strings).
/// Absent td_gen/rv serialise as null.
nlohmann::json state_to_json(const risk::TrustState &state);

// ---- trace files --------------------------------------------------------------

/// One outcome per line. Blank lines and '#' comments are ignored; a
/// "# subject: NAME" comment before the first value names the subject.
struct TraceFile
{
  std::optional<std::string> subject;
  std::vector<TrustTenths> values;

  bool operator==(const TraceFile &) const = default;
};

/// Throws TraceParseError with the 1-based line number of the first bad line.
TraceFile parse_trace(std::string_view text);

TraceFile load_trace(const std::filesystem::path &path);

std::string write_trace(const TraceFile &trace);

/// Parses "0.5,0.7,0.6" into trust values. Throws InvalidValue.
std::vector<TrustTenths> parse_value_list(std::string_view text);

}  // namespace trustnet
