#include "trustnet/serialization.hpp"

#include "trustnet/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace trustnet {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void dump_into(const json &value, int indent, std::string &out)
{
  auto newline = [&](int level) {
    out += '\n';
    out.append(static_cast<std::size_t>(level) * 2, ' ');
  };

  switch (value.type())
  {
  case json::value_t::number_float:
    out += format_real(value.get<double>());
    return;
  case json::value_t::array: {
    if (value.empty())
    {
      out += "[]";
      return;
    }
    out += '[';
    bool first = true;
    for (auto const &item : value)
    {
      out += first ? "" : ",";
      first = false;
      newline(indent + 1);
      dump_into(item, indent + 1, out);
    }
    newline(indent);
    out += ']';
    return;
  }
  case json::value_t::object: {
    if (value.empty())
    {
      out += "{}";
      return;
    }
    out += '{';
    bool first = true;
    for (auto const &[key, item] : value.items())
    {
      out += first ? "" : ",";
      first = false;
      newline(indent + 1);
      out += json(key).dump();
      out += ": ";
      dump_into(item, indent + 1, out);
    }
    newline(indent);
    out += '}';
    return;
  }
  default:
    out += value.dump();
    return;
  }
}

// Strict reader for one JSON object: every key must be known, every access
// reports its full path on failure.
class ObjectReader
{
public:
  ObjectReader(const json &node, std::string path, std::initializer_list<std::string_view> known)
    : node_(node)
    , path_(std::move(path))
  {
    if (!node_.is_object())
    {
      throw ConfigError(path_.empty() ? "<root>" : path_, "must be a JSON object");
    }
    for (auto const &[key, _] : node_.items())
    {
      bool ok = false;
      for (auto k : known)
      {
        ok = ok || key == k;
      }
      if (!ok)
      {
        throw ConfigError(field(key), "unknown key");
      }
    }
  }

  std::string field(std::string_view key) const
  {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(std::string_view key) const
  {
    return node_.contains(key);
  }

  const json &at(std::string_view key) const
  {
    if (!node_.contains(key))
    {
      throw ConfigError(field(key), "missing required key");
    }
    return node_.at(std::string(key));
  }

  double real(std::string_view key) const
  {
    auto const &v = at(key);
    if (!v.is_number())
    {
      throw ConfigError(field(key), "must be a number");
    }
    return v.get<double>();
  }

  long long integer(std::string_view key) const
  {
    auto const &v = at(key);
    if (!v.is_number_integer())
    {
      throw ConfigError(field(key), "must be an integer");
    }
    return v.get<long long>();
  }

  int small_int(std::string_view key, int fallback) const
  {
    if (!has(key))
    {
      return fallback;
    }
    auto const v = integer(key);
    if (v < -1000000 || v > 1000000)
    {
      throw ConfigError(field(key), "out of range");
    }
    return static_cast<int>(v);
  }

  TrustTenths tenths(std::string_view key) const
  {
    return tenths_of(at(key), field(key));
  }

  std::string string(std::string_view key) const
  {
    auto const &v = at(key);
    if (!v.is_string())
    {
      throw ConfigError(field(key), "must be a string");
    }
    return v.get<std::string>();
  }

  static TrustTenths tenths_of(const json &v, const std::string &where)
  {
    try
    {
      if (v.is_string())
      {
        return TrustTenths::parse(v.get<std::string>());
      }
      if (v.is_number())
      {
        return TrustTenths::from_real(v.get<double>());
      }
    }
    catch (const InvalidValue &e)
    {
      throw ConfigError(where, e.what());
    }
    throw ConfigError(where, "must be a trust value on the 0.1 grid");
  }

private:
  const json &node_;
  std::string path_;
};

sim::BehaviorProfile parse_behavior(const json &node, const std::string &path)
{
  if (!node.is_object() || !node.contains("kind"))
  {
    throw ConfigError(path + ".kind", "missing required key");
  }
  auto const kind = node.at("kind");
  if (kind == "consistent")
  {
    ObjectReader r(node, path, {"kind", "center", "jitter"});
    return sim::Consistent{r.tenths("center"), r.small_int("jitter", 0)};
  }
  if (kind == "erratic")
  {
    ObjectReader r(node, path, {"kind", "center", "jitter", "spike_probability", "spike_floor"});
    return sim::Erratic{r.tenths("center"), r.small_int("jitter", 0), r.real("spike_probability"),
                        r.tenths("spike_floor")};
  }
  if (kind == "shifting")
  {
    ObjectReader r(node, path, {"kind", "before", "after", "switch_round", "jitter"});
    return sim::Shifting{r.tenths("before"), r.tenths("after"), r.small_int("switch_round", 0),
                         r.small_int("jitter", 0)};
  }
  throw ConfigError(path + ".kind", "expected consistent | erratic | shifting");
}

sim::RecommenderProfile parse_recommender(const json &node, const std::string &path)
{
  if (!node.is_object() || !node.contains("kind"))
  {
    throw ConfigError(path + ".kind", "missing required key");
  }
  auto const kind = node.at("kind");
  if (kind == "honest")
  {
    ObjectReader r(node, path, {"kind"});
    return sim::Honest{};
  }
  if (kind == "liar")
  {
    ObjectReader r(node, path, {"kind"});
    return sim::Liar{};
  }
  if (kind == "offset")
  {
    ObjectReader r(node, path, {"kind", "shift"});
    auto const steps = r.small_int("shift", 0);
    if (!r.has("shift") || steps < -SemanticShift::kLimit || steps > SemanticShift::kLimit)
    {
      throw ConfigError(r.field("shift"), "must be an integer in [-3, 3]");
    }
    return sim::Offset{SemanticShift{steps}};
  }
  throw ConfigError(path + ".kind", "expected honest | liar | offset");
}

json behavior_to_json(const sim::BehaviorProfile &profile)
{
  return std::visit(Overloaded{
                        [](const sim::Consistent &c) {
                          return json{{"kind", "consistent"},
                                      {"center", c.center.to_string()},
                                      {"jitter", c.jitter}};
                        },
                        [](const sim::Erratic &e) {
                          return json{{"kind", "erratic"},
                                      {"center", e.center.to_string()},
                                      {"jitter", e.jitter},
                                      {"spike_probability", e.spike_probability},
                                      {"spike_floor", e.spike_floor.to_string()}};
                        },
                        [](const sim::Shifting &s) {
                          return json{{"kind", "shifting"},
                                      {"before", s.before.to_string()},
                                      {"after", s.after.to_string()},
                                      {"switch_round", s.switch_round},
                                      {"jitter", s.jitter}};
                        },
                    },
                    profile);
}

json recommender_to_json(const sim::RecommenderProfile &profile)
{
  return std::visit(Overloaded{
                        [](const sim::Honest &) { return json{{"kind", "honest"}}; },
                        [](const sim::Liar &) { return json{{"kind", "liar"}}; },
                        [](const sim::Offset &o) {
                          return json{{"kind", "offset"}, {"shift", o.shift.steps()}};
                        },
                    },
                    profile);
}

json optional_int(const std::optional<int> &v)
{
  return v ? json(*v) : json(nullptr);
}

json characteristics_json(const risk::Characteristics &c)
{
  return json{{"trustworthy", c.trustworthy}, {"risky", c.risky}};
}

std::string_view trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string read_file(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad())
  {
    throw IoError("cannot read " + path.string());
  }
  return buffer.str();
}

}  // namespace

std::string format_real(double value)
{
  if (!std::isfinite(value))
  {
    throw InvalidValue("cannot format a non-finite real");
  }
  char buf[64];
  auto const result = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 6);
  std::string out(buf, result.ptr);
  if (out == "-0.000000")
  {
    out = "0.000000";
  }
  return out;
}

std::string dump_stable(const nlohmann::json &value)
{
  std::string out;
  dump_into(value, 0, out);
  out += '\n';
  return out;
}

sim::Scenario parse_scenario(const nlohmann::json &doc)
{
  ObjectReader top(doc, "", {"agents", "rounds", "seed", "params", "banding", "pairing"});
  sim::Scenario scenario;

  auto const &agents = top.at("agents");
  if (!agents.is_array())
  {
    throw ConfigError("agents", "must be an array");
  }
  for (std::size_t i = 0; i < agents.size(); ++i)
  {
    auto const path = "agents[" + std::to_string(i) + "]";
    ObjectReader a(agents[i], path, {"id", "behavior", "recommender"});
    sim::AgentSpec spec;
    spec.id       = a.string("id");
    spec.behavior = parse_behavior(a.at("behavior"), path + ".behavior");
    spec.recommender =
        a.has("recommender") ? parse_recommender(a.at("recommender"), path + ".recommender")
                             : sim::RecommenderProfile{sim::Honest{}};
    scenario.agents.push_back(std::move(spec));
  }

  auto const rounds = top.integer("rounds");
  if (rounds < 1 || rounds > 100000000)
  {
    throw ConfigError("rounds", "must be an integer in [1, 1e8]");
  }
  scenario.rounds = static_cast<int>(rounds);

  auto const &seed = top.at("seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
  {
    throw ConfigError("seed", "must be an unsigned 64-bit integer");
  }
  scenario.seed = seed.get<std::uint64_t>();

  ObjectReader p(top.at("params"), "params", {"k", "n", "td_th", "rv_th"});
  scenario.params.k = p.real("k");
  auto const n      = p.integer("n");
  if (n < 1 || n > 1000000)
  {
    throw ConfigError("params.n", "must be an integer >= 1");
  }
  scenario.params.n     = static_cast<int>(n);
  scenario.params.td_th = p.real("td_th");
  scenario.params.rv_th = p.real("rv_th");

  if (top.has("banding"))
  {
    auto const &b = top.at("banding");
    if (!b.is_array() || b.size() != 3)
    {
      throw ConfigError("banding", "must be an array of three lower bounds [b, g, vg]");
    }
    try
    {
      scenario.banding = Banding(ObjectReader::tenths_of(b[0], "banding[0]"),
                                 ObjectReader::tenths_of(b[1], "banding[1]"),
                                 ObjectReader::tenths_of(b[2], "banding[2]"));
    }
    catch (const InvalidValue &e)
    {
      throw ConfigError("banding", e.what());
    }
  }

  if (top.has("pairing"))
  {
    auto const pairing = top.string("pairing");
    if (pairing == "all-pairs")
    {
      scenario.pairing = sim::Pairing::AllPairs;
    }
    else if (pairing == "round-robin")
    {
      scenario.pairing = sim::Pairing::RoundRobin;
    }
    else
    {
      throw ConfigError("pairing", "expected all-pairs | round-robin");
    }
  }

  scenario.validate();
  return scenario;
}

sim::Scenario load_scenario(const std::filesystem::path &path)
{
  auto const text = read_file(path);
  json doc;
  try
  {
    doc = json::parse(text);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

nlohmann::json scenario_to_json(const sim::Scenario &scenario)
{
  json agents = json::array();
  for (auto const &a : scenario.agents)
  {
    agents.push_back(json{{"id", a.id},
                          {"behavior", behavior_to_json(a.behavior)},
                          {"recommender", recommender_to_json(a.recommender)}});
  }
  auto const &bounds = scenario.banding.lower_bounds();
  return json{
      {"agents", agents},
      {"rounds", scenario.rounds},
      {"seed", scenario.seed},
      {"params",
       {{"k", scenario.params.k},
        {"n", scenario.params.n},
        {"td_th", scenario.params.td_th},
        {"rv_th", scenario.params.rv_th}}},
      {"banding", {bounds[0].to_string(), bounds[1].to_string(), bounds[2].to_string()}},
      {"pairing", scenario.pairing == sim::Pairing::AllPairs ? "all-pairs" : "round-robin"},
  };
}

std::string report_csv(const sim::SimulationReport &report)
{
  std::string out(kReportCsvHeader);
  out += '\n';
  for (auto const &row : report.records)
  {
    out += std::to_string(row.round);
    out += ',';
    out += row.observer;
    out += ',';
    out += row.subject;
    out += ',';
    out += row.outcome.to_string();
    out += ',';
    out += format_real(row.td_gen);
    out += ',';
    out += format_real(row.rv);
    out += ',';
    out += row.characteristics.trustworthy ? "true" : "false";
    out += ',';
    out += row.characteristics.risky ? "true" : "false";
    out += ',';
    out += to_token(row.arh_direct);
    out += ',';
    if (row.arh_combined)
    {
      out += to_token(*row.arh_combined);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json summary_json(const sim::SimulationReport &report)
{
  json agents = json::array();
  for (auto const &a : report.agents)
  {
    agents.push_back(json{{"id", a.id},
                          {"ground_truth", characteristics_json(a.ground_truth)},
                          {"evaluations", a.evaluations},
                          {"risk_trust_accuracy", a.risk_accuracy},
                          {"arh_accuracy", a.arh_accuracy}});
  }
  json reclass = json::array();
  for (auto const &r : report.reclassifications)
  {
    reclass.push_back(json{{"observer", r.observer},
                           {"subject", r.subject},
                           {"switch_round", r.switch_round},
                           {"risk_trust_rounds", optional_int(r.risk_rounds)},
                           {"risk_trust_periods", optional_int(r.risk_periods)},
                           {"arh_rounds", optional_int(r.arh_rounds)}});
  }
  std::size_t combined = 0;
  for (auto const &row : report.records)
  {
    combined += row.arh_combined ? 1 : 0;
  }
  return json{
      {"seed", report.seed},
      {"rounds", report.rounds},
      {"records", report.records.size()},
      {"agents", agents},
      {"reclassification", reclass},
      {"recommendations",
       {{"received", report.recommendations.size()}, {"combined_verdicts", combined}}},
  };
}

nlohmann::json state_to_json(const risk::TrustState &state)
{
  json window = json::array();
  for (auto v : state.window.values())
  {
    window.push_back(v.to_string());
  }
  return json{
      {"td_gen", state.td_gen ? json(*state.td_gen) : json(nullptr)},
      {"rv", state.rv ? json(*state.rv) : json(nullptr)},
      {"window", window},
      {"period_index", state.window.period_index()},
      {"capacity", state.window.capacity()},
  };
}

TraceFile parse_trace(std::string_view text)
{
  TraceFile trace;
  std::size_t line_no = 0;
  std::size_t start   = 0;
  if (text.starts_with("\xEF\xBB\xBF"))
  {
    start = 3;
  }
  while (start < text.size())
  {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos)
    {
      end = text.size();
    }
    ++line_no;
    auto const line = trim(text.substr(start, end - start));
    start           = end + 1;

    if (line.empty())
    {
      continue;
    }
    if (line.front() == '#')
    {
      auto const body = trim(line.substr(1));
      if (trace.values.empty() && !trace.subject && body.starts_with("subject:"))
      {
        auto const name = trim(body.substr(8));
        if (name.empty())
        {
          throw TraceParseError(line_no, "empty subject header");
        }
        trace.subject = std::string(name);
      }
      continue;
    }
    try
    {
      trace.values.push_back(TrustTenths::parse(line));
    }
    catch (const InvalidValue &e)
    {
      throw TraceParseError(line_no, e.what());
    }
  }
  return trace;
}

TraceFile load_trace(const std::filesystem::path &path)
{
  return parse_trace(read_file(path));
}

std::string write_trace(const TraceFile &trace)
{
  std::string out;
  if (trace.subject)
  {
    out += "# subject: " + *trace.subject + "\n";
  }
  for (auto v : trace.values)
  {
    out += v.to_string();
    out += '\n';
  }
  return out;
}

std::vector<TrustTenths> parse_value_list(std::string_view text)
{
  std::vector<TrustTenths> values;
  std::size_t start = 0;
  while (start <= text.size())
  {
    auto end = text.find(',', start);
    if (end == std::string_view::npos)
    {
      end = text.size();
    }
    auto const item = trim(text.substr(start, end - start));
    if (!item.empty())
    {
      values.push_back(TrustTenths::parse(item));
    }
    start = end + 1;
  }
  return values;
}

}  // namespace trustnet
