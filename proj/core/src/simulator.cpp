#include "trustnet/simulator.hpp"

#include "trustnet/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

namespace trustnet::sim {
namespace {

template <class... Ts>
struct Overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

TrustTenths jittered(TrustTenths center, int jitter, RngStream &rng)
{
  auto const delta = rng.uniform_int(-jitter, jitter);
  auto const value = std::clamp<std::int64_t>(center.tenths() + delta, 0, TrustTenths::kMax);
  return TrustTenths::from_tenths(static_cast<int>(value));
}

void check_jitter(int jitter, const std::string &field)
{
  if (jitter < 0 || jitter > TrustTenths::kMax)
  {
    throw ConfigError(field, "jitter must lie in 0..10 tenths");
  }
}

void validate_behavior(const BehaviorProfile &profile, const std::string &field)
{
  std::visit(Overloaded{
                 [&](const Consistent &c) { check_jitter(c.jitter, field + ".jitter"); },
                 [&](const Erratic &e) {
                   check_jitter(e.jitter, field + ".jitter");
                   if (!(e.spike_probability >= 0.0 && e.spike_probability <= 1.0))
                   {
                     throw ConfigError(field + ".spike_probability", "must lie in [0, 1]");
                   }
                   if (e.spike_probability > 0.0 && !(e.spike_floor < e.center))
                   {
                     throw ConfigError(field + ".spike_floor",
                                       "must lie below center when spikes can occur");
                   }
                 },
                 [&](const Shifting &s) {
                   check_jitter(s.jitter, field + ".jitter");
                   if (s.switch_round < 1)
                   {
                     throw ConfigError(field + ".switch_round", "must be >= 1");
                   }
                 },
             },
             profile);
}

// Observer-side state for every subject it has met.
struct ObserverState
{
  std::map<std::string, risk::TrustState> risk;
  arh::DirectTrustStore direct;
  arh::RecommenderStore recommenders;
};

struct PendingRec
{
  std::string recommender;
  Degree reported;
  std::size_t event_index;
};

std::vector<std::pair<std::size_t, std::size_t>> pairs_for_round(std::size_t agents, int round,
                                                                 Pairing pairing)
{
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (pairing == Pairing::AllPairs)
  {
    for (std::size_t o = 0; o < agents; ++o)
    {
      for (std::size_t s = 0; s < agents; ++s)
      {
        if (o != s)
        {
          pairs.emplace_back(o, s);
        }
      }
    }
    return pairs;
  }
  auto const offset = static_cast<std::size_t>(round - 1) % (agents - 1) + 1;
  for (std::size_t o = 0; o < agents; ++o)
  {
    pairs.emplace_back(o, (o + offset) % agents);
  }
  return pairs;
}

bool arh_trustworthy(Degree d)
{
  return rank(d) >= rank(Degree::Good);
}

}  // namespace

void Scenario::validate() const
{
  if (agents.size() < 2)
  {
    throw ConfigError("agents", "need at least two agents");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < agents.size(); ++i)
  {
    auto const field = "agents[" + std::to_string(i) + "]";
    auto const &agent = agents[i];
    if (agent.id.empty())
    {
      throw ConfigError(field + ".id", "must not be empty");
    }
    if (!ids.insert(agent.id).second)
    {
      throw ConfigError(field + ".id", "duplicate agent id '" + agent.id + "'");
    }
    validate_behavior(agent.behavior, field + ".behavior");
  }
  if (rounds < 1)
  {
    throw ConfigError("rounds", "must be >= 1");
  }
  params.validate();
}

TrustTenths sample_outcome(const BehaviorProfile &profile, int round, RngStream &rng)
{
  return std::visit(Overloaded{
                        [&](const Consistent &c) { return jittered(c.center, c.jitter, rng); },
                        [&](const Erratic &e) {
                          if (rng.bernoulli(e.spike_probability) && e.spike_floor < e.center)
                          {
                            auto const v = rng.uniform_int(e.spike_floor.tenths(),
                                                           e.center.tenths() - 1);
                            return TrustTenths::from_tenths(static_cast<int>(v));
                          }
                          return jittered(e.center, e.jitter, rng);
                        },
                        [&](const Shifting &s) {
                          return jittered(round < s.switch_round ? s.before : s.after, s.jitter,
                                          rng);
                        },
                    },
                    profile);
}

std::pair<TrustTenths, Degree> produce_recommendation(const RecommenderProfile &profile,
                                                      TrustTenths opinion_tenths,
                                                      Degree opinion_degree)
{
  return std::visit(
      Overloaded{
          [&](const Honest &) { return std::pair{opinion_tenths, opinion_degree}; },
          [&](const Liar &) {
            return std::pair{TrustTenths::from_tenths(TrustTenths::kMax - opinion_tenths.tenths()),
                             degree_from_rank(3 - rank(opinion_degree))};
          },
          [&](const Offset &o) {
            auto const shifted =
                std::clamp(opinion_tenths.tenths() + o.shift.steps(), 0, TrustTenths::kMax);
            return std::pair{TrustTenths::from_tenths(shifted),
                             degree_shift(opinion_degree, o.shift)};
          },
      },
      profile);
}

risk::Characteristics ground_truth_characteristics(const BehaviorProfile &profile,
                                                   const risk::ModelParams &params,
                                                   RngStream &rng, std::size_t draws)
{
  if (draws == 0)
  {
    throw EmptySample("ground truth needs at least one draw");
  }
  // Stationary distribution: shifting profiles are sampled after their switch.
  int const round = std::visit(Overloaded{
                                   [](const Shifting &s) { return s.switch_round; },
                                   [](const auto &) { return 1; },
                               },
                               profile);

  std::array<std::size_t, TrustTenths::kMax + 1> histogram{};
  for (std::size_t i = 0; i < draws; ++i)
  {
    ++histogram[static_cast<std::size_t>(sample_outcome(profile, round, rng).tenths())];
  }

  auto nth = [&](std::size_t index) {
    std::size_t seen = 0;
    for (std::size_t v = 0; v < histogram.size(); ++v)
    {
      seen += histogram[v];
      if (index < seen)
      {
        return static_cast<double>(v) / 10.0;
      }
    }
    return 1.0;
  };
  double const median =
      draws % 2 == 1 ? nth(draws / 2) : (nth(draws / 2 - 1) + nth(draws / 2)) / 2.0;

  double sum = 0.0;
  for (std::size_t v = 0; v < histogram.size(); ++v)
  {
    sum += static_cast<double>(histogram[v]) * static_cast<double>(v) / 10.0;
  }
  double const mean = sum / static_cast<double>(draws);
  double sq         = 0.0;
  std::size_t below = 0;
  for (std::size_t v = 0; v < histogram.size(); ++v)
  {
    double const x = static_cast<double>(v) / 10.0;
    if (x < mean)
    {
      below += histogram[v];
      sq += static_cast<double>(histogram[v]) * (x - mean) * (x - mean);
    }
  }
  double const semi_deviation = below == 0 ? 0.0 : std::sqrt(sq / static_cast<double>(below));
  return risk::classify(median, semi_deviation, params);
}

SimulationReport run_scenario(const Scenario &scenario)
{
  scenario.validate();

  std::vector<const AgentSpec *> agents;
  for (auto const &a : scenario.agents)
  {
    agents.push_back(&a);
  }
  std::sort(agents.begin(), agents.end(),
            [](const AgentSpec *a, const AgentSpec *b) { return a->id < b->id; });

  auto const &params  = scenario.params;
  auto const &context = scenario.context;
  std::size_t const n = agents.size();

  std::vector<ObserverState> states(n);
  std::map<std::pair<std::size_t, std::size_t>, RngStream> outcome_streams;

  SimulationReport report;
  report.seed   = scenario.seed;
  report.rounds = scenario.rounds;

  for (int round = 1; round <= scenario.rounds; ++round)
  {
    RoundCounters counters{round, 0, 0, 0};
    for (auto const &[o, s] : pairs_for_round(n, round, scenario.pairing))
    {
      auto &observer          = states[o];
      auto const &subject_id  = agents[s]->id;
      RoundRecord row;
      row.round    = round;
      row.observer = agents[o]->id;
      row.subject  = subject_id;

      std::vector<PendingRec> pending;
      auto state_it = observer.risk.find(subject_id);
      if (state_it == observer.risk.end())
      {
        std::vector<TrustTenths> tenths_recs;
        std::vector<arh::WeightedDegree> weighted;
        for (std::size_t r = 0; r < n; ++r)
        {
          if (r == o || r == s)
          {
            continue;
          }
          auto const &recommender = states[r];
          auto const opinion_it   = recommender.risk.find(subject_id);
          auto const *counters_r  = recommender.direct.find(context, subject_id);
          if (opinion_it == recommender.risk.end() || counters_r == nullptr)
          {
            continue;
          }
          auto const [tenths, degree] = produce_recommendation(
              agents[r]->recommender, TrustTenths::nearest(*opinion_it->second.td_gen),
              arh::direct_trust_degree(*counters_r));
          tenths_recs.push_back(tenths);

          static const arh::AdjustmentSets kNoHistory;
          auto const *history = observer.recommenders.find(context, agents[r]->id);
          auto const &t       = history != nullptr ? *history : kNoHistory;

          RecommendationEvent event;
          event.round                        = round;
          event.observer                     = agents[o]->id;
          event.recommender                  = agents[r]->id;
          event.subject                      = subject_id;
          event.reported_tenths              = tenths;
          event.reported                     = degree;
          event.semantic_distance            = arh::semantic_distance(t, degree);
          event.adjusted                     = arh::adjust_recommendation(degree, event.semantic_distance);
          event.weight                       = arh::recommender_weight(t);
          event.prior_adjustments_for_degree = t.of(degree).size();
          event.prior_adjustments_total      = t.total();
          weighted.push_back({event.adjusted, event.weight});
          pending.push_back({agents[r]->id, degree, report.recommendations.size()});
          report.recommendations.push_back(std::move(event));
        }

        state_it = observer.risk.emplace(subject_id, risk::bootstrap(tenths_recs, params)).first;
        if (!weighted.empty())
        {
          try
          {
            row.arh_combined = arh::combine_recommendations(weighted);
          }
          catch (const NoUsableRecommendations &)
          {
            row.arh_combined.reset();
          }
        }
      }

      auto stream_it = outcome_streams.find({o, s});
      if (stream_it == outcome_streams.end())
      {
        stream_it = outcome_streams
                        .emplace(std::pair{o, s},
                                 RngStream(scenario.seed, subject_id, "outcome/" + agents[o]->id))
                        .first;
      }
      row.outcome = sample_outcome(agents[s]->behavior, round, stream_it->second);
      ++counters.sampled;

      auto &state       = state_it->second;
      row.period_closed = risk::push_experience(state, row.outcome, params);
      ++counters.pushes;
      observer.direct.record_experience(context, subject_id,
                                        tenths_to_degree(row.outcome, scenario.banding));
      ++counters.experiences;

      row.td_gen          = *state.td_gen;
      row.rv              = *state.rv;
      row.characteristics = risk::evaluate(state, params);
      row.arh_direct      = arh::direct_trust_degree(*observer.direct.find(context, subject_id));

      for (auto const &rec : pending)
      {
        observer.recommenders.record_adjustment(context, rec.recommender, rec.reported,
                                                row.arh_direct);
        report.recommendations[rec.event_index].observer_direct = row.arh_direct;
      }
      report.records.push_back(std::move(row));
    }
    report.counters.push_back(counters);
  }

  // Summaries against the Monte Carlo ground truth.
  std::map<std::string, risk::Characteristics> truth;
  for (auto const *agent : agents)
  {
    RngStream rng(scenario.seed, agent->id, "ground_truth");
    truth[agent->id] = ground_truth_characteristics(agent->behavior, params, rng);
  }
  for (auto const *agent : agents)
  {
    AgentSummary summary;
    summary.id           = agent->id;
    summary.ground_truth = truth[agent->id];
    std::size_t risk_hits = 0;
    std::size_t arh_hits  = 0;
    for (auto const &row : report.records)
    {
      if (row.subject != agent->id)
      {
        continue;
      }
      ++summary.evaluations;
      risk_hits += row.characteristics == summary.ground_truth ? 1 : 0;
      arh_hits += arh_trustworthy(row.arh_direct) == summary.ground_truth.trustworthy ? 1 : 0;
    }
    if (summary.evaluations > 0)
    {
      auto const total      = static_cast<double>(summary.evaluations);
      summary.risk_accuracy = static_cast<double>(risk_hits) / total;
      summary.arh_accuracy  = static_cast<double>(arh_hits) / total;
    }
    report.agents.push_back(summary);
  }

  for (auto const *subject : agents)
  {
    auto const *shifting = std::get_if<Shifting>(&subject->behavior);
    if (shifting == nullptr)
    {
      continue;
    }
    bool const target = truth[subject->id].trustworthy;
    for (auto const *observer : agents)
    {
      if (observer == subject)
      {
        continue;
      }
      Reclassification rc;
      rc.observer     = observer->id;
      rc.subject      = subject->id;
      rc.switch_round = shifting->switch_round;
      bool seen       = false;
      int periods     = 0;
      for (auto const &row : report.records)
      {
        if (row.observer != observer->id || row.subject != subject->id ||
            row.round < shifting->switch_round)
        {
          continue;
        }
        seen = true;
        periods += row.period_closed ? 1 : 0;
        if (!rc.risk_rounds && row.characteristics.trustworthy == target)
        {
          rc.risk_rounds  = row.round - shifting->switch_round;
          rc.risk_periods = periods;
        }
        if (!rc.arh_rounds && arh_trustworthy(row.arh_direct) == target)
        {
          rc.arh_rounds = row.round - shifting->switch_round;
        }
      }
      if (seen)
      {
        report.reclassifications.push_back(std::move(rc));
      }
    }
  }
  return report;
}

}  // namespace trustnet::sim
