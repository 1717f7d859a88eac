#pragma once

// Deterministic seeded community simulator driving both trust models.
//
// Each round every evaluated (observer, subject) pair interacts once: the
// subject's behaviour is sampled, the outcome feeds the observer's risk state
// and its direct-trust counters. On first contact the observer gathers
// recommendations from every other agent that already holds an opinion about
// the subject. The scheduling layer here is plumbing; the models themselves
// live in risk_trust and arh_model.

#include "trustnet/arh_model.hpp"
#include "trustnet/risk_trust.hpp"
#include "trustnet/rng.hpp"
#include "trustnet/trust_metric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace trustnet::sim {

struct Consistent
{
  TrustTenths center;
  int jitter{0};  ///< tenths; outcome = center + U{-jitter..jitter}, clamped
};

struct Erratic
{
  TrustTenths center;
  int jitter{0};
  double spike_probability{0.0};
  TrustTenths spike_floor;  ///< spikes are uniform on [spike_floor, center - 0.1]
};

struct Shifting
{
  TrustTenths before;
  TrustTenths after;
  int switch_round{1};  ///< first round that uses `after`
  int jitter{0};
};

using BehaviorProfile = std::variant<Consistent, Erratic, Shifting>;

struct Honest
{};

/// Reports 1.0 - opinion and the rank-inverted degree.
struct Liar
{};

/// Reports the opinion shifted by a constant number of steps.
struct Offset
{
  SemanticShift shift;
};

using RecommenderProfile = std::variant<Honest, Liar, Offset>;

struct AgentSpec
{
  std::string id;
  BehaviorProfile behavior;
  RecommenderProfile recommender;
};

enum class Pairing
{
  AllPairs,    ///< every ordered pair interacts every round
  RoundRobin,  ///< one partner per observer per round, rotating
};

struct Scenario
{
  std::vector<AgentSpec> agents;
  int rounds{1};
  std::uint64_t seed{0};
  risk::ModelParams params;
  Banding banding;
  Pairing pairing{Pairing::AllPairs};
  std::string context{"interaction"};

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct RoundRecord
{
  int round{0};
  std::string observer;
  std::string subject;
  TrustTenths outcome;
  double td_gen{0.0};
  double rv{0.0};
  risk::Characteristics characteristics;
  bool period_closed{false};
  Degree arh_direct{Degree::VeryBad};
  std::optional<Degree> arh_combined;  ///< only on rows where recommendations were gathered
};

/// One recommendation received by an observer at first contact.
struct RecommendationEvent
{
  int round{0};
  std::string observer;
  std::string recommender;
  std::string subject;
  TrustTenths reported_tenths;
  Degree reported{Degree::VeryBad};
  SemanticShift semantic_distance;
  Degree adjusted{Degree::VeryBad};
  int weight{0};
  std::size_t prior_adjustments_for_degree{0};  ///< |T_rd| before this recommendation
  std::size_t prior_adjustments_total{0};       ///< |T^a| before this recommendation
  Degree observer_direct{Degree::VeryBad};      ///< observer's direct degree after the interaction
};

struct AgentSummary
{
  std::string id;
  risk::Characteristics ground_truth;
  std::size_t evaluations{0};
  double risk_accuracy{0.0};  ///< rows whose characteristics match ground truth
  double arh_accuracy{0.0};   ///< rows whose direct degree (g/vg = trustworthy) matches
};

/// Observer's reaction to a shifting subject after its switch round.
struct Reclassification
{
  std::string observer;
  std::string subject;
  int switch_round{0};
  std::optional<int> risk_rounds;   ///< rounds from switch until trustworthiness matches
  std::optional<int> risk_periods;  ///< completed periods from switch until it matches
  std::optional<int> arh_rounds;
};

struct RoundCounters
{
  int round{0};
  std::size_t sampled{0};
  std::size_t pushes{0};
  std::size_t experiences{0};
};

struct SimulationReport
{
  std::uint64_t seed{0};
  int rounds{0};
  std::vector<RoundRecord> records;
  std::vector<RecommendationEvent> recommendations;
  std::vector<AgentSummary> agents;
  std::vector<Reclassification> reclassifications;
  std::vector<RoundCounters> counters;
};

TrustTenths sample_outcome(const BehaviorProfile &profile, int round, RngStream &rng);

std::pair<TrustTenths, Degree> produce_recommendation(const RecommenderProfile &profile,
                                                      TrustTenths opinion_tenths,
                                                      Degree opinion_degree);

/// Monte Carlo classification of the profile's stationary (post-switch)
/// distribution: population median and semi-deviation of `draws` samples.
risk::Characteristics ground_truth_characteristics(const BehaviorProfile &profile,
                                                   const risk::ModelParams &params,
                                                   RngStream &rng, std::size_t draws = 100000);

/// Validates, then runs the scenario. Same scenario and seed give identical reports.
SimulationReport run_scenario(const Scenario &scenario);

}  // namespace trustnet::sim
