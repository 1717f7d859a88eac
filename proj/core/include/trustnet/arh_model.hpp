#pragma once

// Recommendation-based trust model with ordinal degrees: direct-experience
// counters, recommender adjustment history (semantic distance) and weighted
// combination of recommendations.
//
// Argmax ties (direct degree, combined degree) resolve to the lowest-ranked
// tied degree. This pessimistic rule stands in for the original tie table,
// which is not reproduced here.

#include "trustnet/trust_metric.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trustnet::arh {

using AgentId = std::string;
using Context = std::string;

struct StoreKey
{
  Context context;
  AgentId agent;

  auto operator<=>(const StoreKey &) const = default;
};

/// Interaction tallies per outcome degree.
class ExperienceCounters
{
public:
  ExperienceCounters() = default;

  /// Order: (s_vg, s_g, s_b, s_vb).
  static ExperienceCounters from_tuple(std::uint64_t vg, std::uint64_t g, std::uint64_t b,
                                       std::uint64_t vb);

  void record(Degree outcome) noexcept
  {
    ++counts_[static_cast<std::size_t>(rank(outcome))];
  }

  std::uint64_t count(Degree d) const noexcept
  {
    return counts_[static_cast<std::size_t>(rank(d))];
  }

  std::uint64_t total() const noexcept;

  /// (s_vg, s_g, s_b, s_vb)
  std::array<std::uint64_t, 4> as_tuple() const noexcept;

  bool operator==(const ExperienceCounters &) const = default;

private:
  std::array<std::uint64_t, 4> counts_{};  // indexed by rank
};

/// Degree with the largest counter; ties go to the lowest rank.
/// Throws NoExperience when every counter is zero.
Degree direct_trust_degree(const ExperienceCounters &c);

/// Direct-trust store: one ExperienceCounters per (context, agent).
class DirectTrustStore
{
public:
  void record_experience(const Context &context, const AgentId &agent, Degree outcome);

  /// nullptr when nothing has been recorded for the key.
  const ExperienceCounters *find(const Context &context, const AgentId &agent) const;

  std::size_t size() const noexcept
  {
    return entries_.size();
  }

  /// One line per entry: context<TAB>agent<TAB>vg,g,b,vb
  std::string dump() const;

private:
  std::map<StoreKey, ExperienceCounters> entries_;
};

/// Four multisets of past semantic shifts, one per recommended degree.
class AdjustmentSets
{
public:
  void add(Degree recommended, SemanticShift shift);

  std::span<const SemanticShift> of(Degree recommended) const noexcept
  {
    return per_degree_[static_cast<std::size_t>(rank(recommended))];
  }

  bool empty() const noexcept;

  std::size_t total() const noexcept;

  /// "{vg};{g};{b};{vb}" with each multiset sorted ascending, e.g. "{};{};{1};{}".
  std::string to_string() const;

  bool operator==(const AdjustmentSets &) const = default;

private:
  std::array<std::vector<SemanticShift>, 4> per_degree_;  // indexed by rank
};

/// Mode of |shift| over all four multisets; ties go to the largest value.
/// Throws UnknownRecommender when there is no history.
int recommender_trust_degree(const AdjustmentSets &t);

/// Mode of the multiset for `degree`. Empty history gives 0; ties prefer the
/// smallest magnitude, negative before positive.
SemanticShift semantic_distance(const AdjustmentSets &t, Degree degree) noexcept;

/// rd* = rd (+) sd
Degree adjust_recommendation(Degree rd, SemanticShift sd) noexcept;

/// 0->9, 1->5, 2->3, 3->1, unknown->0. Throws InvalidValue for rtd outside 0..3.
int weight_of(std::optional<int> rtd);

/// weight_of applied to the recommender's history (unknown history -> 0).
int recommender_weight(const AdjustmentSets &t);

/// Recommender store: one AdjustmentSets per (context, recommender).
class RecommenderStore
{
public:
  struct Seed
  {
    Context context;
    AgentId recommender;
    AdjustmentSets history;
  };

  /// Appends degree_distance(own, recommended) to the multiset for `recommended`.
  void record_adjustment(const Context &context, const AgentId &recommender, Degree recommended,
                         Degree own);

  /// Preloads a newcomer's knowledge. Throws DuplicateKey if a seed repeats a
  /// key or the key is already present; the store is unchanged on error.
  void bootstrap_newcomer(std::span<const Seed> seeds);

  const AdjustmentSets *find(const Context &context, const AgentId &recommender) const;

  std::size_t size() const noexcept
  {
    return entries_.size();
  }

  /// One line per entry: context<TAB>agent<TAB>{vg};{g};{b};{vb}
  std::string dump() const;

private:
  std::map<StoreKey, AdjustmentSets> entries_;
};

struct WeightedDegree
{
  Degree degree;
  int weight;
};

/// Per-degree weight sums, argmax wins, ties go to the lowest rank.
/// Throws NoUsableRecommendations if the list is empty or every weight is 0.
Degree combine_recommendations(std::span<const WeightedDegree> items);

}  // namespace trustnet::arh
