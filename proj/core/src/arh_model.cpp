#include "trustnet/arh_model.hpp"

#include "trustnet/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace trustnet::arh {
namespace {

// Counts are indexed by rank; iterating upward and replacing only on a strictly
// larger count keeps the lowest-ranked degree among ties.
template <typename Count>
Degree lowest_argmax(const std::array<Count, 4> &by_rank)
{
  std::size_t best = 0;
  for (std::size_t r = 1; r < by_rank.size(); ++r)
  {
    if (by_rank[r] > by_rank[best])
    {
      best = r;
    }
  }
  return static_cast<Degree>(best);
}

std::string join_shifts(std::span<const SemanticShift> shifts)
{
  std::vector<int> sorted;
  sorted.reserve(shifts.size());
  for (auto const &s : shifts)
  {
    sorted.push_back(s.steps());
  }
  std::sort(sorted.begin(), sorted.end());

  std::string out = "{";
  for (std::size_t i = 0; i < sorted.size(); ++i)
  {
    if (i != 0)
    {
      out += ',';
    }
    out += std::to_string(sorted[i]);
  }
  out += '}';
  return out;
}

}  // namespace

ExperienceCounters ExperienceCounters::from_tuple(std::uint64_t vg, std::uint64_t g,
                                                  std::uint64_t b, std::uint64_t vb)
{
  ExperienceCounters c;
  c.counts_ = {vb, b, g, vg};
  return c;
}

std::uint64_t ExperienceCounters::total() const noexcept
{
  return counts_[0] + counts_[1] + counts_[2] + counts_[3];
}

std::array<std::uint64_t, 4> ExperienceCounters::as_tuple() const noexcept
{
  return {counts_[3], counts_[2], counts_[1], counts_[0]};
}

Degree direct_trust_degree(const ExperienceCounters &c)
{
  std::array<std::uint64_t, 4> by_rank{};
  for (auto d : kAllDegrees)
  {
    by_rank[static_cast<std::size_t>(rank(d))] = c.count(d);
  }
  if (c.total() == 0)
  {
    throw NoExperience("no direct experience recorded");
  }
  return lowest_argmax(by_rank);
}

void DirectTrustStore::record_experience(const Context &context, const AgentId &agent,
                                         Degree outcome)
{
  entries_[StoreKey{context, agent}].record(outcome);
}

const ExperienceCounters *DirectTrustStore::find(const Context &context,
                                                 const AgentId &agent) const
{
  auto it = entries_.find(StoreKey{context, agent});
  return it == entries_.end() ? nullptr : &it->second;
}

std::string DirectTrustStore::dump() const
{
  std::ostringstream out;
  for (auto const &[key, counters] : entries_)
  {
    auto const t = counters.as_tuple();
    out << key.context << '\t' << key.agent << '\t' << t[0] << ',' << t[1] << ',' << t[2] << ','
        << t[3] << '\n';
  }
  return out.str();
}

void AdjustmentSets::add(Degree recommended, SemanticShift shift)
{
  per_degree_[static_cast<std::size_t>(rank(recommended))].push_back(shift);
}

bool AdjustmentSets::empty() const noexcept
{
  return total() == 0;
}

std::size_t AdjustmentSets::total() const noexcept
{
  std::size_t n = 0;
  for (auto const &set : per_degree_)
  {
    n += set.size();
  }
  return n;
}

std::string AdjustmentSets::to_string() const
{
  return join_shifts(of(Degree::VeryGood)) + ";" + join_shifts(of(Degree::Good)) + ";" +
         join_shifts(of(Degree::Bad)) + ";" + join_shifts(of(Degree::VeryBad));
}

int recommender_trust_degree(const AdjustmentSets &t)
{
  std::array<std::size_t, SemanticShift::kLimit + 1> freq{};
  for (auto d : kAllDegrees)
  {
    for (auto const &s : t.of(d))
    {
      ++freq[static_cast<std::size_t>(std::abs(s.steps()))];
    }
  }
  if (t.empty())
  {
    throw UnknownRecommender("recommender has no adjustment history");
  }
  // Largest |shift| wins ties: walk downward, replace only on a strictly higher count.
  int best = SemanticShift::kLimit;
  for (int v = SemanticShift::kLimit - 1; v >= 0; --v)
  {
    if (freq[static_cast<std::size_t>(v)] > freq[static_cast<std::size_t>(best)])
    {
      best = v;
    }
  }
  return best;
}

SemanticShift semantic_distance(const AdjustmentSets &t, Degree degree) noexcept
{
  auto const history = t.of(degree);
  if (history.empty())
  {
    return SemanticShift{};
  }
  std::array<std::size_t, 2 * SemanticShift::kLimit + 1> freq{};
  for (auto const &s : history)
  {
    ++freq[static_cast<std::size_t>(s.steps() + SemanticShift::kLimit)];
  }
  // Preference order for ties: 0, -1, +1, -2, +2, -3, +3.
  constexpr std::array<int, 7> order{0, -1, 1, -2, 2, -3, 3};
  int best = order[0];
  for (int v : order)
  {
    if (freq[static_cast<std::size_t>(v + SemanticShift::kLimit)] >
        freq[static_cast<std::size_t>(best + SemanticShift::kLimit)])
    {
      best = v;
    }
  }
  return SemanticShift{best};
}

Degree adjust_recommendation(Degree rd, SemanticShift sd) noexcept
{
  return degree_shift(rd, sd);
}

int weight_of(std::optional<int> rtd)
{
  static constexpr std::array<int, 4> kWeights{9, 5, 3, 1};
  if (!rtd)
  {
    return 0;
  }
  if (*rtd < 0 || *rtd > 3)
  {
    throw InvalidValue("recommender trust degree out of range: " + std::to_string(*rtd));
  }
  return kWeights[static_cast<std::size_t>(*rtd)];
}

int recommender_weight(const AdjustmentSets &t)
{
  if (t.empty())
  {
    return weight_of(std::nullopt);
  }
  return weight_of(recommender_trust_degree(t));
}

void RecommenderStore::record_adjustment(const Context &context, const AgentId &recommender,
                                         Degree recommended, Degree own)
{
  entries_[StoreKey{context, recommender}].add(recommended, degree_distance(own, recommended));
}

void RecommenderStore::bootstrap_newcomer(std::span<const Seed> seeds)
{
  std::set<StoreKey> seen;
  for (auto const &seed : seeds)
  {
    StoreKey key{seed.context, seed.recommender};
    if (entries_.contains(key) || !seen.insert(key).second)
    {
      throw DuplicateKey("duplicate recommender seed for (" + seed.context + ", " +
                         seed.recommender + ")");
    }
  }
  for (auto const &seed : seeds)
  {
    entries_.emplace(StoreKey{seed.context, seed.recommender}, seed.history);
  }
}

const AdjustmentSets *RecommenderStore::find(const Context &context,
                                             const AgentId &recommender) const
{
  auto it = entries_.find(StoreKey{context, recommender});
  return it == entries_.end() ? nullptr : &it->second;
}

std::string RecommenderStore::dump() const
{
  std::ostringstream out;
  for (auto const &[key, sets] : entries_)
  {
    out << key.context << '\t' << key.agent << '\t' << sets.to_string() << '\n';
  }
  return out.str();
}

Degree combine_recommendations(std::span<const WeightedDegree> items)
{
  std::array<long long, 4> sums{};
  bool usable = false;
  for (auto const &item : items)
  {
    if (item.weight < 0)
    {
      throw InvalidValue("negative recommender weight");
    }
    sums[static_cast<std::size_t>(rank(item.degree))] += item.weight;
    usable = usable || item.weight > 0;
  }
  if (!usable)
  {
    throw NoUsableRecommendations("no recommendation carries a positive weight");
  }
  return lowest_argmax(sums);
}

}  // namespace trustnet::arh
