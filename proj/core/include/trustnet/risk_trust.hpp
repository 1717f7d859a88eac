#pragma once

// Median/risk trust model over the discrete 0.1 scale.
//
// Outcomes fill an experience window whose capacity starts at 1 and grows by
// one per completed interaction period up to `n`. When the window fills, the
// period closes: the window median updates the general trust degree with
// forgiveness factor `k`, the downside semi-deviation becomes the risk value,
// and the window is cleared.

#include "trustnet/trust_metric.hpp"

#include <optional>
#include <span>
#include <vector>

namespace trustnet::risk {

struct ModelParams
{
  double k{1.0};      ///< weight of the current period's median; larger forgets faster
  int n{1};           ///< window growth cap
  double td_th{0.5};  ///< trustworthy iff td_gen >= td_th
  double rv_th{0.3};  ///< risky iff rv >= rv_th

  /// Throws ConfigError naming "params.<field>" on the first violated bound.
  void validate() const;
};

class ExperienceWindow
{
public:
  ExperienceWindow() = default;

  /// Window for a peer that has already completed `period_index` periods.
  ExperienceWindow(int period_index, int growth_cap);

  std::span<const TrustTenths> values() const noexcept
  {
    return values_;
  }

  int capacity() const noexcept
  {
    return capacity_;
  }

  int period_index() const noexcept
  {
    return period_index_;
  }

  bool full() const noexcept
  {
    return static_cast<int>(values_.size()) >= capacity_;
  }

  void append(TrustTenths v);

  /// Clears the values, advances the period index and regrows the capacity.
  void start_next_period(int growth_cap);

private:
  std::vector<TrustTenths> values_;
  int capacity_{1};
  int period_index_{0};
};

struct TrustState
{
  ExperienceWindow window;
  std::optional<double> td_gen;
  std::optional<double> rv;
  bool has_completed_period{false};
};

struct Characteristics
{
  bool trustworthy{false};
  bool risky{false};

  bool operator==(const Characteristics &) const = default;
};

/// Median of a sorted copy; even lengths average the two middle values.
/// Throws EmptySample on an empty list.
double median_of_window(std::span<const TrustTenths> values);

/// (prev + k * ex_med) / (k + 1)
double update_general_trust(double prev, double ex_med, double k);

/// Downside semi-deviation: root mean square of the deviations of the values
/// strictly below the mean, averaged over those values only. 0 when no value
/// lies below the mean. Throws EmptySample on an empty list.
double risk_value(std::span<const TrustTenths> values);

/// Median of the recommendations. Throws NoReputation on an empty sample.
double general_reputation(std::span<const TrustTenths> recs);

/// First-contact state: td_gen from the recommendations' median (td_th when
/// there are none), rv = rv_th, empty window of capacity 1.
TrustState bootstrap(std::span<const TrustTenths> recs, const ModelParams &params);

/// Appends `td`; closes the period when the window reaches capacity.
/// Returns true when a period closed. Throws std::logic_error when the state
/// was never bootstrapped.
bool push_experience(TrustState &state, TrustTenths td, const ModelParams &params);

Characteristics classify(double td_gen, double rv, const ModelParams &params) noexcept;

/// Classifies the latest period-close values (bootstrap values before the first
/// close). Throws std::logic_error when the state was never bootstrapped.
Characteristics evaluate(const TrustState &state, const ModelParams &params);

}  // namespace trustnet::risk
