#include "trustnet/risk_trust.hpp"

#include "trustnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace trustnet::risk {

void ModelParams::validate() const
{
  if (!std::isfinite(k) || !(k > 0.0))
  {
    throw ConfigError("params.k", "must be a positive real");
  }
  if (n < 1)
  {
    throw ConfigError("params.n", "must be an integer >= 1");
  }
  if (!std::isfinite(td_th) || td_th < 0.0 || td_th > 1.0)
  {
    throw ConfigError("params.td_th", "must lie in [0, 1]");
  }
  if (!std::isfinite(rv_th) || rv_th < 0.0)
  {
    throw ConfigError("params.rv_th", "must be a non-negative real");
  }
}

ExperienceWindow::ExperienceWindow(int period_index, int growth_cap)
  : capacity_(std::min(period_index + 1, growth_cap))
  , period_index_(period_index)
{
  if (period_index < 0 || growth_cap < 1)
  {
    throw InvalidValue("experience window needs period_index >= 0 and growth cap >= 1");
  }
}

void ExperienceWindow::append(TrustTenths v)
{
  if (full())
  {
    throw std::logic_error("experience window already at capacity");
  }
  values_.push_back(v);
}

void ExperienceWindow::start_next_period(int growth_cap)
{
  values_.clear();
  ++period_index_;
  capacity_ = std::min(period_index_ + 1, growth_cap);
}

double median_of_window(std::span<const TrustTenths> values)
{
  if (values.empty())
  {
    throw EmptySample("median of an empty window");
  }
  std::vector<int> sorted;
  sorted.reserve(values.size());
  for (auto v : values)
  {
    sorted.push_back(v.tenths());
  }
  std::sort(sorted.begin(), sorted.end());

  auto const mid = sorted.size() / 2;
  if (sorted.size() % 2 == 1)
  {
    return sorted[mid] / 10.0;
  }
  return (sorted[mid - 1] + sorted[mid]) / 20.0;
}

double update_general_trust(double prev, double ex_med, double k)
{
  return (prev + k * ex_med) / (k + 1.0);
}

double risk_value(std::span<const TrustTenths> values)
{
  if (values.empty())
  {
    throw EmptySample("risk value of an empty window");
  }
  // Integer arithmetic in tenths: with S the sum and s the count, value t lies
  // below the mean iff t*s < S, and its squared deviation is (t*s - S)^2 / s^2.
  auto const count = static_cast<std::int64_t>(values.size());
  std::int64_t sum = 0;
  for (auto v : values)
  {
    sum += v.tenths();
  }

  std::int64_t below    = 0;
  std::int64_t sq_numer = 0;
  for (auto v : values)
  {
    std::int64_t const scaled = v.tenths() * count;
    if (scaled < sum)
    {
      ++below;
      sq_numer += (sum - scaled) * (sum - scaled);
    }
  }
  if (below == 0)
  {
    return 0.0;
  }
  double const denom = static_cast<double>(count) * static_cast<double>(count) *
                       static_cast<double>(below) * 100.0;
  return std::sqrt(static_cast<double>(sq_numer) / denom);
}

double general_reputation(std::span<const TrustTenths> recs)
{
  if (recs.empty())
  {
    throw NoReputation("no recommendations received");
  }
  return median_of_window(recs);
}

TrustState bootstrap(std::span<const TrustTenths> recs, const ModelParams &params)
{
  TrustState state;
  state.td_gen = recs.empty() ? params.td_th : general_reputation(recs);
  state.rv     = params.rv_th;
  return state;
}

bool push_experience(TrustState &state, TrustTenths td, const ModelParams &params)
{
  if (!state.td_gen || !state.rv)
  {
    throw std::logic_error("push_experience on a state that was never bootstrapped");
  }
  state.window.append(td);
  if (!state.window.full())
  {
    return false;
  }

  auto const values = state.window.values();
  state.td_gen      = update_general_trust(*state.td_gen, median_of_window(values), params.k);
  state.rv          = risk_value(values);
  state.has_completed_period = true;
  state.window.start_next_period(params.n);
  return true;
}

Characteristics classify(double td_gen, double rv, const ModelParams &params) noexcept
{
  return Characteristics{td_gen >= params.td_th, rv >= params.rv_th};
}

Characteristics evaluate(const TrustState &state, const ModelParams &params)
{
  if (!state.td_gen || !state.rv)
  {
    throw std::logic_error("evaluate on a state that was never bootstrapped");
  }
  return classify(*state.td_gen, *state.rv, params);
}

}  // namespace trustnet::risk
