#include "trustnet/arh_model.hpp"
#include "trustnet/risk_trust.hpp"
#include "trustnet/simulator.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace trustnet;

namespace {

std::vector<TrustTenths> random_window(std::size_t length)
{
  std::mt19937 gen(5);
  std::vector<TrustTenths> window;
  for (std::size_t i = 0; i < length; ++i)
  {
    window.push_back(TrustTenths::from_tenths(static_cast<int>(gen() % 11)));
  }
  return window;
}

void BM_RiskValue(benchmark::State &state)
{
  auto const window = random_window(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(risk::risk_value(window));
  }
}
BENCHMARK(BM_RiskValue)->Arg(8)->Arg(64)->Arg(1024);

void BM_Median(benchmark::State &state)
{
  auto const window = random_window(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(risk::median_of_window(window));
  }
}
BENCHMARK(BM_Median)->Arg(8)->Arg(64)->Arg(1024);

void BM_PushExperience(benchmark::State &state)
{
  risk::ModelParams const p{2.0, static_cast<int>(state.range(0)), 0.5, 0.3};
  auto const values = random_window(4096);
  auto trust        = risk::bootstrap({}, p);
  std::size_t i     = 0;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(risk::push_experience(trust, values[i++ % values.size()], p));
  }
}
BENCHMARK(BM_PushExperience)->Arg(1)->Arg(16);

void BM_CombineRecommendations(benchmark::State &state)
{
  std::vector<arh::WeightedDegree> recs;
  std::mt19937 gen(11);
  for (int i = 0; i < state.range(0); ++i)
  {
    recs.push_back({degree_from_rank(static_cast<int>(gen() % 4)), static_cast<int>(gen() % 10)});
  }
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(arh::combine_recommendations(recs));
  }
}
BENCHMARK(BM_CombineRecommendations)->Arg(4)->Arg(64);

void BM_RunScenario(benchmark::State &state)
{
  sim::Scenario s;
  for (int i = 0; i < state.range(0); ++i)
  {
    s.agents.push_back({"agent" + std::to_string(i),
                        sim::Consistent{TrustTenths::from_tenths(i % 11), 2}, sim::Honest{}});
  }
  s.rounds  = 50;
  s.seed    = 3;
  s.params  = {1.0, 4, 0.5, 0.3};
  s.pairing = sim::Pairing::RoundRobin;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(sim::run_scenario(s));
  }
}
BENCHMARK(BM_RunScenario)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
