#include "oracle/brute_force.hpp"
#include "trustnet/errors.hpp"
#include "trustnet/risk_trust.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace trustnet;
using namespace trustnet::risk;

namespace {

std::vector<TrustTenths> tenths(std::initializer_list<int> values)
{
  std::vector<TrustTenths> out;
  for (int v : values)
  {
    out.push_back(TrustTenths::from_tenths(v));
  }
  return out;
}

std::vector<double> as_reals(const std::vector<TrustTenths> &values)
{
  std::vector<double> out;
  for (auto v : values)
  {
    out.push_back(v.value());
  }
  return out;
}

const std::vector<TrustTenths> kReferenceWindow = tenths({8, 7, 8, 6, 7, 5, 2, 7});

// sqrt(21/320), from tests/oracle/brute_force_oracle.py
constexpr double kReferenceRisk = 0.25617376914898998;

ModelParams params(double k, int n, double td_th, double rv_th)
{
  return ModelParams{k, n, td_th, rv_th};
}

}  // namespace

TEST(ModelParamsTest, ValidateNamesTheField)
{
  auto expect_field = [](ModelParams p, const std::string &field) {
    try
    {
      p.validate();
      FAIL() << "expected ConfigError for " << field;
    }
    catch (const ConfigError &e)
    {
      EXPECT_EQ(e.field(), field);
    }
  };
  expect_field(params(0.0, 1, 0.5, 0.3), "params.k");
  expect_field(params(-1.0, 1, 0.5, 0.3), "params.k");
  expect_field(params(1.0, 0, 0.5, 0.3), "params.n");
  expect_field(params(1.0, 1, 1.5, 0.3), "params.td_th");
  expect_field(params(1.0, 1, 0.5, -0.1), "params.rv_th");
  EXPECT_NO_THROW(params(0.1, 1, 0.0, 0.0).validate());
}

TEST(MedianTest, Examples)
{
  EXPECT_DOUBLE_EQ(median_of_window(kReferenceWindow), 0.7);
  EXPECT_DOUBLE_EQ(median_of_window(tenths({5})), 0.5);
  EXPECT_DOUBLE_EQ(median_of_window(tenths({2, 2, 9})), 0.2);
  EXPECT_THROW(median_of_window({}), EmptySample);
}

TEST(UpdateGeneralTrustTest, Examples)
{
  EXPECT_NEAR(update_general_trust(0.5, 0.7, 1.0), 0.6, 1e-12);
  EXPECT_NEAR(update_general_trust(0.5, 0.7, 3.0), 0.65, 1e-12);
  for (double k : {0.1, 1.0, 7.5})
  {
    EXPECT_NEAR(update_general_trust(0.42, 0.42, k), 0.42, 1e-12);
  }
}

TEST(UpdateGeneralTrustTest, BoundedAndContractingInK)
{
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial)
  {
    double const prev   = unit(gen);
    double const ex_med = unit(gen);
    double last_gap     = std::abs(prev - ex_med) + 1e-15;
    for (double k : {0.01, 0.5, 1.0, 2.0, 4.0, 8.0, 100.0})
    {
      double const next = update_general_trust(prev, ex_med, k);
      EXPECT_GE(next, 0.0);
      EXPECT_LE(next, 1.0);
      double const gap = std::abs(next - ex_med);
      EXPECT_LE(gap, last_gap + 1e-15);
      last_gap = gap;
    }
  }
}

TEST(RiskValueTest, Examples)
{
  EXPECT_NEAR(risk_value(kReferenceWindow), kReferenceRisk, 1e-12);
  EXPECT_NEAR(risk_value(kReferenceWindow), std::sqrt(0.196875 / 3.0), 1e-12);
  EXPECT_EQ(risk_value(tenths({4, 4, 4})), 0.0);
  EXPECT_NEAR(risk_value(tenths({0, 10})), 0.5, 1e-12);
  EXPECT_THROW(risk_value({}), EmptySample);
}

TEST(RiskValueTest, IgnoresUpside)
{
  for (int v = 0; v <= 10; ++v)
  {
    for (int size = 1; size <= 6; ++size)
    {
      std::vector<TrustTenths> window(static_cast<std::size_t>(size), TrustTenths::from_tenths(v));
      EXPECT_EQ(risk_value(window), 0.0);
      window.push_back(TrustTenths::from_tenths(v));
      EXPECT_EQ(risk_value(window), 0.0);
    }
  }
  // A single high outlier never registers as risk on its own side.
  auto const low_spike  = risk_value(tenths({8, 8, 8, 2}));
  auto const high_spike = risk_value(tenths({2, 2, 2, 8}));
  EXPECT_GT(low_spike, high_spike);
}

TEST(RiskTrustOracleTest, RandomWindowsMatchBruteForce)
{
  std::mt19937_64 gen(20240601);
  for (int trial = 0; trial < 2000; ++trial)
  {
    auto const length = 1 + static_cast<int>(gen() % 25);
    std::vector<TrustTenths> window;
    bool const constant = trial % 10 == 0;
    int const fixed     = static_cast<int>(gen() % 11);
    for (int i = 0; i < length; ++i)
    {
      window.push_back(TrustTenths::from_tenths(constant ? fixed : static_cast<int>(gen() % 11)));
    }
    auto const reals = as_reals(window);
    EXPECT_NEAR(median_of_window(window), oracle::median(reals), 1e-12);
    EXPECT_NEAR(risk_value(window), oracle::semi_deviation(reals), 1e-12);
    if (constant)
    {
      EXPECT_EQ(risk_value(window), 0.0);
    }

    auto shuffled = window;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    EXPECT_EQ(median_of_window(shuffled), median_of_window(window));
    EXPECT_EQ(risk_value(shuffled), risk_value(window));
  }
}

TEST(GeneralReputationTest, Examples)
{
  EXPECT_DOUBLE_EQ(general_reputation(tenths({3})), 0.3);
  EXPECT_DOUBLE_EQ(general_reputation(tenths({2, 8, 6})), 0.6);
  EXPECT_DOUBLE_EQ(general_reputation(tenths({1, 9})), 0.5);
  EXPECT_THROW(general_reputation({}), NoReputation);
}

TEST(BootstrapTest, Examples)
{
  auto const p = params(1.0, 4, 0.5, 0.3);
  auto const a = bootstrap(tenths({8, 6, 9}), p);
  EXPECT_DOUBLE_EQ(*a.td_gen, 0.8);
  EXPECT_DOUBLE_EQ(*a.rv, 0.3);
  EXPECT_EQ(a.window.capacity(), 1);
  EXPECT_EQ(a.window.period_index(), 0);
  EXPECT_TRUE(a.window.values().empty());
  EXPECT_FALSE(a.has_completed_period);

  auto const b = bootstrap({}, p);
  EXPECT_DOUBLE_EQ(*b.td_gen, 0.5);
  EXPECT_DOUBLE_EQ(*b.rv, 0.3);

  auto const c = bootstrap(tenths({0}), p);
  EXPECT_DOUBLE_EQ(*c.td_gen, 0.0);
}

TEST(PushExperienceTest, Examples)
{
  auto const p = params(1.0, 3, 0.5, 0.3);

  auto s1 = bootstrap({}, p);
  EXPECT_TRUE(push_experience(s1, TrustTenths::from_tenths(8), p));
  EXPECT_TRUE(s1.has_completed_period);

  auto s2   = bootstrap({}, p);
  s2.window = ExperienceWindow(1, p.n);
  EXPECT_EQ(s2.window.capacity(), 2);
  EXPECT_FALSE(push_experience(s2, TrustTenths::from_tenths(8), p));
  EXPECT_TRUE(push_experience(s2, TrustTenths::from_tenths(7), p));
  EXPECT_NEAR(*s2.td_gen, (0.5 + 0.75) / 2.0, 1e-12);
  EXPECT_NEAR(*s2.rv, 0.05, 1e-12);

  auto s3   = bootstrap({}, p);
  s3.window = ExperienceWindow(2, p.n);
  EXPECT_FALSE(push_experience(s3, TrustTenths::from_tenths(5), p));
  EXPECT_EQ(s3.window.values().size(), 1U);
  EXPECT_DOUBLE_EQ(*s3.td_gen, 0.5);
  EXPECT_DOUBLE_EQ(*s3.rv, 0.3);
}

TEST(PushExperienceTest, RequiresBootstrap)
{
  TrustState raw;
  EXPECT_THROW(push_experience(raw, TrustTenths::from_tenths(5), params(1, 1, 0.5, 0.3)),
               std::logic_error);
  EXPECT_THROW(evaluate(raw, params(1, 1, 0.5, 0.3)), std::logic_error);
}

TEST(PushExperienceTest, WindowGrowsOnePerPeriodUpToCap)
{
  for (int cap = 1; cap <= 6; ++cap)
  {
    auto const p = params(2.0, cap, 0.5, 0.3);
    auto state   = bootstrap({}, p);
    std::vector<int> period_sizes;
    int in_period = 0;
    for (int i = 0; i < 60; ++i)
    {
      ++in_period;
      if (push_experience(state, TrustTenths::from_tenths(i % 11), p))
      {
        period_sizes.push_back(in_period);
        in_period = 0;
        int const completed = static_cast<int>(period_sizes.size());
        EXPECT_EQ(state.window.capacity(), std::min(completed + 1, cap));
        EXPECT_EQ(state.window.period_index(), completed);
      }
      ASSERT_GE(*state.td_gen, 0.0);
      ASSERT_LE(*state.td_gen, 1.0);
      ASSERT_GE(*state.rv, 0.0);
    }
    for (std::size_t i = 0; i < period_sizes.size(); ++i)
    {
      EXPECT_EQ(period_sizes[i], std::min(static_cast<int>(i) + 1, cap));
    }
  }
}

TEST(ClassifyTest, Examples)
{
  auto const p = params(1.0, 1, 0.5, 0.3);
  EXPECT_EQ(classify(0.7, 0.1, p), (Characteristics{true, false}));
  EXPECT_EQ(classify(0.5, 0.3, p), (Characteristics{true, true}));
  EXPECT_EQ(classify(0.2, 0.0, p), (Characteristics{false, false}));
  EXPECT_EQ(classify(0.2, 0.9, p), (Characteristics{false, true}));
}

TEST(EvaluateTest, Examples)
{
  auto const p = params(1.0, 1, 0.5, 0.3);
  auto fresh   = bootstrap({}, p);
  EXPECT_EQ(evaluate(fresh, p), (Characteristics{true, true}));

  push_experience(fresh, TrustTenths::from_tenths(10), p);
  EXPECT_NEAR(*fresh.td_gen, 0.75, 1e-12);
  EXPECT_EQ(*fresh.rv, 0.0);
  EXPECT_EQ(evaluate(fresh, p), classify(0.75, 0.0, p));

  auto const p2 = params(1.0, 2, 0.5, 0.3);
  auto steady   = bootstrap(tenths({4}), p2);
  steady.window = ExperienceWindow(1, p2.n);
  push_experience(steady, TrustTenths::from_tenths(4), p2);
  push_experience(steady, TrustTenths::from_tenths(4), p2);
  EXPECT_NEAR(*steady.td_gen, 0.4, 1e-12);
  EXPECT_EQ(*steady.rv, 0.0);
}

TEST(EvaluateTest, MidPeriodReusesLastClose)
{
  auto const p = params(1.0, 3, 0.5, 0.3);
  auto state   = bootstrap({}, p);
  push_experience(state, TrustTenths::from_tenths(9), p);  // closes period 1
  auto const after_close = evaluate(state, p);
  auto const td          = *state.td_gen;
  push_experience(state, TrustTenths::from_tenths(0), p);  // period 2 open
  EXPECT_EQ(*state.td_gen, td);
  EXPECT_EQ(evaluate(state, p), after_close);
}
