#pragma once

// Fixed scenarios shared by the simulator unit tests and the acceptance suite.

#include "trustnet/simulator.hpp"

#include <string>

namespace fixtures {

using namespace trustnet;
using namespace trustnet::sim;

inline TrustTenths tt(int tenths)
{
  return TrustTenths::from_tenths(tenths);
}

inline Scenario two_consistent_agents(int rounds)
{
  Scenario s;
  s.agents = {{"a", Consistent{tt(8), 0}, Honest{}}, {"b", Consistent{tt(8), 0}, Honest{}}};
  s.rounds = rounds;
  s.seed   = 1;
  s.params = {1.0, 1, 0.5, 0.3};
  return s;
}

/// Fourteen honest agents plus one liar and one constant +1 dissenter. Every agent
/// behaves at a scale extreme (vb or vg), so liar reports are three steps off
/// and dissenter reports on vb subjects are one step off without clamping.
inline Scenario liar_and_dissenter(std::uint64_t seed = 2024)
{
  Scenario s;
  for (int i = 0; i < 14; ++i)
  {
    auto const id     = std::string("h") + std::to_string(i);
    auto const center = i % 2 == 0 ? tt(1) : tt(10);
    s.agents.push_back({id, Consistent{center, 1}, Honest{}});
  }
  s.agents.push_back({"liar", Consistent{tt(1), 1}, Liar{}});
  s.agents.push_back({"dissenter", Consistent{tt(10), 1}, Offset{SemanticShift{1}}});
  s.rounds  = 45;
  s.seed    = seed;
  s.params  = {1.0, 3, 0.5, 0.3};
  s.pairing = Pairing::RoundRobin;
  return s;
}

/// One observer watching a subject that flips from 0.9 to 0.1 at round 20.
inline Scenario forgiveness(double k, std::uint64_t seed = 77)
{
  Scenario s;
  s.agents = {{"observer", Consistent{tt(7), 0}, Honest{}},
              {"subject", Shifting{tt(9), tt(1), 20, 0}, Honest{}}};
  s.rounds = 60;
  s.seed   = seed;
  s.params = {k, 4, 0.5, 0.3};
  return s;
}

}  // namespace fixtures
