#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace trustnet {

/// 64-bit FNV-1a; stable across platforms, unlike std::hash.
constexpr std::uint64_t fnv1a64(std::string_view text) noexcept
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text)
  {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

/// A named deterministic substream. The seed depends only on the scenario seed,
/// the owning agent and the purpose label, so unrelated streams never shift
/// when agents are added or evaluation order changes.
///
/// Draws avoid the std distributions, whose algorithms are implementation
/// defined, so reports are reproducible across standard libraries.
class RngStream
{
public:
  RngStream(std::uint64_t seed, std::string_view agent, std::string_view purpose)
    : engine_(splitmix64(splitmix64(seed ^ fnv1a64(agent)) ^ fnv1a64(purpose)))
  {}

  /// Uniform integer in [lo, hi] (inclusive); returns lo when hi <= lo.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi)
  {
    if (hi <= lo)
    {
      return lo;
    }
    auto const span  = static_cast<std::uint64_t>(hi - lo) + 1U;
    auto const limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    std::uint64_t draw;
    do
    {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01()
  {
    return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
  }

  bool bernoulli(double p)
  {
    if (p <= 0.0)
    {
      return false;
    }
    if (p >= 1.0)
    {
      return true;
    }
    return uniform01() < p;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace trustnet
