#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace trustnet {

/// A value on the discrete [0, 1] trust scale with step 0.1, held as an
/// integer count of tenths so grid membership and equality are exact.
class TrustTenths
{
public:
  static constexpr int kMax = 10;

  constexpr TrustTenths() = default;

  /// Throws InvalidValue unless 0 <= tenths <= 10.
  static TrustTenths from_tenths(int tenths);

  /// Accepts a real that lies on the 0.1 grid (within 1e-9); rejects anything else.
  static TrustTenths from_real(double value);

  /// Rounds a real in [0, 1] to the nearest tenth, halves rounding up.
  static TrustTenths nearest(double value);

  /// Parses "0.7", "1.0", "1", "0.70". Rejects "0.75", "1.1", "-0.0", "".
  static TrustTenths parse(std::string_view text);

  constexpr int tenths() const noexcept
  {
    return tenths_;
  }

  constexpr double value() const noexcept
  {
    return static_cast<double>(tenths_) / 10.0;
  }

  /// "0.7"
  std::string to_string() const;

  constexpr auto operator<=>(const TrustTenths &) const = default;

private:
  constexpr explicit TrustTenths(int tenths)
    : tenths_(tenths)
  {}

  int tenths_{0};
};

/// Four-level ordinal scale. Outcome labels vb/b/g/vg double as the trust
/// degrees vu/ut/t/vt.
enum class Degree : std::uint8_t
{
  VeryBad  = 0,
  Bad      = 1,
  Good     = 2,
  VeryGood = 3,
};

inline constexpr std::array<Degree, 4> kAllDegrees{Degree::VeryBad, Degree::Bad, Degree::Good,
                                                   Degree::VeryGood};

constexpr int rank(Degree d) noexcept
{
  return static_cast<int>(d);
}

/// Throws InvalidValue for ranks outside 0..3.
Degree degree_from_rank(int rank);

/// "vb" | "b" | "g" | "vg"
std::string_view to_token(Degree d) noexcept;

/// Accepts vb|b|g|vg and the trust-degree aliases vu|ut|t|vt.
Degree parse_degree(std::string_view token);

/// Signed distance between two ordinal degrees, always within [-3, 3].
class SemanticShift
{
public:
  static constexpr int kLimit = 3;

  constexpr SemanticShift() = default;

  /// Throws InvalidValue outside [-3, 3].
  explicit SemanticShift(int steps);

  constexpr int steps() const noexcept
  {
    return steps_;
  }

  constexpr auto operator<=>(const SemanticShift &) const = default;

private:
  int steps_{0};
};

/// rank(d) + shift clamped to the scale ends.
Degree degree_shift(Degree d, SemanticShift s) noexcept;

/// rank(own) - rank(recommended), so degree_shift(recommended, result) == own.
SemanticShift degree_distance(Degree own, Degree recommended) noexcept;

/// Lower tenths bound of the b, g and vg bands; everything below the first is vb.
/// Default 3/3/3/2 split: 0.0-0.2 vb, 0.3-0.5 b, 0.6-0.8 g, 0.9-1.0 vg.
class Banding
{
public:
  Banding() = default;

  /// Throws InvalidValue unless 0 < bad < good < very_good <= 10.
  Banding(TrustTenths bad_from, TrustTenths good_from, TrustTenths very_good_from);

  Degree classify(TrustTenths v) const noexcept;

  const std::array<TrustTenths, 3> &lower_bounds() const noexcept
  {
    return bounds_;
  }

  bool operator==(const Banding &) const = default;

private:
  std::array<TrustTenths, 3> bounds_{TrustTenths::from_tenths(3), TrustTenths::from_tenths(6),
                                     TrustTenths::from_tenths(9)};
};

Degree tenths_to_degree(TrustTenths v, const Banding &banding = {}) noexcept;

}  // namespace trustnet
