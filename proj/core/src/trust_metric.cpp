#include "trustnet/trust_metric.hpp"

#include "trustnet/errors.hpp"

#include <algorithm>
#include <cmath>

namespace trustnet {

TrustTenths TrustTenths::from_tenths(int tenths)
{
  if (tenths < 0 || tenths > kMax)
  {
    throw InvalidValue("trust value out of range: " + std::to_string(tenths) + " tenths");
  }
  return TrustTenths{tenths};
}

TrustTenths TrustTenths::from_real(double value)
{
  if (!std::isfinite(value))
  {
    throw InvalidValue("trust value is not finite");
  }
  double const scaled = value * 10.0;
  double const steps  = std::round(scaled);
  if (std::abs(scaled - steps) > 1e-8)
  {
    throw InvalidValue("trust value not on the 0.1 grid: " + std::to_string(value));
  }
  return from_tenths(static_cast<int>(steps));
}

TrustTenths TrustTenths::nearest(double value)
{
  if (!std::isfinite(value) || value < -1e-9 || value > 1.0 + 1e-9)
  {
    throw InvalidValue("trust value out of range: " + std::to_string(value));
  }
  // The epsilon keeps decimal halves such as 0.35 (stored just below) rounding up.
  auto const steps = static_cast<int>(std::floor(value * 10.0 + 0.5 + 1e-9));
  return from_tenths(std::clamp(steps, 0, kMax));
}

TrustTenths TrustTenths::parse(std::string_view text)
{
  auto fail = [&]() -> InvalidValue {
    return InvalidValue("not a trust value on the 0.1 grid: '" + std::string(text) + "'");
  };

  if (text.empty() || (text[0] != '0' && text[0] != '1'))
  {
    throw fail();
  }
  int const units = text[0] - '0';
  int tenths      = units * 10;
  if (text.size() > 1)
  {
    if (text[1] != '.' || text.size() == 2)
    {
      throw fail();
    }
    for (std::size_t i = 2; i < text.size(); ++i)
    {
      char const c = text[i];
      if (c < '0' || c > '9')
      {
        throw fail();
      }
      if (i == 2)
      {
        tenths += c - '0';
      }
      else if (c != '0')
      {
        throw fail();
      }
    }
  }
  if (tenths > kMax)
  {
    throw fail();
  }
  return TrustTenths{tenths};
}

std::string TrustTenths::to_string() const
{
  std::string out = tenths_ == kMax ? "1.0" : "0.0";
  if (tenths_ != kMax)
  {
    out[2] = static_cast<char>('0' + tenths_);
  }
  return out;
}

Degree degree_from_rank(int r)
{
  if (r < 0 || r > 3)
  {
    throw InvalidValue("ordinal rank out of range: " + std::to_string(r));
  }
  return static_cast<Degree>(r);
}

std::string_view to_token(Degree d) noexcept
{
  switch (d)
  {
  case Degree::VeryBad:
    return "vb";
  case Degree::Bad:
    return "b";
  case Degree::Good:
    return "g";
  case Degree::VeryGood:
    return "vg";
  }
  return "?";
}

Degree parse_degree(std::string_view token)
{
  if (token == "vb" || token == "vu")
  {
    return Degree::VeryBad;
  }
  if (token == "b" || token == "ut")
  {
    return Degree::Bad;
  }
  if (token == "g" || token == "t")
  {
    return Degree::Good;
  }
  if (token == "vg" || token == "vt")
  {
    return Degree::VeryGood;
  }
  throw InvalidValue("unknown degree token '" + std::string(token) + "'");
}

SemanticShift::SemanticShift(int steps)
  : steps_(steps)
{
  if (steps < -kLimit || steps > kLimit)
  {
    throw InvalidValue("semantic shift out of range: " + std::to_string(steps));
  }
}

Degree degree_shift(Degree d, SemanticShift s) noexcept
{
  return static_cast<Degree>(std::clamp(rank(d) + s.steps(), 0, 3));
}

SemanticShift degree_distance(Degree own, Degree recommended) noexcept
{
  return SemanticShift{rank(own) - rank(recommended)};
}

Banding::Banding(TrustTenths bad_from, TrustTenths good_from, TrustTenths very_good_from)
  : bounds_{bad_from, good_from, very_good_from}
{
  if (bad_from.tenths() <= 0 || !(bad_from < good_from) || !(good_from < very_good_from))
  {
    throw InvalidValue("banding bounds must satisfy 0 < b < g < vg <= 1.0");
  }
}

Degree Banding::classify(TrustTenths v) const noexcept
{
  int r = 0;
  for (auto const &bound : bounds_)
  {
    if (v >= bound)
    {
      ++r;
    }
  }
  return static_cast<Degree>(r);
}

Degree tenths_to_degree(TrustTenths v, const Banding &banding) noexcept
{
  return banding.classify(v);
}

}  // namespace trustnet
