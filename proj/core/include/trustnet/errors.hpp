#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace trustnet {

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A value outside its domain (off the 0.1 grid, shift beyond +-3, bad token).
class InvalidValue : public Error
{
public:
  using Error::Error;
};

/// All experience counters are zero; fall back to recommendations.
class NoExperience : public Error
{
public:
  using Error::Error;
};

/// Recommender has no adjustment history; its weight is 0.
class UnknownRecommender : public Error
{
public:
  using Error::Error;
};

class NoUsableRecommendations : public Error
{
public:
  using Error::Error;
};

/// Empty reputation sample; callers fall back to the trust threshold.
class NoReputation : public Error
{
public:
  using Error::Error;
};

class EmptySample : public Error
{
public:
  using Error::Error;
};

class DuplicateKey : public Error
{
public:
  using Error::Error;
};

/// Invalid scenario or model parameters. `field()` names the offending entry,
/// e.g. "agents[2].id" or "params.k".
class ConfigError : public Error
{
public:
  ConfigError(std::string field, const std::string &message)
    : Error(field + ": " + message)
    , field_(std::move(field))
  {}

  const std::string &field() const noexcept
  {
    return field_;
  }

private:
  std::string field_;
};

/// File could not be read or written.
class IoError : public Error
{
public:
  using Error::Error;
};

/// Malformed trace file line (1-based `line()`).
class TraceParseError : public Error
{
public:
  TraceParseError(std::size_t line, const std::string &message)
    : Error("line " + std::to_string(line) + ": " + message)
    , line_(line)
  {}

  std::size_t line() const noexcept
  {
    return line_;
  }

private:
  std::size_t line_;
};

}  // namespace trustnet
