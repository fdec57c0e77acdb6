#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace agemap
{

// Malformed or schema-violating run configuration.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// A mapping that breaks the one-tile-per-cluster or tile capacity rule.
class ConstraintError : public std::runtime_error
{
  public:
    ConstraintError(const std::string& what, std::vector<std::string> violations)
        : std::runtime_error(what), violations_(std::move(violations))
    {
    }

    const std::vector<std::string>& violations() const { return violations_; }

  private:
    std::vector<std::string> violations_;
};

// The instance cannot be mapped or calibrated at all.
class InfeasibleError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Exhaustive enumeration refused because the search space is too large.
class GuardError : public std::runtime_error
{
  public:
    GuardError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate)
    {
    }

    double estimate() const { return estimate_; }

  private:
    double estimate_;
};

} // namespace agemap
