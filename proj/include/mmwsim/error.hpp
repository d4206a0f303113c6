#pragma once

#include <stdexcept>
#include <string>

namespace mmwsim {

// Base for every error raised by the simulator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter struct violated one of its invariants.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class SchedulingError : public Error {
 public:
  using Error::Error;
};

// Empty or otherwise unusable sample set handed to a metric.
class MetricError : public Error {
 public:
  using Error::Error;
};

// Configuration file problems. `where` carries "line N" or a field path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace mmwsim
