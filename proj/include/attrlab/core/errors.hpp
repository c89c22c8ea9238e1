#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace attrlab {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct DomainMismatch : Error {
  using Error::Error;
};

// Requested time point lies outside the admissible set Sigma.
struct NotInSigma : Error {
  using Error::Error;
};

// Sigma (or its truncation) holds no point of the requested depth.
struct NoDeepTime : Error {
  NoDeepTime(double requested, double max_available)
      : Error("no admissible time of depth " + std::to_string(requested) +
              " (max available " + std::to_string(max_available) + ")"),
        requested_depth(requested),
        max_depth(max_available) {}
  double requested_depth;
  double max_depth;
};

struct TimeOutsideCone : Error {
  using Error::Error;
};

struct NonFiniteState : Error {
  NonFiniteState(const std::string& what, long step_index)
      : Error(what + " (step " + std::to_string(step_index) + ")"), step(step_index) {}
  long step;
};

struct NoConvergence : Error {
  NoConvergence(const std::string& what, std::vector<double> residual_history)
      : Error(what), history(std::move(residual_history)) {}
  std::vector<double> history;
};

struct EmptyRegion : Error {
  using Error::Error;
};

struct NotSemiInvariant : Error {
  using Error::Error;
};

struct NonPeriodicAxis : Error {
  using Error::Error;
};

struct DirectionNotInterior : Error {
  using Error::Error;
};

struct NotOnAttractor : Error {
  using Error::Error;
};

struct UnsupportedNonlinearity : Error {
  using Error::Error;
};

struct EmptyProfile : Error {
  using Error::Error;
};

// Bad experiment configuration; carries the offending key.
struct ConfigError : Error {
  ConfigError(const std::string& what, std::string offending_key)
      : Error(what), key(std::move(offending_key)) {}
  std::string key;
};

}  // namespace attrlab
