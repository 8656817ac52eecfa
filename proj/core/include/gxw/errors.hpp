#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gxw {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
  using Error::Error;
};

/// A formula does not match any of the supported patterns P1..P6.
struct NoMatchError : Error {
  using Error::Error;
};

/// G or W encountered where only propositional / X-only structure is allowed.
struct TemporalOperatorError : Error {
  using Error::Error;
};

/// A release clause mixes input and output variables.
struct MixedClauseError : Error {
  using Error::Error;
};

struct DepthExceededError : Error {
  using Error::Error;
};

/// The wiring of an actor system contains a directed loop.
struct CycleError : Error {
  std::vector<std::string> scc;  // ports forming one strongly connected component
  CycleError(const std::string& what, std::vector<std::string> scc_)
      : Error(what), scc(std::move(scc_)) {}
};

struct UnwiredPortError : Error {
  using Error::Error;
};

/// A resolution actor received true and false in the same cycle.
struct ConflictAtRuntimeError : Error {
  using Error::Error;
};

/// A dash value reached an external output port.
struct DashAtExternalOutputError : Error {
  using Error::Error;
};

struct StateExplosionError : Error {
  using Error::Error;
};

struct InstanceTooLargeError : Error {
  using Error::Error;
};

struct UnsatisfiableAssumptionError : Error {
  using Error::Error;
};

struct InvalidHError : Error {
  using Error::Error;
};

struct UnknownWitnessVariableError : Error {
  using Error::Error;
};

/// A resolution parameter was still unknown when its value was needed.
struct UnresolvedParameterError : Error {
  using Error::Error;
};

}  // namespace gxw
