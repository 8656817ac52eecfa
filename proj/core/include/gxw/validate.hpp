#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gxw/sdf.hpp"
#include "gxw/spec.hpp"

namespace gxw {

/// Finite trace: a total assignment per cycle to the listed variables.
struct Trace {
  std::vector<std::string> vars;
  std::vector<std::vector<bool>> cells;  // [cycle][var index]

  size_t length() const { return cells.size(); }
  int var_index(const std::string& v) const;
  bool at(size_t cycle, const std::string& v) const;
  void set(size_t cycle, const std::string& v, bool val);

  static Trace empty(std::vector<std::string> vars, size_t length);
};

/// CSV with a header row of variable names and one 0/1 row per cycle.
std::string trace_to_csv(const Trace& tr);
Trace trace_from_csv(const std::string& text);

/// Joins input and output traces of equal length.
Trace join_traces(const Trace& inputs, const Trace& outputs);

struct Violation {
  std::string label;  // sub-spec label, or "assume"
  size_t cycle = 0;
  std::string reason;
};

/// Finite-trace checker. P3/P4/P5 and the assumption are checked pointwise
/// wherever their window fits; P1/P2 obligations are tracked as lock
/// intervals with weak-until semantics: a pending obligation at the end of
/// the trace is not a violation, and a release whose window runs past the
/// end of the trace counts as possibly fired.
std::vector<Violation> check_trace(const GxwSpec& spec, const Trace& joint);

/// Uniform per-cycle sampling from the satisfying assignments of the
/// assumption; deterministic for a fixed seed.
Trace random_trace(const GxwSpec& spec, size_t length, uint64_t seed);

/// Environment strategy tree returned for unrealizable instances.
struct CounterStrategyNode {
  std::map<std::string, bool> input;
  std::string conflict;  // non-empty at losing leaves
  /// one branch per consistent controller reply
  std::vector<std::pair<std::map<std::string, bool>, std::shared_ptr<CounterStrategyNode>>>
      branches;
};

struct RealizabilityResult {
  bool realizable = true;
  std::shared_ptr<CounterStrategyNode> counter_strategy;
};

/// Small-instance oracle: explores the game to depth omega. The environment
/// picks inputs, the controller then picks any output consistent with the
/// pending obligations and the invariants; the environment wins by forcing
/// conflicting demands or an invariant violation. Release events count only
/// once their whole window has been observed (the controller cannot look
/// ahead), matching the demands the synthesized structure realizes.
RealizabilityResult brute_force_realizability(const GxwSpec& spec, int omega);

struct EquivalenceResult {
  bool ok = true;
  Trace counterexample;
  std::string reason;
};

/// Simulates the system and checks the joint trace against the
/// specification. Exhaustive over all assumption-respecting input traces of
/// the given depth when feasible, random otherwise.
EquivalenceResult equivalence_check(const ActorSystem& sys, const GxwSpec& spec, int depth,
                                    size_t random_traces = 0, uint64_t seed = 0);

}  // namespace gxw
