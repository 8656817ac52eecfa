#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gxw/mealy.hpp"

namespace gxw {

enum class ActorKind {
  IfTB,
  InUB,
  TrUB,
  Res,
  Not,
  Or,
  And,
  ConstFalse,
  ConstTrue,
  Monitor,
  P4Monitor,
  Theta,
  Mealy  // generic table machine
};

std::string actor_kind_name(ActorKind k);
ActorKind actor_kind_from_name(const std::string& s);

/// An actor instance. Gates (Not/Or/And/Res/Const*) are stateless and have
/// no machine; the other kinds carry a Mealy machine. Monitors also keep the
/// clause they watch so a netlist can be rebuilt from constructive data.
struct Actor {
  std::string id;
  ActorKind kind = ActorKind::Not;
  std::vector<std::string> provenance;  // labels of the sub-specs that created it
  std::vector<std::string> inputs;      // port names
  std::vector<std::string> outputs;
  std::optional<MealyMachine> machine;
  std::optional<bool> res_param;  // Res only; unknown until synthesized
  std::string clause;             // Monitor / P4Monitor: clause text
  int param_i = 0;                // Monitor / P4Monitor: depth; Theta: h

  bool stateless() const;
};

/// Port reference: actor port or external port (actor == -1).
struct PortRef {
  int actor = -1;
  std::string port;

  bool external() const { return actor < 0; }
  auto operator<=>(const PortRef&) const = default;
};

struct Wire {
  PortRef from;
  PortRef to;
  auto operator<=>(const Wire&) const = default;
};

/// Element of an evaluation ordering: an actor or a wire.
struct XiElem {
  bool is_wire = false;
  int index = 0;  // actor index or wire index
};

/// Precompiled execution plan: ports mapped to dense slots so a step is a
/// single pass over integer indices.
struct CompiledPlan {
  struct Op {
    bool is_wire = false;
    int src = 0, dst = 0;           // wire
    int actor = 0;                  // actor index
    std::vector<int> ins, outs;     // actor port slots
  };
  int num_slots = 0;
  std::vector<Op> ops;
  std::vector<int> ext_in_slots;   // by ext_inputs position
  std::vector<int> ext_out_slots;  // by ext_outputs position
};

/// A synchronous-dataflow actor network. Immutable once built; the cached
/// evaluation ordering is computed on demand.
struct ActorSystem {
  std::vector<std::string> ext_inputs;
  std::vector<std::string> ext_outputs;
  std::vector<Actor> actors;
  std::vector<Wire> wires;

  mutable std::optional<std::vector<XiElem>> order_cache;
  mutable std::shared_ptr<const CompiledPlan> plan_cache;

  int actor_index(const std::string& id) const;  // -1 when absent
  const Actor& actor(const std::string& id) const;
  std::string port_name(const PortRef& p) const;

  bool structurally_equal(const ActorSystem& other) const;
};

/// Computes (and caches) the evaluation ordering. Throws CycleError with one
/// strongly connected component as witness, or UnwiredPortError.
const std::vector<XiElem>& evaluation_order(const ActorSystem& sys);

/// Mutable simulation state: one state vector per actor.
struct SimState {
  std::vector<std::vector<bool>> actor_state;
};

SimState initial_state(const ActorSystem& sys);

struct StepStats {
  std::map<std::string, int> actor_fires;
  int wire_transfers = 0;
};

/// One synchronous cycle following the standard SDF semantics: inputs are
/// copied to the external input ports, values propagate along the evaluation
/// ordering, each actor fires exactly once, and every port is conceptually
/// reset afterwards.
std::map<std::string, bool> step(const ActorSystem& sys, SimState& state,
                                 const std::map<std::string, bool>& inputs,
                                 StepStats* stats = nullptr);

/// Runs a whole input trace; outputs[t] corresponds to inputs[t].
std::vector<std::map<std::string, bool>> run(const ActorSystem& sys,
                                             const std::vector<std::map<std::string, bool>>& ins);

/// Builds the explicit product Mealy machine of the system. Small-instance
/// oracle; throws StateExplosionError above the guard.
MealyMachine compose_to_mealy(const ActorSystem& sys, size_t max_states = (1u << 20));

}  // namespace gxw
