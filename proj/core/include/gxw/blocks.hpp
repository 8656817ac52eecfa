#pragma once

#include "gxw/dnf.hpp"
#include "gxw/sdf.hpp"

namespace gxw {

/// High-level controllers for the skeleton specifications:
///   IfTB  {input -> output}          G(input -> output)
///   InUB  {input -> output}          output W input
///   TrUB  {input, release -> output} G(input -> (output W release))
/// Outputs are three-valued; dash means the output is unconstrained.
Actor make_highlevel(ActorKind kind, const std::string& id);

/// Monitor for one clause: realizes G(chi <-> X^i out) together with
/// out = false on the first i cycles. One three-valued state variable per
/// input variable and history slot; the update is a left shift.
MealyMachine syn_monitor(const DnfClause& c, int i);
Actor make_monitor_actor(const DnfClause& c, int i, const std::string& id);

/// Monitor variant for the iff pattern: the output port is dash for the
/// first i cycles and Boolean afterwards, tracking the clause shifted by i.
MealyMachine syn_p4_monitor(const DnfClause& c, int i);
Actor make_p4_monitor_actor(const DnfClause& c, int i, const std::string& id);

/// Phase adjustment controller: out is false until the first set, forced
/// false for h cycles from every set pulse, and mirrors `in` otherwise.
/// A new set during masking restarts the countdown.
MealyMachine make_theta(int h);
Actor make_theta_actor(int h, const std::string& id);

/// Resolution actor with n inputs; parameter A fills the all-dash case.
Actor make_res(int n, const std::string& id);

/// Stateless gates. Arity applies to Or/And.
Actor make_gate(ActorKind kind, int arity, const std::string& id);

}  // namespace gxw
