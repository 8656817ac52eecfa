#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gxw/sdf.hpp"
#include "gxw/spec.hpp"

namespace gxw {

/// A controller under construction: resolution parameters are still unknown
/// and bookkeeping for wiring and traceability is attached.
struct PartialSystem {
  ActorSystem sys;
  /// output variable -> ordered sub-spec indices (into spec.subs) writing it
  std::map<std::string, std::vector<int>> map_out;
  /// sub-spec label -> ids of the actors created for it
  std::map<std::string, std::set<std::string>> provenance;
  std::vector<std::string> warnings;
};

/// External I/O ports, high-level controllers, resolution actors and their
/// wiring to the external outputs.
PartialSystem build_skeleton(const GxwSpec& spec);

/// Trigger monitors and OR gates for P1/P2/P3.
void wire_input_parts(PartialSystem& ps, const GxwSpec& spec);

/// Release monitors, phase adjustment controllers, AND gates over resolution
/// outputs, and the release OR for P2.
void wire_release_parts(PartialSystem& ps, const GxwSpec& spec);

/// Monitors for P4, wired through an OR gate to the resolution actor.
void wire_p4(PartialSystem& ps, const GxwSpec& spec);

/// All construction steps in order.
PartialSystem build_controller(const GxwSpec& spec);

/// Optimizations: merges duplicate monitors, replaces depth-0 monitors by
/// combinational circuits, and elides single-input OR/AND gates. Behavior is
/// unchanged; applying it twice equals applying it once.
void share_monitors(PartialSystem& ps);

}  // namespace gxw
