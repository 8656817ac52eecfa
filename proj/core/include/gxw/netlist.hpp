#pragma once

#include <string>

#include "gxw/sdf.hpp"

namespace gxw {

/// JSON netlist schema:
///   {inputs:[...], outputs:[...],
///    actors:[{id, kind, provenance, params:{A?, clause?, i?, h?},
///             mealy?:{vars, init, inputs, outputs, table}}],
///    wires:[{from:"actor.port"|"$extport", to:...}]}
/// Import of export is structurally equal to the original system.
std::string export_netlist_json(const ActorSystem& sys);
ActorSystem import_netlist_json(const std::string& json_text);

/// Graphviz dot: one node per actor labeled kind+provenance, one edge per wire.
std::string export_dot(const ActorSystem& sys);

}  // namespace gxw
