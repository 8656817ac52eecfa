#include "gxw/netlist.hpp"

#include <json.hpp>

#include "gxw/blocks.hpp"
#include "gxw/errors.hpp"

namespace gxw {

using nlohmann::json;

namespace {

json mealy_to_json(const MealyMachine& m) {
  MealyTable tbl = m.enumerate_table();
  json jm;
  jm["vars"] = json::array();
  for (const auto& v : m.vars) jm["vars"].push_back({{"name", v.name}, {"tri", v.three_valued}});
  jm["init"] = json::array();
  for (bool b : m.initial_state()) jm["init"].push_back(b ? 1 : 0);
  jm["inputs"] = m.inputs;
  jm["outputs"] = tbl.output_ports;
  json states = json::array();
  for (const auto& s : tbl.states) {
    std::string bits;
    for (bool b : s) bits += b ? '1' : '0';
    states.push_back(bits);
  }
  json rows = json::array();
  size_t nmask = 1u << tbl.num_inputs;
  for (size_t s = 0; s < tbl.states.size(); ++s)
    for (size_t mask = 0; mask < nmask; ++mask) {
      size_t row = s * nmask + mask;
      json outs = json::array();
      for (PortValue v : tbl.outputs[row]) outs.push_back(port_value_str(v));
      rows.push_back({{"state", s}, {"in", mask}, {"out", outs}, {"next", tbl.next[row]}});
    }
  jm["table"] = {{"states", states}, {"rows", rows}};
  return jm;
}

MealyMachine mealy_from_json(const json& jm) {
  std::vector<StateVar> vars;
  for (const auto& v : jm.at("vars")) vars.push_back({v.at("name"), v.at("tri")});
  std::vector<std::string> inputs = jm.at("inputs").get<std::vector<std::string>>();
  MealyTable tbl;
  tbl.num_inputs = static_cast<int>(inputs.size());
  tbl.output_ports = jm.at("outputs").get<std::vector<std::string>>();
  for (const auto& s : jm.at("table").at("states")) {
    std::string bits = s.get<std::string>();
    std::vector<bool> st;
    for (char c : bits) st.push_back(c == '1');
    tbl.states.push_back(st);
  }
  size_t nmask = 1u << tbl.num_inputs;
  tbl.outputs.resize(tbl.states.size() * nmask);
  tbl.next.resize(tbl.states.size() * nmask);
  for (const auto& r : jm.at("table").at("rows")) {
    size_t row = r.at("state").get<size_t>() * nmask + r.at("in").get<size_t>();
    std::vector<PortValue> outs;
    for (const auto& o : r.at("out")) {
      std::string s = o.get<std::string>();
      outs.push_back(s == "T"   ? PortValue::True
                     : s == "F" ? PortValue::False
                                : PortValue::Dash);
    }
    tbl.outputs[row] = std::move(outs);
    tbl.next[row] = r.at("next").get<uint32_t>();
  }
  return MealyMachine::from_table(std::move(vars), std::move(inputs), std::move(tbl));
}

std::string ref_str(const ActorSystem& sys, const PortRef& p) { return sys.port_name(p); }

PortRef parse_ref(const ActorSystem& sys, const std::string& s) {
  if (!s.empty() && s[0] == '$') return PortRef{-1, s.substr(1)};
  auto dot = s.rfind('.');
  if (dot == std::string::npos) throw ParseError("bad port reference: " + s);
  std::string id = s.substr(0, dot);
  int ai = sys.actor_index(id);
  if (ai < 0) throw ParseError("wire references unknown actor: " + id);
  return PortRef{ai, s.substr(dot + 1)};
}

}  // namespace

std::string export_netlist_json(const ActorSystem& sys) {
  json j;
  j["inputs"] = sys.ext_inputs;
  j["outputs"] = sys.ext_outputs;
  j["actors"] = json::array();
  for (const auto& a : sys.actors) {
    json ja;
    ja["id"] = a.id;
    ja["kind"] = actor_kind_name(a.kind);
    ja["provenance"] = a.provenance;
    json params = json::object();
    if (a.res_param) params["A"] = *a.res_param;
    if (a.kind == ActorKind::Res) params["n"] = a.inputs.size();
    if (a.kind == ActorKind::Or || a.kind == ActorKind::And) params["n"] = a.inputs.size();
    if (a.kind == ActorKind::Monitor || a.kind == ActorKind::P4Monitor) {
      params["clause"] = a.clause;
      params["i"] = a.param_i;
    }
    if (a.kind == ActorKind::Theta) params["h"] = a.param_i;
    ja["params"] = params;
    if (a.machine) ja["mealy"] = mealy_to_json(*a.machine);
    j["actors"].push_back(std::move(ja));
  }
  j["wires"] = json::array();
  for (const auto& w : sys.wires)
    j["wires"].push_back({{"from", ref_str(sys, w.from)}, {"to", ref_str(sys, w.to)}});
  return j.dump(2) + "\n";
}

ActorSystem import_netlist_json(const std::string& json_text) {
  json j = json::parse(json_text);
  ActorSystem sys;
  sys.ext_inputs = j.at("inputs").get<std::vector<std::string>>();
  sys.ext_outputs = j.at("outputs").get<std::vector<std::string>>();
  for (const auto& ja : j.at("actors")) {
    std::string id = ja.at("id");
    ActorKind kind = actor_kind_from_name(ja.at("kind"));
    const json& params = ja.at("params");
    Actor a;
    switch (kind) {
      case ActorKind::IfTB:
      case ActorKind::InUB:
      case ActorKind::TrUB:
        a = make_highlevel(kind, id);
        break;
      case ActorKind::Res:
        a = make_res(params.at("n").get<int>(), id);
        break;
      case ActorKind::Not:
      case ActorKind::ConstFalse:
      case ActorKind::ConstTrue:
        a = make_gate(kind, 1, id);
        break;
      case ActorKind::Or:
      case ActorKind::And:
        a = make_gate(kind, params.at("n").get<int>(), id);
        break;
      case ActorKind::Monitor:
        a = make_monitor_actor(parse_clause(params.at("clause"), VarTag::Input),
                               params.at("i").get<int>(), id);
        break;
      case ActorKind::P4Monitor:
        a = make_p4_monitor_actor(parse_clause(params.at("clause"), VarTag::Input),
                                  params.at("i").get<int>(), id);
        break;
      case ActorKind::Theta:
        a = make_theta_actor(params.at("h").get<int>(), id);
        break;
      case ActorKind::Mealy: {
        a.id = id;
        a.kind = kind;
        MealyMachine m = mealy_from_json(ja.at("mealy"));
        a.inputs = m.inputs;
        a.outputs = m.output_ports();
        a.machine = std::move(m);
        break;
      }
    }
    if (params.contains("A")) a.res_param = params.at("A").get<bool>();
    a.provenance = ja.at("provenance").get<std::vector<std::string>>();
    sys.actors.push_back(std::move(a));
  }
  for (const auto& jw : j.at("wires")) {
    Wire w;
    w.from = parse_ref(sys, jw.at("from"));
    w.to = parse_ref(sys, jw.at("to"));
    sys.wires.push_back(w);
  }
  return sys;
}

std::string export_dot(const ActorSystem& sys) {
  std::string out = "digraph controller {\n  rankdir=LR;\n";
  for (const auto& i : sys.ext_inputs)
    out += "  \"$" + i + "\" [shape=plaintext];\n";
  for (const auto& o : sys.ext_outputs)
    out += "  \"$" + o + "\" [shape=plaintext];\n";
  for (const auto& a : sys.actors) {
    std::string label = actor_kind_name(a.kind);
    if (!a.provenance.empty()) {
      label += " (";
      for (size_t i = 0; i < a.provenance.size(); ++i)
        label += (i ? "," : "") + a.provenance[i];
      label += ")";
    }
    out += "  \"" + a.id + "\" [shape=box,label=\"" + label + "\"];\n";
  }
  auto node = [&](const PortRef& p) {
    return p.external() ? "\"$" + p.port + "\"" : "\"" + sys.actors[p.actor].id + "\"";
  };
  for (const auto& w : sys.wires) {
    out += "  " + node(w.from) + " -> " + node(w.to);
    std::string lbl;
    if (!w.from.external()) lbl += w.from.port;
    if (!w.to.external()) lbl += (lbl.empty() ? "" : "/") + w.to.port;
    if (!lbl.empty()) out += " [label=\"" + lbl + "\"]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace gxw
