#include "gxw/synthesis.hpp"

#include <algorithm>

#include "gxw/blocks.hpp"
#include "gxw/errors.hpp"
#include "gxw/util.hpp"

namespace gxw {

namespace {

int add_actor(PartialSystem& ps, Actor a, const std::string& label = "") {
  if (!label.empty()) {
    a.provenance.push_back(label);
    ps.provenance[label].insert(a.id);
  }
  ps.sys.actors.push_back(std::move(a));
  return static_cast<int>(ps.sys.actors.size()) - 1;
}

void wire(PartialSystem& ps, PortRef from, PortRef to) {
  ps.sys.wires.push_back({std::move(from), std::move(to)});
}

PortRef ext(const std::string& name) { return PortRef{-1, name}; }
PortRef port(int actor, const std::string& p) { return PortRef{actor, p}; }

ActorKind highlevel_kind(PatternId p) {
  switch (p) {
    case PatternId::P1:
      return ActorKind::InUB;
    case PatternId::P2:
      return ActorKind::TrUB;
    case PatternId::P3:
      return ActorKind::IfTB;
    default:
      throw Error("no high-level controller for " + pattern_name(p));
  }
}

std::string hl_id(PatternId p, int m) {
  switch (p) {
    case PatternId::P1:
      return "inub_" + std::to_string(m);
    case PatternId::P2:
      return "trub_" + std::to_string(m);
    default:
      return "iftb_" + std::to_string(m);
  }
}

// Wires a monitor's input ports from the external inputs it watches.
void wire_monitor_inputs(PartialSystem& ps, int mon_idx) {
  const Actor& a = ps.sys.actors[mon_idx];
  for (const auto& v : a.inputs) wire(ps, ext(v), port(mon_idx, v));
}

}  // namespace

PartialSystem build_skeleton(const GxwSpec& spec) {
  PartialSystem ps;
  ps.sys.ext_inputs = spec.inputs;
  ps.sys.ext_outputs = spec.outputs;

  for (size_t k = 0; k < spec.subs.size(); ++k) {
    const SubSpec& s = spec.subs[k];
    int m = static_cast<int>(k) + 1;
    PatternId p = s.pattern();
    if (p == PatternId::P1 || p == PatternId::P2 || p == PatternId::P3)
      add_actor(ps, make_highlevel(highlevel_kind(p), hl_id(p, m)), s.label);
    if (p != PatternId::P5) ps.map_out[s.parts.out_var].push_back(static_cast<int>(k));
  }

  std::map<std::string, int> res_index;
  for (const auto& v : spec.outputs) {
    auto it = ps.map_out.find(v);
    if (it == ps.map_out.end() || it->second.empty()) {
      // declared but unused output: drive it with a constant instead of a
      // resolution actor
      int cf = add_actor(ps, make_gate(ActorKind::ConstFalse, 0, "constf_" + v));
      wire(ps, port(cf, "out"), ext(v));
      ps.warnings.push_back("output '" + v + "' is not written by any sub-specification; "
                            "wired to constant false");
      continue;
    }
    int ri = add_actor(ps, make_res(static_cast<int>(it->second.size()), "res_" + v));
    res_index[v] = ri;
    wire(ps, port(ri, "output"), ext(v));
  }

  for (size_t k = 0; k < spec.subs.size(); ++k) {
    const SubSpec& s = spec.subs[k];
    PatternId p = s.pattern();
    if (p != PatternId::P1 && p != PatternId::P2 && p != PatternId::P3) continue;
    int m = static_cast<int>(k) + 1;
    const auto& writers = ps.map_out.at(s.parts.out_var);
    int ind = static_cast<int>(std::find(writers.begin(), writers.end(), static_cast<int>(k)) -
                               writers.begin());
    int hl = ps.sys.actor_index(hl_id(p, m));
    int res = res_index.at(s.parts.out_var);
    std::string res_port = "input" + std::to_string(ind + 1);
    if (!s.parts.out_positive) {
      int ng = add_actor(ps, make_gate(ActorKind::Not, 1, "not_" + std::to_string(m)), s.label);
      wire(ps, port(hl, "output"), port(ng, "in"));
      wire(ps, port(ng, "out"), port(res, res_port));
    } else {
      wire(ps, port(hl, "output"), port(res, res_port));
    }
  }
  return ps;
}

void wire_input_parts(PartialSystem& ps, const GxwSpec& spec) {
  for (size_t k = 0; k < spec.subs.size(); ++k) {
    const SubSpec& s = spec.subs[k];
    PatternId p = s.pattern();
    if (p != PatternId::P1 && p != PatternId::P2 && p != PatternId::P3) continue;
    int m = static_cast<int>(k) + 1;
    int org = add_actor(
        ps, make_gate(ActorKind::Or, static_cast<int>(s.parts.input_clauses.size()),
                      "or_t_" + std::to_string(m)),
        s.label);
    for (size_t ci = 0; ci < s.parts.input_clauses.size(); ++ci) {
      const DnfClause& c = s.parts.input_clauses[ci];
      // P2/P3 clauses are padded to i; P1 monitors confirm at their natural depth
      int depth = p == PatternId::P1 ? c.depth : s.parts.i;
      int mon = add_actor(
          ps, make_monitor_actor(c, depth, "mon_" + std::to_string(m) + "_t" + std::to_string(ci)),
          s.label);
      wire_monitor_inputs(ps, mon);
      wire(ps, port(mon, "out"), port(org, "in" + std::to_string(ci + 1)));
    }
    int hl = ps.sys.actor_index(hl_id(p, m));
    wire(ps, port(org, "out"), port(hl, "input"));
  }
}

void wire_release_parts(PartialSystem& ps, const GxwSpec& spec) {
  for (size_t k = 0; k < spec.subs.size(); ++k) {
    const SubSpec& s = spec.subs[k];
    if (s.pattern() != PatternId::P2) continue;
    int m = static_cast<int>(k) + 1;
    int hl = ps.sys.actor_index(hl_id(PatternId::P2, m));
    size_t arity = s.parts.release_in.size() + s.parts.release_out.size();
    if (arity == 0) {
      // release never fires; the lock, once set, holds forever
      int cf = add_actor(ps, make_gate(ActorKind::ConstFalse, 0, "constf_r_" + std::to_string(m)),
                         s.label);
      wire(ps, port(cf, "out"), port(hl, "release"));
      continue;
    }
    int org = add_actor(ps,
                        make_gate(ActorKind::Or, static_cast<int>(arity),
                                  "or_r_" + std::to_string(m)),
                        s.label);
    size_t pos = 0;
    int trig_or = ps.sys.actor_index("or_t_" + std::to_string(m));
    for (size_t ci = 0; ci < s.parts.release_in.size(); ++ci, ++pos) {
      const DnfClause& c = s.parts.release_in[ci];
      int h = c.depth;
      int mon = add_actor(
          ps, make_monitor_actor(c, h, "mon_" + std::to_string(m) + "_r" + std::to_string(ci)),
          s.label);
      wire_monitor_inputs(ps, mon);
      if (h == 0) {
        wire(ps, port(mon, "out"), port(org, "in" + std::to_string(pos + 1)));
      } else {
        // the trigger OR arms the mask so that stale release observations
        // cannot leak into the fresh obligation
        int th = add_actor(
            ps, make_theta_actor(h, "theta_" + std::to_string(m) + "_r" + std::to_string(ci)),
            s.label);
        wire(ps, port(trig_or, "out"), port(th, "set"));
        wire(ps, port(mon, "out"), port(th, "in"));
        wire(ps, port(th, "out"), port(org, "in" + std::to_string(pos + 1)));
      }
    }
    for (size_t ci = 0; ci < s.parts.release_out.size(); ++ci, ++pos) {
      const DnfClause& c = s.parts.release_out[ci];
      int andg = add_actor(ps,
                           make_gate(ActorKind::And, static_cast<int>(c.literals.size()),
                                     "and_" + std::to_string(m) + "_r" + std::to_string(ci)),
                           s.label);
      for (size_t li = 0; li < c.literals.size(); ++li) {
        const Literal& l = c.literals[li];
        int res = ps.sys.actor_index("res_" + l.var);
        if (res < 0) throw Error("release references output without resolution actor: " + l.var);
        if (!l.positive) {
          std::string nid = "not_res_" + l.var;
          int ng = ps.sys.actor_index(nid);
          if (ng < 0) {
            ng = add_actor(ps, make_gate(ActorKind::Not, 1, nid), s.label);
            wire(ps, port(res, "output"), port(ng, "in"));
          } else {
            ps.provenance[s.label].insert(nid);
          }
          wire(ps, port(ng, "out"), port(andg, "in" + std::to_string(li + 1)));
        } else {
          wire(ps, port(res, "output"), port(andg, "in" + std::to_string(li + 1)));
        }
      }
      wire(ps, port(andg, "out"), port(org, "in" + std::to_string(pos + 1)));
    }
    wire(ps, port(org, "out"), port(hl, "release"));
  }
}

void wire_p4(PartialSystem& ps, const GxwSpec& spec) {
  for (size_t k = 0; k < spec.subs.size(); ++k) {
    const SubSpec& s = spec.subs[k];
    if (s.pattern() != PatternId::P4) continue;
    int m = static_cast<int>(k) + 1;
    int org = add_actor(ps,
                        make_gate(ActorKind::Or, static_cast<int>(s.parts.input_clauses.size()),
                                  "or_t_" + std::to_string(m)),
                        s.label);
    for (size_t ci = 0; ci < s.parts.input_clauses.size(); ++ci) {
      int mon = add_actor(ps,
                          make_p4_monitor_actor(
                              s.parts.input_clauses[ci], s.parts.i,
                              "p4mon_" + std::to_string(m) + "_" + std::to_string(ci)),
                          s.label);
      wire_monitor_inputs(ps, mon);
      wire(ps, port(mon, "out"), port(org, "in" + std::to_string(ci + 1)));
    }
    const auto& writers = ps.map_out.at(s.parts.out_var);
    int ind = static_cast<int>(std::find(writers.begin(), writers.end(), static_cast<int>(k)) -
                               writers.begin());
    int res = ps.sys.actor_index("res_" + s.parts.out_var);
    std::string res_port = "input" + std::to_string(ind + 1);
    if (!s.parts.out_positive) {
      int ng = add_actor(ps, make_gate(ActorKind::Not, 1, "not_" + std::to_string(m)), s.label);
      wire(ps, port(org, "out"), port(ng, "in"));
      wire(ps, port(ng, "out"), port(res, res_port));
    } else {
      wire(ps, port(org, "out"), port(res, res_port));
    }
  }
}

PartialSystem build_controller(const GxwSpec& spec) {
  PartialSystem ps = build_skeleton(spec);
  wire_input_parts(ps, spec);
  wire_release_parts(ps, spec);
  wire_p4(ps, spec);
  return ps;
}

namespace {

// Rebuilds the system without the given actors, remapping wire indices.
// Wires touching a dead actor must have been redirected already.
void remove_actors(PartialSystem& ps, const std::set<int>& dead) {
  if (dead.empty()) return;
  ActorSystem out;
  out.ext_inputs = ps.sys.ext_inputs;
  out.ext_outputs = ps.sys.ext_outputs;
  std::vector<int> remap(ps.sys.actors.size(), -1);
  for (size_t i = 0; i < ps.sys.actors.size(); ++i) {
    if (dead.count(static_cast<int>(i))) continue;
    remap[i] = static_cast<int>(out.actors.size());
    out.actors.push_back(ps.sys.actors[i]);
  }
  for (const auto& w : ps.sys.wires) {
    if ((!w.from.external() && dead.count(w.from.actor)) ||
        (!w.to.external() && dead.count(w.to.actor)))
      continue;
    Wire nw = w;
    if (!nw.from.external()) nw.from.actor = remap[nw.from.actor];
    if (!nw.to.external()) nw.to.actor = remap[nw.to.actor];
    out.wires.push_back(nw);
  }
  for (auto& [label, ids] : ps.provenance) {
    std::set<std::string> kept;
    for (const auto& id : ids)
      if (out.actor_index(id) >= 0) kept.insert(id);
    ids = std::move(kept);
  }
  ps.sys = std::move(out);
  ps.sys.order_cache.reset();
  ps.sys.plan_cache.reset();
}

// Redirects every wire reading `from_old` to read `from_new`.
void redirect_source(ActorSystem& sys, const PortRef& from_old, const PortRef& from_new) {
  for (auto& w : sys.wires)
    if (w.from == from_old) w.from = from_new;
}

// Source feeding a single-input gate (its one incoming wire).
PortRef incoming_source(const ActorSystem& sys, int actor, const std::string& p) {
  for (const auto& w : sys.wires)
    if (!w.to.external() && w.to.actor == actor && w.to.port == p) return w.from;
  throw Error("no incoming wire for " + sys.actors[actor].id + "." + p);
}

}  // namespace

void share_monitors(PartialSystem& ps) {
  // 1. merge monitors with the same clause, alignment and kind; their input
  //    wiring is by variable name and therefore identical
  {
    std::map<std::string, int> seen;  // signature -> surviving actor index
    std::set<int> dead;
    for (size_t i = 0; i < ps.sys.actors.size(); ++i) {
      Actor& a = ps.sys.actors[i];
      if (a.kind != ActorKind::Monitor && a.kind != ActorKind::P4Monitor) continue;
      std::string sig = actor_kind_name(a.kind) + "|" + std::to_string(a.param_i) + "|" + a.clause;
      auto it = seen.find(sig);
      if (it == seen.end()) {
        seen[sig] = static_cast<int>(i);
        continue;
      }
      Actor& keep = ps.sys.actors[it->second];
      for (const auto& lb : a.provenance) {
        if (std::find(keep.provenance.begin(), keep.provenance.end(), lb) ==
            keep.provenance.end())
          keep.provenance.push_back(lb);
        ps.provenance[lb].insert(keep.id);
      }
      redirect_source(ps.sys, port(static_cast<int>(i), "out"), port(it->second, "out"));
      // drop the duplicate's input wires along with the actor
      std::vector<Wire> kept_wires;
      for (const auto& w : ps.sys.wires)
        if (w.to.external() || w.to.actor != static_cast<int>(i)) kept_wires.push_back(w);
      ps.sys.wires = std::move(kept_wires);
      dead.insert(static_cast<int>(i));
    }
    remove_actors(ps, dead);
  }

  // 2. depth-0 monitors become combinational circuits
  {
    std::set<int> dead;
    std::vector<std::pair<PortRef, PortRef>> redirects;
    size_t n = ps.sys.actors.size();
    for (size_t i = 0; i < n; ++i) {
      if ((ps.sys.actors[i].kind != ActorKind::Monitor &&
           ps.sys.actors[i].kind != ActorKind::P4Monitor) ||
          ps.sys.actors[i].param_i != 0)
        continue;
      const std::string mon_id = ps.sys.actors[i].id;
      const std::vector<std::string> prov = ps.sys.actors[i].provenance;
      DnfClause c = parse_clause(ps.sys.actors[i].clause, VarTag::Input);
      auto adopt = [&](int idx) {
        for (const auto& lb : prov) {
          Actor& g = ps.sys.actors[idx];
          if (std::find(g.provenance.begin(), g.provenance.end(), lb) == g.provenance.end())
            g.provenance.push_back(lb);
          ps.provenance[lb].insert(g.id);
        }
      };
      auto not_gate_for = [&](const std::string& var) {
        std::string nid = "not_in_" + var;
        int ng = ps.sys.actor_index(nid);
        if (ng < 0) {
          ng = add_actor(ps, make_gate(ActorKind::Not, 1, nid));
          wire(ps, ext(var), port(ng, "in"));
        }
        adopt(ng);
        return ng;
      };
      PortRef src;
      if (c.literals.empty()) {
        int ct = add_actor(ps, make_gate(ActorKind::ConstTrue, 0, "constt_" + mon_id));
        adopt(ct);
        src = port(ct, "out");
      } else if (c.literals.size() == 1) {
        const Literal& l = c.literals[0];
        src = l.positive ? ext(l.var) : port(not_gate_for(l.var), "out");
      } else {
        int andg = add_actor(ps, make_gate(ActorKind::And, static_cast<int>(c.literals.size()),
                                           "and_" + mon_id));
        adopt(andg);
        for (size_t li = 0; li < c.literals.size(); ++li) {
          const Literal& l = c.literals[li];
          PortRef lit_src = l.positive ? ext(l.var) : port(not_gate_for(l.var), "out");
          wire(ps, lit_src, port(andg, "in" + std::to_string(li + 1)));
        }
        src = port(andg, "out");
      }
      redirects.emplace_back(port(static_cast<int>(i), "out"), src);
      std::vector<Wire> kept_wires;
      for (const auto& w : ps.sys.wires)
        if (w.to.external() || w.to.actor != static_cast<int>(i)) kept_wires.push_back(w);
      ps.sys.wires = std::move(kept_wires);
      dead.insert(static_cast<int>(i));
    }
    for (const auto& [oldp, newp] : redirects) redirect_source(ps.sys, oldp, newp);
    remove_actors(ps, dead);
  }

  // 3. single-input OR/AND gates are wire-throughs
  for (;;) {
    std::set<int> dead;
    for (size_t i = 0; i < ps.sys.actors.size(); ++i) {
      const Actor& a = ps.sys.actors[i];
      if ((a.kind != ActorKind::Or && a.kind != ActorKind::And) || a.inputs.size() != 1)
        continue;
      PortRef src = incoming_source(ps.sys, static_cast<int>(i), a.inputs[0]);
      if (!src.external() && dead.count(src.actor)) continue;  // handle next round
      redirect_source(ps.sys, port(static_cast<int>(i), "out"), src);
      std::vector<Wire> kept_wires;
      for (const auto& w : ps.sys.wires)
        if (w.to.external() || w.to.actor != static_cast<int>(i)) kept_wires.push_back(w);
      ps.sys.wires = std::move(kept_wires);
      dead.insert(static_cast<int>(i));
    }
    if (dead.empty()) break;
    remove_actors(ps, dead);
  }
  ps.sys.order_cache.reset();
  ps.sys.plan_cache.reset();
}

}  // namespace gxw
