#include "gxw/sdf.hpp"

#include <algorithm>
#include <set>

#include "gxw/errors.hpp"
#include "gxw/util.hpp"

namespace gxw {

std::string actor_kind_name(ActorKind k) {
  switch (k) {
    case ActorKind::IfTB: return "IfTB";
    case ActorKind::InUB: return "InUB";
    case ActorKind::TrUB: return "TrUB";
    case ActorKind::Res: return "RES";
    case ActorKind::Not: return "NOT";
    case ActorKind::Or: return "OR";
    case ActorKind::And: return "AND";
    case ActorKind::ConstFalse: return "CONST_F";
    case ActorKind::ConstTrue: return "CONST_T";
    case ActorKind::Monitor: return "MON";
    case ActorKind::P4Monitor: return "P4MON";
    case ActorKind::Theta: return "THETA";
    case ActorKind::Mealy: return "MEALY";
  }
  return "?";
}

ActorKind actor_kind_from_name(const std::string& s) {
  static const std::map<std::string, ActorKind> m = {
      {"IfTB", ActorKind::IfTB},       {"InUB", ActorKind::InUB},
      {"TrUB", ActorKind::TrUB},       {"RES", ActorKind::Res},
      {"NOT", ActorKind::Not},         {"OR", ActorKind::Or},
      {"AND", ActorKind::And},         {"CONST_F", ActorKind::ConstFalse},
      {"CONST_T", ActorKind::ConstTrue}, {"MON", ActorKind::Monitor},
      {"P4MON", ActorKind::P4Monitor}, {"THETA", ActorKind::Theta},
      {"MEALY", ActorKind::Mealy}};
  auto it = m.find(s);
  if (it == m.end()) throw Error("unknown actor kind: " + s);
  return it->second;
}

bool Actor::stateless() const {
  switch (kind) {
    case ActorKind::Res:
    case ActorKind::Not:
    case ActorKind::Or:
    case ActorKind::And:
    case ActorKind::ConstFalse:
    case ActorKind::ConstTrue:
      return true;
    default:
      return false;
  }
}

int ActorSystem::actor_index(const std::string& id) const {
  for (size_t i = 0; i < actors.size(); ++i)
    if (actors[i].id == id) return static_cast<int>(i);
  return -1;
}

const Actor& ActorSystem::actor(const std::string& id) const {
  int i = actor_index(id);
  if (i < 0) throw Error("no actor " + id);
  return actors[i];
}

std::string ActorSystem::port_name(const PortRef& p) const {
  if (p.external()) return "$" + p.port;
  return actors.at(p.actor).id + "." + p.port;
}

bool ActorSystem::structurally_equal(const ActorSystem& other) const {
  if (ext_inputs != other.ext_inputs || ext_outputs != other.ext_outputs) return false;
  if (actors.size() != other.actors.size() || wires.size() != other.wires.size()) return false;
  for (size_t i = 0; i < actors.size(); ++i) {
    const Actor& a = actors[i];
    const Actor& b = other.actors[i];
    if (a.id != b.id || a.kind != b.kind || a.provenance != b.provenance ||
        a.inputs != b.inputs || a.outputs != b.outputs || a.res_param != b.res_param ||
        a.clause != b.clause || a.param_i != b.param_i)
      return false;
    if (a.machine.has_value() != b.machine.has_value()) return false;
    if (a.machine && !a.machine->equivalent_structure(*b.machine)) return false;
  }
  auto key = [this](const Wire& w) { return port_name(w.from) + ">" + port_name(w.to); };
  auto okey = [&other](const Wire& w) {
    return other.port_name(w.from) + ">" + other.port_name(w.to);
  };
  std::set<std::string> wa, wb;
  for (const auto& w : wires) wa.insert(key(w));
  for (const auto& w : other.wires) wb.insert(okey(w));
  return wa == wb;
}

namespace {

// Node space for the port graph: external inputs, external outputs, then
// per-actor input and output ports.
struct PortGraph {
  std::vector<std::string> names;
  std::map<std::string, int> by_name;
  std::vector<std::vector<int>> adj;

  int add(const std::string& n) {
    auto it = by_name.find(n);
    if (it != by_name.end()) return it->second;
    int id = static_cast<int>(names.size());
    names.push_back(n);
    by_name[n] = id;
    adj.emplace_back();
    return id;
  }
};

// Tarjan SCC; returns one SCC with more than one node (or a self-loop).
std::optional<std::vector<int>> find_scc(const PortGraph& g) {
  int n = static_cast<int>(g.names.size());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::optional<std::vector<int>> found;
  int counter = 0;

  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n && !found; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty() && !found) {
      Frame& f = frames.back();
      if (f.child < g.adj[f.v].size()) {
        int w = g.adj[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<int> comp;
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
            if (w == f.v) break;
          }
          bool self_loop = false;
          for (int w : g.adj[f.v])
            if (w == f.v) self_loop = true;
          if (comp.size() > 1 || self_loop) found = comp;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return found;
}

}  // namespace

const std::vector<XiElem>& evaluation_order(const ActorSystem& sys) {
  if (sys.order_cache) return *sys.order_cache;

  // wiring sanity: every actor input port and every external output port has
  // exactly one incoming wire; actor outputs feed at least one wire.
  std::map<std::string, int> incoming;
  for (const auto& w : sys.wires) incoming[sys.port_name(w.to)]++;
  for (const auto& [port, cnt] : incoming)
    if (cnt > 1) throw UnwiredPortError("port " + port + " has " + std::to_string(cnt) +
                                        " incoming wires");
  std::set<std::string> fed_sources;
  for (const auto& w : sys.wires) fed_sources.insert(sys.port_name(w.from));
  for (size_t ai = 0; ai < sys.actors.size(); ++ai) {
    const Actor& a = sys.actors[ai];
    for (const auto& p : a.inputs)
      if (!incoming.count(a.id + "." + p))
        throw UnwiredPortError("actor input " + a.id + "." + p + " is not wired");
    for (const auto& p : a.outputs)
      if (!fed_sources.count(a.id + "." + p))
        throw UnwiredPortError("actor output " + a.id + "." + p + " is not wired");
  }
  for (const auto& o : sys.ext_outputs)
    if (!incoming.count("$" + o))
      throw UnwiredPortError("external output $" + o + " is not wired");

  // cycle check on the port graph: wires are edges plus input->output edges
  // inside each actor
  PortGraph g;
  for (const auto& i : sys.ext_inputs) g.add("$" + i);
  for (const auto& o : sys.ext_outputs) g.add("$" + o);
  for (const auto& a : sys.actors) {
    for (const auto& p : a.inputs) g.add(a.id + "." + p);
    for (const auto& p : a.outputs) g.add(a.id + "." + p);
  }
  for (const auto& w : sys.wires)
    g.adj[g.add(sys.port_name(w.from))].push_back(g.add(sys.port_name(w.to)));
  for (const auto& a : sys.actors)
    for (const auto& pi : a.inputs)
      for (const auto& po : a.outputs)
        g.adj[g.add(a.id + "." + pi)].push_back(g.add(a.id + "." + po));

  if (auto scc = find_scc(g)) {
    std::vector<std::string> ports;
    for (int v : *scc) ports.push_back(g.names[v]);
    std::sort(ports.begin(), ports.end());
    throw CycleError("wiring forms a directed loop through: " + join(ports, ", "), ports);
  }

  // Kahn over actors and wires. A wire is ready once its source is ready;
  // an actor once all its input wires have run.
  std::vector<int> actor_pending(sys.actors.size(), 0);
  std::map<std::string, std::vector<int>> wires_from_actor;  // actor id -> wire idx
  std::vector<int> ready_wires;
  for (size_t wi = 0; wi < sys.wires.size(); ++wi) {
    const Wire& w = sys.wires[wi];
    if (!w.to.external()) actor_pending[w.to.actor]++;
    if (w.from.external())
      ready_wires.push_back(static_cast<int>(wi));
    else
      wires_from_actor[sys.actors[w.from.actor].id].push_back(static_cast<int>(wi));
  }
  std::vector<XiElem> order;
  std::vector<int> ready_actors;
  for (size_t ai = 0; ai < sys.actors.size(); ++ai)
    if (actor_pending[ai] == 0) ready_actors.push_back(static_cast<int>(ai));

  auto wire_key = [&sys](int wi) {
    return sys.port_name(sys.wires[wi].from) + ">" + sys.port_name(sys.wires[wi].to);
  };
  while (!ready_wires.empty() || !ready_actors.empty()) {
    std::sort(ready_wires.begin(), ready_wires.end(),
              [&](int a, int b) { return wire_key(a) < wire_key(b); });
    std::vector<int> next_actors;
    for (int wi : ready_wires) {
      order.push_back({true, wi});
      const Wire& w = sys.wires[wi];
      if (!w.to.external() && --actor_pending[w.to.actor] == 0)
        next_actors.push_back(w.to.actor);
    }
    ready_wires.clear();
    ready_actors.insert(ready_actors.end(), next_actors.begin(), next_actors.end());
    std::sort(ready_actors.begin(), ready_actors.end(), [&](int a, int b) {
      return sys.actors[a].id < sys.actors[b].id;
    });
    for (int ai : ready_actors) {
      order.push_back({false, ai});
      for (int wi : wires_from_actor[sys.actors[ai].id]) ready_wires.push_back(wi);
    }
    ready_actors.clear();
  }
  if (order.size() != sys.actors.size() + sys.wires.size())
    throw Error("evaluation ordering incomplete");  // unreachable after SCC check
  sys.order_cache = std::move(order);
  return *sys.order_cache;
}

SimState initial_state(const ActorSystem& sys) {
  SimState st;
  st.actor_state.resize(sys.actors.size());
  for (size_t i = 0; i < sys.actors.size(); ++i)
    if (sys.actors[i].machine) st.actor_state[i] = sys.actors[i].machine->initial_state();
  return st;
}

namespace {

PortValue gate_not(PortValue a) {
  if (a == PortValue::True) return PortValue::False;
  if (a == PortValue::False) return PortValue::True;
  return PortValue::Dash;
}

// set-lifted semantics over {true,false}: Dash stands for "either".
PortValue gate_or(const std::vector<PortValue>& in) {
  bool dash = false;
  for (PortValue v : in) {
    if (v == PortValue::True) return PortValue::True;
    if (v == PortValue::Dash) dash = true;
  }
  return dash ? PortValue::Dash : PortValue::False;
}

PortValue gate_and(const std::vector<PortValue>& in) {
  bool dash = false;
  for (PortValue v : in) {
    if (v == PortValue::False) return PortValue::False;
    if (v == PortValue::Dash) dash = true;
  }
  return dash ? PortValue::Dash : PortValue::True;
}

PortValue fire_res(const Actor& a, const std::vector<PortValue>& in) {
  bool any_t = false, any_f = false;
  for (PortValue v : in) {
    any_t |= v == PortValue::True;
    any_f |= v == PortValue::False;
  }
  if (any_t && any_f)
    throw ConflictAtRuntimeError("resolution actor " + a.id +
                                 " received true and false in the same cycle");
  if (any_t) return PortValue::True;
  if (any_f) return PortValue::False;
  if (!a.res_param)
    throw UnresolvedParameterError("resolution actor " + a.id +
                                   " has no parameter value yet");
  return *a.res_param ? PortValue::True : PortValue::False;
}

}  // namespace

namespace {

const CompiledPlan& compiled_plan(const ActorSystem& sys) {
  if (sys.plan_cache) return *sys.plan_cache;
  const auto& order = evaluation_order(sys);
  auto plan = std::make_shared<CompiledPlan>();
  std::map<std::string, int> slot;
  auto slot_of = [&](const std::string& name) {
    auto it = slot.find(name);
    if (it != slot.end()) return it->second;
    int s = plan->num_slots++;
    slot[name] = s;
    return s;
  };
  for (const auto& i : sys.ext_inputs) plan->ext_in_slots.push_back(slot_of("$" + i));
  for (const XiElem& e : order) {
    CompiledPlan::Op op;
    if (e.is_wire) {
      const Wire& w = sys.wires[e.index];
      op.is_wire = true;
      op.src = slot_of(sys.port_name(w.from));
      op.dst = slot_of(sys.port_name(w.to));
    } else {
      const Actor& a = sys.actors[e.index];
      op.actor = e.index;
      for (const auto& p : a.inputs) op.ins.push_back(slot_of(a.id + "." + p));
      for (const auto& p : a.outputs) op.outs.push_back(slot_of(a.id + "." + p));
    }
    plan->ops.push_back(std::move(op));
  }
  for (const auto& o : sys.ext_outputs) plan->ext_out_slots.push_back(slot_of("$" + o));
  sys.plan_cache = plan;
  return *sys.plan_cache;
}

}  // namespace

std::map<std::string, bool> step(const ActorSystem& sys, SimState& state,
                                 const std::map<std::string, bool>& inputs, StepStats* stats) {
  const CompiledPlan& plan = compiled_plan(sys);

  std::vector<PortValue> slots(plan.num_slots, PortValue::Undefined);
  for (size_t i = 0; i < sys.ext_inputs.size(); ++i) {
    auto it = inputs.find(sys.ext_inputs[i]);
    if (it == inputs.end()) throw Error("input trace misses variable " + sys.ext_inputs[i]);
    slots[plan.ext_in_slots[i]] = it->second ? PortValue::True : PortValue::False;
  }

  std::vector<PortValue> in_vals, out_vals;
  std::vector<bool> bools;
  for (const CompiledPlan::Op& op : plan.ops) {
    if (op.is_wire) {
      if (slots[op.src] == PortValue::Undefined)
        throw Error("wire read from an undefined port");
      slots[op.dst] = slots[op.src];
      if (stats) stats->wire_transfers++;
      continue;
    }
    const Actor& a = sys.actors[op.actor];
    in_vals.clear();
    for (int s : op.ins) {
      if (slots[s] == PortValue::Undefined)
        throw Error("actor " + a.id + " fired with an undefined input");
      in_vals.push_back(slots[s]);
    }
    out_vals.clear();
    switch (a.kind) {
      case ActorKind::Not:
        out_vals = {gate_not(in_vals.at(0))};
        break;
      case ActorKind::Or:
        out_vals = {gate_or(in_vals)};
        break;
      case ActorKind::And:
        out_vals = {gate_and(in_vals)};
        break;
      case ActorKind::Res:
        out_vals = {fire_res(a, in_vals)};
        break;
      case ActorKind::ConstFalse:
        out_vals = {PortValue::False};
        break;
      case ActorKind::ConstTrue:
        out_vals = {PortValue::True};
        break;
      default: {
        bools.clear();
        for (size_t i = 0; i < in_vals.size(); ++i) {
          if (in_vals[i] == PortValue::Dash)
            throw Error("actor " + a.id + " received a dash on Boolean port " + a.inputs[i]);
          bools.push_back(in_vals[i] == PortValue::True);
        }
        a.machine->step(bools, state.actor_state[op.actor], out_vals);
        break;
      }
    }
    for (size_t i = 0; i < op.outs.size(); ++i) slots[op.outs[i]] = out_vals.at(i);
    if (stats) stats->actor_fires[a.id]++;
  }

  std::map<std::string, bool> out;
  for (size_t i = 0; i < sys.ext_outputs.size(); ++i) {
    PortValue v = slots[plan.ext_out_slots[i]];
    if (v == PortValue::Dash)
      throw DashAtExternalOutputError("dash reached external output " + sys.ext_outputs[i]);
    out[sys.ext_outputs[i]] = v == PortValue::True;
  }
  return out;
}

std::vector<std::map<std::string, bool>> run(
    const ActorSystem& sys, const std::vector<std::map<std::string, bool>>& ins) {
  SimState st = initial_state(sys);
  std::vector<std::map<std::string, bool>> outs;
  outs.reserve(ins.size());
  for (const auto& in : ins) outs.push_back(step(sys, st, in));
  return outs;
}

MealyMachine compose_to_mealy(const ActorSystem& sys, size_t max_states) {
  evaluation_order(sys);
  if (sys.ext_inputs.size() > 16)
    throw StateExplosionError("too many external inputs to tabulate");

  // joint state = concatenation of actor state vectors
  auto pack = [&](const SimState& st) {
    std::vector<bool> bits;
    for (const auto& s : st.actor_state) bits.insert(bits.end(), s.begin(), s.end());
    return bits;
  };
  auto unpack = [&](const std::vector<bool>& bits) {
    SimState st = initial_state(sys);
    size_t k = 0;
    for (auto& s : st.actor_state)
      for (size_t i = 0; i < s.size(); ++i) s[i] = bits[k++];
    return st;
  };

  MealyTable tbl;
  tbl.num_inputs = static_cast<int>(sys.ext_inputs.size());
  tbl.output_ports = sys.ext_outputs;
  std::map<std::vector<bool>, uint32_t> index;
  std::vector<bool> init = pack(initial_state(sys));
  index[init] = 0;
  tbl.states.push_back(init);
  std::vector<std::vector<bool>> todo{init};
  size_t nmask = 1u << sys.ext_inputs.size();
  for (size_t head = 0; head < todo.size(); ++head) {
    for (size_t mask = 0; mask < nmask; ++mask) {
      std::map<std::string, bool> in;
      for (size_t i = 0; i < sys.ext_inputs.size(); ++i)
        in[sys.ext_inputs[i]] = (mask >> i) & 1;
      SimState st = unpack(todo[head]);
      auto out = step(sys, st, in);
      std::vector<bool> nxt_bits = pack(st);
      auto it = index.find(nxt_bits);
      uint32_t nxt;
      if (it == index.end()) {
        if (tbl.states.size() >= max_states)
          throw StateExplosionError("product machine exceeds " + std::to_string(max_states) +
                                    " states");
        nxt = static_cast<uint32_t>(tbl.states.size());
        index[nxt_bits] = nxt;
        tbl.states.push_back(nxt_bits);
        todo.push_back(nxt_bits);
      } else {
        nxt = it->second;
      }
      std::vector<PortValue> outs;
      for (const auto& o : sys.ext_outputs)
        outs.push_back(out.at(o) ? PortValue::True : PortValue::False);
      tbl.outputs.push_back(std::move(outs));
      tbl.next.push_back(nxt);
    }
  }

  std::vector<StateVar> vars;
  for (size_t i = 0; i < init.size(); ++i) vars.push_back({"q" + std::to_string(i), false});
  return MealyMachine::from_table(std::move(vars), sys.ext_inputs, std::move(tbl));
}

}  // namespace gxw
