#include "gxw/mealy.hpp"

#include <map>

#include "gxw/errors.hpp"

namespace gxw {

std::string port_value_str(PortValue v) {
  switch (v) {
    case PortValue::Undefined:
      return "u";
    case PortValue::False:
      return "F";
    case PortValue::True:
      return "T";
    case PortValue::Dash:
      return "-";
  }
  return "?";
}

BExprPtr BExpr::f() {
  static BExprPtr e = std::make_shared<BExpr>(BExpr{Op::False, 0, {}});
  return e;
}
BExprPtr BExpr::t() {
  static BExprPtr e = std::make_shared<BExpr>(BExpr{Op::True, 0, {}});
  return e;
}
BExprPtr BExpr::input(int i) { return std::make_shared<BExpr>(BExpr{Op::Input, i, {}}); }
BExprPtr BExpr::state_bit(int i) { return std::make_shared<BExpr>(BExpr{Op::StateBit, i, {}}); }

BExprPtr BExpr::neg(BExprPtr a) {
  if (a->op == Op::True) return f();
  if (a->op == Op::False) return t();
  if (a->op == Op::Not) return a->kids[0];
  return std::make_shared<BExpr>(BExpr{Op::Not, 0, {std::move(a)}});
}

BExprPtr BExpr::conj(std::vector<BExprPtr> xs) {
  std::vector<BExprPtr> kept;
  for (auto& x : xs) {
    if (x->op == Op::False) return f();
    if (x->op == Op::True) continue;
    kept.push_back(std::move(x));
  }
  if (kept.empty()) return t();
  if (kept.size() == 1) return kept[0];
  return std::make_shared<BExpr>(BExpr{Op::And, 0, std::move(kept)});
}

BExprPtr BExpr::disj(std::vector<BExprPtr> xs) {
  std::vector<BExprPtr> kept;
  for (auto& x : xs) {
    if (x->op == Op::True) return t();
    if (x->op == Op::False) continue;
    kept.push_back(std::move(x));
  }
  if (kept.empty()) return f();
  if (kept.size() == 1) return kept[0];
  return std::make_shared<BExpr>(BExpr{Op::Or, 0, std::move(kept)});
}

bool BExpr::eval(const std::vector<bool>& inputs, const std::vector<bool>& state) const {
  switch (op) {
    case Op::False:
      return false;
    case Op::True:
      return true;
    case Op::Input:
      return inputs.at(index);
    case Op::StateBit:
      return state.at(index);
    case Op::Not:
      return !kids[0]->eval(inputs, state);
    case Op::And:
      for (const auto& k : kids)
        if (!k->eval(inputs, state)) return false;
      return true;
    case Op::Or:
      for (const auto& k : kids)
        if (k->eval(inputs, state)) return true;
      return false;
  }
  return false;
}

int MealyMachine::num_bits() const {
  int n = 0;
  for (const auto& v : vars) n += v.three_valued ? 2 : 1;
  return n;
}

int MealyMachine::bit_index(const std::string& var_name) const {
  int n = 0;
  for (const auto& v : vars) {
    if (v.name == var_name) return n;
    n += v.three_valued ? 2 : 1;
  }
  throw Error("no state variable " + var_name);
}

int MealyMachine::three_valued_var_count() const {
  int n = 0;
  for (const auto& v : vars)
    if (v.three_valued) ++n;
  return n;
}

std::vector<bool> MealyMachine::initial_state() const {
  if (table) {
    return table->states.empty() ? std::vector<bool>{} : table->states[0];
  }
  return init_bits;
}

namespace {
uint32_t input_mask(const std::vector<bool>& in_vals) {
  uint32_t m = 0;
  for (size_t i = 0; i < in_vals.size(); ++i)
    if (in_vals[i]) m |= 1u << i;
  return m;
}
}  // namespace

void MealyMachine::step(const std::vector<bool>& in_vals, std::vector<bool>& state,
                        std::vector<PortValue>& out_vals) const {
  if (table) {
    // locate state index: linear scan is fine for the small tables we build
    uint32_t idx = 0;
    bool found = false;
    for (size_t s = 0; s < table->states.size(); ++s)
      if (table->states[s] == state) {
        idx = static_cast<uint32_t>(s);
        found = true;
        break;
      }
    if (!found) throw Error("table machine reached an unknown state");
    size_t row = idx * (1u << table->num_inputs) + input_mask(in_vals);
    out_vals = table->outputs.at(row);
    state = table->states.at(table->next.at(row));
    return;
  }
  out_vals.clear();
  out_vals.reserve(outputs.size());
  for (const auto& o : outputs) {
    bool t = o.t->eval(in_vals, state);
    bool f = o.f->eval(in_vals, state);
    if (t && f) throw Error("machine output " + o.port + " asserted both true and false");
    out_vals.push_back(t ? PortValue::True : f ? PortValue::False : PortValue::Dash);
  }
  std::vector<bool> next(next_bits.size());
  for (size_t i = 0; i < next_bits.size(); ++i) next[i] = next_bits[i]->eval(in_vals, state);
  state = std::move(next);
}

std::vector<std::string> MealyMachine::output_ports() const {
  if (table) return table->output_ports;
  std::vector<std::string> out;
  for (const auto& o : outputs) out.push_back(o.port);
  return out;
}

MealyTable MealyMachine::enumerate_table(size_t max_states) const {
  if (inputs.size() > 16) throw StateExplosionError("too many inputs to tabulate");
  MealyTable tbl;
  tbl.num_inputs = static_cast<int>(inputs.size());
  tbl.output_ports = output_ports();
  std::map<std::vector<bool>, uint32_t> index;
  std::vector<std::vector<bool>> todo;
  std::vector<bool> init = initial_state();
  index[init] = 0;
  tbl.states.push_back(init);
  todo.push_back(init);
  size_t nmask = 1u << inputs.size();
  for (size_t head = 0; head < todo.size(); ++head) {
    std::vector<bool> st = todo[head];
    for (size_t mask = 0; mask < nmask; ++mask) {
      std::vector<bool> in_vals(inputs.size());
      for (size_t i = 0; i < inputs.size(); ++i) in_vals[i] = (mask >> i) & 1;
      std::vector<bool> s = st;
      std::vector<PortValue> out;
      step(in_vals, s, out);
      auto it = index.find(s);
      uint32_t nxt;
      if (it == index.end()) {
        if (tbl.states.size() >= max_states)
          throw StateExplosionError("state count exceeds " + std::to_string(max_states));
        nxt = static_cast<uint32_t>(tbl.states.size());
        index[s] = nxt;
        tbl.states.push_back(s);
        todo.push_back(s);
      } else {
        nxt = it->second;
      }
      tbl.outputs.push_back(std::move(out));
      tbl.next.push_back(nxt);
    }
  }
  // rows were appended per (discovered state, mask); reorder into dense layout
  // is already satisfied because states are discovered in BFS order and rows
  // appended in the same order.
  return tbl;
}

MealyMachine MealyMachine::from_table(std::vector<StateVar> vars,
                                      std::vector<std::string> inputs, MealyTable table) {
  MealyMachine m;
  m.vars = std::move(vars);
  m.inputs = std::move(inputs);
  m.table = std::move(table);
  return m;
}

bool MealyMachine::equivalent_structure(const MealyMachine& other) const {
  if (inputs != other.inputs) return false;
  if (output_ports() != other.output_ports()) return false;
  return enumerate_table() == other.enumerate_table();
}

}  // namespace gxw
