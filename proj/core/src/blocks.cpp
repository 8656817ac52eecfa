#include "gxw/blocks.hpp"

#include <algorithm>

#include "gxw/errors.hpp"

namespace gxw {

Actor make_highlevel(ActorKind kind, const std::string& id) {
  Actor a;
  a.id = id;
  a.kind = kind;
  MealyMachine m;
  switch (kind) {
    case ActorKind::IfTB: {
      a.inputs = {"input"};
      a.outputs = {"output"};
      m.inputs = {"input"};
      m.outputs = {{"output", BExpr::input(0), BExpr::f()}};
      break;
    }
    case ActorKind::InUB: {
      a.inputs = {"input"};
      a.outputs = {"output"};
      m.inputs = {"input"};
      m.vars = {{"lock", false}};
      m.init_bits = {true};
      // holds the output until the event arrives, unconstrained afterwards
      BExprPtr live = BExpr::conj({BExpr::state_bit(0), BExpr::neg(BExpr::input(0))});
      m.outputs = {{"output", live, BExpr::f()}};
      m.next_bits = {live};
      break;
    }
    case ActorKind::TrUB: {
      a.inputs = {"input", "release"};
      a.outputs = {"output"};
      m.inputs = {"input", "release"};
      m.vars = {{"lock", false}};
      m.init_bits = {false};
      // release wins over a simultaneous trigger
      BExprPtr hold = BExpr::conj({BExpr::neg(BExpr::input(1)),
                                   BExpr::disj({BExpr::input(0), BExpr::state_bit(0)})});
      m.outputs = {{"output", hold, BExpr::f()}};
      m.next_bits = {hold};
      break;
    }
    default:
      throw Error("make_highlevel: not a high-level kind");
  }
  a.machine = std::move(m);
  return a;
}

namespace {

// Shared construction for both monitor flavors. State variables are the
// history slots v[1..i] for every input variable of the clause, v[j] holding
// the value seen j cycles ago; slot bits are (known, value).
struct MonitorBuild {
  MealyMachine m;
  BExprPtr cond;
  BExprPtr warmed;  // true from cycle i on
};

MonitorBuild build_monitor(const DnfClause& c, int i) {
  if (c.depth > i) throw DepthExceededError("clause deeper than monitor alignment");
  MonitorBuild b;
  std::vector<std::string> vars = c.vars();
  for (const auto& v : vars) b.m.inputs.push_back(v);
  for (const auto& v : vars)
    for (int j = 1; j <= i; ++j) {
      b.m.vars.push_back({v + "[" + std::to_string(j) + "]", true});
      b.m.init_bits.push_back(false);  // known = 0 (u)
      b.m.init_bits.push_back(false);
    }

  auto input_index = [&](const std::string& v) {
    return static_cast<int>(std::find(vars.begin(), vars.end(), v) - vars.begin());
  };
  auto slot_bit = [&](const std::string& v, int j) {
    // bits are laid out per variable, then per slot, two bits each
    int vi = input_index(v);
    return 2 * (vi * i + (j - 1));
  };

  std::vector<BExprPtr> conds;
  for (const auto& l : c.literals) {
    if (l.depth == i) {
      conds.push_back(l.positive ? BExpr::input(input_index(l.var))
                                 : BExpr::neg(BExpr::input(input_index(l.var))));
    } else {
      int base = slot_bit(l.var, i - l.depth);
      BExprPtr known = BExpr::state_bit(base);
      BExprPtr value = BExpr::state_bit(base + 1);
      conds.push_back(BExpr::conj({known, l.positive ? value : BExpr::neg(value)}));
    }
  }
  // the first i outputs stay false even when every literal reads the current
  // input; the known bit of the oldest slot doubles as the warm-up flag
  b.warmed = BExpr::t();
  if (i >= 1 && !vars.empty()) {
    b.warmed = BExpr::state_bit(slot_bit(vars[0], i));
    conds.push_back(b.warmed);
  }
  b.cond = BExpr::conj(std::move(conds));

  // left shift: v[1] <- current input, v[j+1] <- v[j]
  b.m.next_bits.resize(b.m.num_bits());
  for (const auto& v : vars) {
    for (int j = 1; j <= i; ++j) {
      int dst = slot_bit(v, j);
      if (j == 1) {
        b.m.next_bits[dst] = BExpr::t();
        b.m.next_bits[dst + 1] = BExpr::input(input_index(v));
      } else {
        int src = slot_bit(v, j - 1);
        b.m.next_bits[dst] = BExpr::state_bit(src);
        b.m.next_bits[dst + 1] = BExpr::state_bit(src + 1);
      }
    }
  }
  return b;
}

}  // namespace

MealyMachine syn_monitor(const DnfClause& c, int i) {
  if (c.literals.empty() && i >= 1)
    throw Error("degenerate clause (true) needs a combinational path, not a monitor");
  MonitorBuild b = build_monitor(c, i);
  b.m.outputs = {{"out", b.cond, BExpr::neg(b.cond)}};
  return std::move(b.m);
}

Actor make_monitor_actor(const DnfClause& c, int i, const std::string& id) {
  Actor a;
  a.id = id;
  a.kind = ActorKind::Monitor;
  a.clause = c.str();
  a.param_i = i;
  MealyMachine m = syn_monitor(c, i);
  a.inputs = m.inputs;
  a.outputs = {"out"};
  a.machine = std::move(m);
  return a;
}

MealyMachine syn_p4_monitor(const DnfClause& c, int i) {
  if (c.literals.empty() && i >= 1)
    throw Error("degenerate clause (true) needs a combinational path, not a monitor");
  MonitorBuild b = build_monitor(c, i);
  // dash while warming up, Boolean clause value afterwards
  b.m.outputs = {{"out", b.cond, BExpr::conj({b.warmed, BExpr::neg(b.cond)})}};
  return std::move(b.m);
}

Actor make_p4_monitor_actor(const DnfClause& c, int i, const std::string& id) {
  Actor a;
  a.id = id;
  a.kind = ActorKind::P4Monitor;
  a.clause = c.str();
  a.param_i = i;
  MealyMachine m = syn_p4_monitor(c, i);
  a.inputs = m.inputs;
  a.outputs = {"out"};
  a.machine = std::move(m);
  return a;
}

MealyMachine make_theta(int h) {
  if (h <= 0) throw InvalidHError("theta controller needs h >= 1, got " + std::to_string(h));
  MealyMachine m;
  m.inputs = {"set", "in"};
  m.vars.push_back({"started", false});
  m.init_bits.push_back(false);
  int cbits = 0;
  while ((1 << cbits) < h) ++cbits;  // counter range [0, h-1]
  for (int k = 0; k < cbits; ++k) {
    m.vars.push_back({"c" + std::to_string(k), false});
    m.init_bits.push_back(false);
  }
  BExprPtr set = BExpr::input(0);
  BExprPtr in = BExpr::input(1);
  BExprPtr started = BExpr::state_bit(0);
  auto cbit = [&](int k) { return BExpr::state_bit(1 + k); };

  std::vector<BExprPtr> zero_terms;
  for (int k = 0; k < cbits; ++k) zero_terms.push_back(BExpr::neg(cbit(k)));
  BExprPtr count_zero = BExpr::conj(std::move(zero_terms));

  BExprPtr mirroring =
      BExpr::conj({started, BExpr::neg(set), count_zero});
  BExprPtr out_t = BExpr::conj({mirroring, in});
  BExprPtr out_f = BExpr::disj({BExpr::neg(mirroring), BExpr::neg(in)});
  m.outputs = {{"out", out_t, out_f}};

  m.next_bits.resize(m.num_bits());
  m.next_bits[0] = BExpr::disj({started, set});
  // counter: set -> h-1; counting down otherwise
  for (int k = 0; k < cbits; ++k) {
    // borrow into bit k is set when all lower bits are zero
    std::vector<BExprPtr> lower_zero;
    for (int j = 0; j < k; ++j) lower_zero.push_back(BExpr::neg(cbit(j)));
    BExprPtr borrow = BExpr::conj(std::move(lower_zero));
    BExprPtr dec_bit = BExpr::disj({BExpr::conj({cbit(k), BExpr::neg(borrow)}),
                                    BExpr::conj({BExpr::neg(cbit(k)), borrow})});
    BExprPtr reload = ((h - 1) >> k) & 1 ? BExpr::t() : BExpr::f();
    m.next_bits[1 + k] =
        BExpr::disj({BExpr::conj({set, reload}),
                     BExpr::conj({BExpr::neg(set), BExpr::neg(count_zero), dec_bit})});
  }
  return m;
}

Actor make_theta_actor(int h, const std::string& id) {
  Actor a;
  a.id = id;
  a.kind = ActorKind::Theta;
  a.param_i = h;
  a.inputs = {"set", "in"};
  a.outputs = {"out"};
  a.machine = make_theta(h);
  return a;
}

Actor make_res(int n, const std::string& id) {
  if (n < 1) throw Error("resolution actor needs at least one input");
  Actor a;
  a.id = id;
  a.kind = ActorKind::Res;
  for (int k = 0; k < n; ++k) a.inputs.push_back("input" + std::to_string(k + 1));
  a.outputs = {"output"};
  return a;
}

Actor make_gate(ActorKind kind, int arity, const std::string& id) {
  Actor a;
  a.id = id;
  a.kind = kind;
  switch (kind) {
    case ActorKind::Not:
      a.inputs = {"in"};
      a.outputs = {"out"};
      break;
    case ActorKind::Or:
    case ActorKind::And:
      if (arity < 1) throw Error("gate arity must be >= 1");
      for (int k = 0; k < arity; ++k) a.inputs.push_back("in" + std::to_string(k + 1));
      a.outputs = {"out"};
      break;
    case ActorKind::ConstFalse:
    case ActorKind::ConstTrue:
      a.outputs = {"out"};
      break;
    default:
      throw Error("make_gate: not a gate kind");
  }
  return a;
}

}  // namespace gxw
