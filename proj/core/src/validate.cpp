#include "gxw/validate.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "gxw/errors.hpp"
#include "gxw/util.hpp"

namespace gxw {

int Trace::var_index(const std::string& v) const {
  auto it = std::find(vars.begin(), vars.end(), v);
  if (it == vars.end()) throw Error("trace has no column " + v);
  return static_cast<int>(it - vars.begin());
}

bool Trace::at(size_t cycle, const std::string& v) const {
  return cells.at(cycle).at(var_index(v));
}

void Trace::set(size_t cycle, const std::string& v, bool val) {
  cells.at(cycle).at(var_index(v)) = val;
}

Trace Trace::empty(std::vector<std::string> vars, size_t length) {
  Trace t;
  t.vars = std::move(vars);
  t.cells.assign(length, std::vector<bool>(t.vars.size(), false));
  return t;
}

std::string trace_to_csv(const Trace& tr) {
  std::string out = join(tr.vars, ",") + "\n";
  for (const auto& row : tr.cells) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) line += std::string(i ? "," : "") + (row[i] ? "1" : "0");
    out += line + "\n";
  }
  return out;
}

Trace trace_from_csv(const std::string& text) {
  Trace tr;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto parts = split(line, ',');
    if (header) {
      tr.vars = parts;
      header = false;
      continue;
    }
    if (parts.size() != tr.vars.size()) throw ParseError("csv row width mismatch: " + line);
    std::vector<bool> row;
    for (const auto& p : parts) row.push_back(p == "1" || p == "true");
    tr.cells.push_back(std::move(row));
  }
  return tr;
}

Trace join_traces(const Trace& a, const Trace& b) {
  if (a.length() != b.length()) throw Error("trace lengths differ");
  Trace out = a;
  out.vars.insert(out.vars.end(), b.vars.begin(), b.vars.end());
  for (size_t t = 0; t < out.cells.size(); ++t)
    out.cells[t].insert(out.cells[t].end(), b.cells[t].begin(), b.cells[t].end());
  return out;
}

namespace {

// clause value at window start s, fully inside the trace
bool clause_at(const Trace& tr, const DnfClause& c, size_t s) {
  return c.eval([&](int j, const std::string& v) { return tr.at(s + j, v); });
}

// true when the clause could still fire at s under some extension: every
// literal inside the trace holds, later ones are unconstrained
bool clause_possible_at(const Trace& tr, const DnfClause& c, size_t s) {
  for (const auto& l : c.literals) {
    size_t pos = s + static_cast<size_t>(l.depth);
    if (pos < tr.length() && tr.at(pos, l.var) != l.positive) return false;
  }
  return true;
}

bool any_clause_at(const Trace& tr, const std::vector<DnfClause>& cs, size_t s) {
  for (const auto& c : cs)
    if (s + static_cast<size_t>(c.depth) < tr.length() && clause_at(tr, c, s)) return true;
  return false;
}

bool any_clause_possible_at(const Trace& tr, const std::vector<DnfClause>& cs, size_t s) {
  for (const auto& c : cs)
    if (clause_possible_at(tr, c, s)) return true;
  return false;
}

bool eval_formula_at(const Formula& f, const Trace& tr, size_t t) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Var:
      return tr.at(t, f.var_name());
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Not:
      return !eval_formula_at(f.child(0), tr, t);
    case K::And:
      return eval_formula_at(f.child(0), tr, t) && eval_formula_at(f.child(1), tr, t);
    case K::Or:
      return eval_formula_at(f.child(0), tr, t) || eval_formula_at(f.child(1), tr, t);
    case K::Implies:
      return !eval_formula_at(f.child(0), tr, t) || eval_formula_at(f.child(1), tr, t);
    case K::Iff:
      return eval_formula_at(f.child(0), tr, t) == eval_formula_at(f.child(1), tr, t);
    default:
      throw Error("temporal operator in pointwise evaluation: " + f.str());
  }
}

bool out_holds(const Trace& tr, const PatternParts& p, size_t t) {
  return tr.at(t, p.out_var) == p.out_positive;
}

// all release clauses of a P2 sub-spec (input and output parts)
std::vector<DnfClause> all_releases(const PatternParts& p) {
  std::vector<DnfClause> cs = p.release_in;
  cs.insert(cs.end(), p.release_out.begin(), p.release_out.end());
  return cs;
}

}  // namespace

std::vector<Violation> check_trace(const GxwSpec& spec, const Trace& joint) {
  std::vector<Violation> out;
  size_t T = joint.length();

  if (spec.has_assumption()) {
    for (size_t t = 0; t < T; ++t)
      if (!eval_formula_at(spec.assumption, joint, t))
        out.push_back({"assume", t, "assumption violated"});
  }

  for (const auto& s : spec.subs) {
    const PatternParts& p = s.parts;
    switch (s.pattern()) {
      case PatternId::P3: {
        for (size_t t = p.i; t < T; ++t)
          if (any_clause_at(joint, p.input_clauses, t - p.i) && !out_holds(joint, p, t)) {
            out.push_back({s.label, t, "output deviated from triggered demand"});
            break;
          }
        break;
      }
      case PatternId::P4: {
        for (size_t t = p.i; t < T; ++t) {
          bool demand = any_clause_at(joint, p.input_clauses, t - p.i);
          bool val = joint.at(t, p.out_var);
          bool expected = demand == p.out_positive;
          if (val != expected) {
            out.push_back({s.label, t, "output differs from the mirrored trigger value"});
            break;
          }
        }
        break;
      }
      case PatternId::P5: {
        for (size_t t = 0; t < T; ++t)
          if (!eval_formula_at(p.invariant, joint, t)) {
            out.push_back({s.label, t, "invariant false"});
            break;
          }
        break;
      }
      case PatternId::P1: {
        for (size_t v = 0; v < T; ++v) {
          if (any_clause_possible_at(joint, p.input_clauses, v)) break;  // (possibly) released
          if (!out_holds(joint, p, v)) {
            out.push_back({s.label, v, "output deviated while initial lock active"});
            break;
          }
        }
        break;
      }
      case PatternId::P2: {
        std::vector<DnfClause> rel = all_releases(p);
        std::optional<size_t> first_violation;
        for (size_t t1 = 0; t1 + p.i < T; ++t1) {
          if (!any_clause_at(joint, p.input_clauses, t1)) continue;
          size_t u = t1 + p.i;
          for (size_t v = u; v < T; ++v) {
            bool released = false;
            for (size_t sr = u; sr <= v && !released; ++sr)
              released = any_clause_possible_at(joint, rel, sr);
            if (released) break;
            if (!out_holds(joint, p, v)) {
              if (!first_violation || v < *first_violation) first_violation = v;
              break;
            }
          }
        }
        if (first_violation)
          out.push_back({s.label, *first_violation, "output deviated while locked"});
        break;
      }
      case PatternId::P6:
        break;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Violation& a, const Violation& b) { return a.cycle < b.cycle; });
  return out;
}

Trace random_trace(const GxwSpec& spec, size_t length, uint64_t seed) {
  size_t n = spec.inputs.size();
  if (n > 20) throw InstanceTooLargeError("too many inputs for assumption enumeration");
  std::vector<uint32_t> sat;
  Trace probe = Trace::empty(spec.inputs, 1);
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (size_t i = 0; i < n; ++i) probe.cells[0][i] = (mask >> i) & 1;
    if (!spec.has_assumption() || eval_formula_at(spec.assumption, probe, 0)) sat.push_back(mask);
  }
  if (sat.empty()) throw UnsatisfiableAssumptionError("assumption admits no input assignment");
  std::mt19937_64 rng(seed);
  Trace tr = Trace::empty(spec.inputs, length);
  for (size_t t = 0; t < length; ++t) {
    uint32_t mask = sat[rng() % sat.size()];
    for (size_t i = 0; i < n; ++i) tr.cells[t][i] = (mask >> i) & 1;
  }
  return tr;
}

namespace {

// ---- realizability game ---------------------------------------------------

struct GameSub {
  PatternId pattern;
  const PatternParts* parts;
  std::string label;
  int max_rel_depth = 0;
};

struct GameCtx {
  const GxwSpec* spec;
  std::vector<GameSub> subs;
  int omega = 0;
  int hist_len = 0;  // how many past input masks are kept
  std::vector<uint32_t> legal_inputs;
  uint32_t num_out_masks = 0;

  // memo: key -> winning input mask + 1, or 0 when the environment loses
  std::unordered_map<std::string, uint32_t> memo;
};

// mutable game state
struct GameState {
  std::vector<uint32_t> hist;  // last hist_len input masks, most recent last
  std::vector<uint8_t> lock;   // P1: 1 = still locked; P2: 1 = locked
  std::vector<uint8_t> age;    // P2: cycles since last activation, saturating
  int t = 0;

  std::string key() const {
    std::string k;
    for (uint32_t h : hist) {
      k += static_cast<char>(h & 0xff);
      k += static_cast<char>((h >> 8) & 0xff);
    }
    for (uint8_t l : lock) k += static_cast<char>(l);
    for (uint8_t a : age) k += static_cast<char>(a);
    k += static_cast<char>(t);
    return k;
  }
};

bool mask_bit(uint32_t mask, int i) { return (mask >> i) & 1; }

// evaluates a clause whose window ends at the current cycle: offset j from
// the window start; window start is `depth` cycles back
bool clause_on_window(const GameCtx& ctx, const GameState& st, uint32_t cur_in,
                      const DnfClause& c, const std::vector<std::string>& in_vars) {
  int depth = c.depth;
  for (const auto& l : c.literals) {
    int back = depth - l.depth;  // cycles before current
    uint32_t mask;
    if (back == 0) {
      mask = cur_in;
    } else {
      int idx = static_cast<int>(st.hist.size()) - back;
      if (idx < 0) return false;  // window starts before cycle 0
      mask = st.hist[idx];
    }
    int vi = static_cast<int>(std::find(in_vars.begin(), in_vars.end(), l.var) -
                              in_vars.begin());
    if (mask_bit(mask, vi) != l.positive) return false;
  }
  // the window must fit entirely after cycle 0
  return static_cast<int>(st.hist.size()) >= depth || st.t >= depth;
}

bool output_clause_holds(const DnfClause& c, uint32_t out_mask,
                         const std::vector<std::string>& out_vars) {
  for (const auto& l : c.literals) {
    int vi = static_cast<int>(std::find(out_vars.begin(), out_vars.end(), l.var) -
                              out_vars.begin());
    if (mask_bit(out_mask, vi) != l.positive) return false;
  }
  return true;
}

struct CycleInfo {
  // per sub-spec, for the current cycle and chosen input
  std::vector<uint8_t> activated;       // trigger window just completed
  std::vector<uint8_t> rel_in_fired;    // confirmed unmasked input release
  std::vector<uint8_t> demanded_base;   // (locked or activated) before release
};

CycleInfo cycle_info(const GameCtx& ctx, const GameState& st, uint32_t in_mask) {
  CycleInfo ci;
  size_t n = ctx.subs.size();
  ci.activated.assign(n, 0);
  ci.rel_in_fired.assign(n, 0);
  ci.demanded_base.assign(n, 0);
  const auto& in_vars = ctx.spec->inputs;
  for (size_t k = 0; k < n; ++k) {
    const GameSub& gs = ctx.subs[k];
    const PatternParts& p = *gs.parts;
    switch (gs.pattern) {
      case PatternId::P3:
      case PatternId::P4: {
        for (const auto& c : p.input_clauses)
          if (clause_on_window(ctx, st, in_mask, c, in_vars)) {
            ci.activated[k] = 1;
            break;
          }
        break;
      }
      case PatternId::P1: {
        if (!st.lock[k]) break;
        ci.demanded_base[k] = 1;
        for (const auto& c : p.input_clauses)
          if (clause_on_window(ctx, st, in_mask, c, in_vars)) {
            ci.rel_in_fired[k] = 1;
            break;
          }
        break;
      }
      case PatternId::P2: {
        for (const auto& c : p.input_clauses)
          if (clause_on_window(ctx, st, in_mask, c, in_vars)) {
            ci.activated[k] = 1;
            break;
          }
        if (st.lock[k] || ci.activated[k]) ci.demanded_base[k] = 1;
        // input release clauses confirm at their own depth; a fresh
        // activation masks confirmations whose window started before it
        int age_now = ci.activated[k] ? 0 : st.age[k];
        for (const auto& c : p.release_in) {
          if (c.depth == 0) {
            if (clause_on_window(ctx, st, in_mask, c, in_vars)) {
              ci.rel_in_fired[k] = 1;
              break;
            }
          } else if (age_now >= c.depth &&
                     clause_on_window(ctx, st, in_mask, c, in_vars)) {
            ci.rel_in_fired[k] = 1;
            break;
          }
        }
        break;
      }
      default:
        break;
    }
  }
  return ci;
}

// checks one controller reply; fills the successor state on success
bool reply_consistent(const GameCtx& ctx, const GameState& st, const CycleInfo& ci,
                      uint32_t out_mask, GameState& next) {
  const auto& out_vars = ctx.spec->outputs;
  auto out_bit = [&](const std::string& v) {
    int vi = static_cast<int>(std::find(out_vars.begin(), out_vars.end(), v) -
                              out_vars.begin());
    return mask_bit(out_mask, vi);
  };

  next = st;
  next.t = st.t + 1;
  for (size_t k = 0; k < ctx.subs.size(); ++k) {
    const GameSub& gs = ctx.subs[k];
    const PatternParts& p = *gs.parts;
    switch (gs.pattern) {
      case PatternId::P3:
        if (ci.activated[k] && out_bit(p.out_var) != p.out_positive) return false;
        break;
      case PatternId::P4: {
        if (st.t >= p.i) {
          bool expected = ci.activated[k] == 1 ? p.out_positive : !p.out_positive;
          if (out_bit(p.out_var) != expected) return false;
        }
        break;
      }
      case PatternId::P1: {
        if (ci.demanded_base[k] && !ci.rel_in_fired[k] &&
            out_bit(p.out_var) != p.out_positive)
          return false;
        if (ci.rel_in_fired[k]) next.lock[k] = 0;
        break;
      }
      case PatternId::P2: {
        bool released = ci.rel_in_fired[k] == 1;
        if (!released && ci.demanded_base[k]) {
          for (const auto& c : p.release_out)
            if (output_clause_holds(c, out_mask, out_vars)) {
              released = true;
              break;
            }
        }
        if (ci.demanded_base[k] && !released && out_bit(p.out_var) != p.out_positive)
          return false;
        next.lock[k] = ci.demanded_base[k] && !released ? 1 : 0;
        uint8_t age = ci.activated[k] ? 0 : std::min<int>(st.age[k] + 1, gs.max_rel_depth + 1);
        if (ci.activated[k]) age = 1;  // one cycle old at the next step
        next.age[k] = next.lock[k] ? age : 0;
        break;
      }
      case PatternId::P5:
        break;
      default:
        break;
    }
  }
  for (size_t k = 0; k < ctx.subs.size(); ++k) {
    const GameSub& gs = ctx.subs[k];
    if (gs.pattern != PatternId::P5) continue;
    Trace probe = Trace::empty(out_vars, 1);
    for (size_t i = 0; i < out_vars.size(); ++i) probe.cells[0][i] = mask_bit(out_mask, i);
    if (!eval_formula_at(gs.parts->invariant, probe, 0)) return false;
  }
  return true;
}

void push_hist(const GameCtx& ctx, GameState& st, uint32_t in_mask) {
  st.hist.push_back(in_mask);
  while (static_cast<int>(st.hist.size()) > ctx.hist_len) st.hist.erase(st.hist.begin());
}

// true when the environment can force a conflict within the horizon;
// inputs that win immediately are preferred so the witness tree stays short
bool env_wins(GameCtx& ctx, const GameState& st) {
  if (st.t >= ctx.omega) return false;
  std::string key = st.key();
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second != 0;
  uint32_t winning = 0;
  for (uint32_t in_mask : ctx.legal_inputs) {
    CycleInfo ci = cycle_info(ctx, st, in_mask);
    bool all_lose = true;
    bool any_reply = false;
    for (uint32_t out_mask = 0; out_mask < ctx.num_out_masks && all_lose; ++out_mask) {
      GameState next;
      if (!reply_consistent(ctx, st, ci, out_mask, next)) continue;
      any_reply = true;
      push_hist(ctx, next, in_mask);
      if (!env_wins(ctx, next)) all_lose = false;
    }
    if (!any_reply) {
      winning = in_mask + 1;
      break;
    }
    if (all_lose && winning == 0) winning = in_mask + 1;
  }
  ctx.memo[key] = winning;
  return winning != 0;
}

std::shared_ptr<CounterStrategyNode> build_tree(GameCtx& ctx, const GameState& st) {
  auto node = std::make_shared<CounterStrategyNode>();
  uint32_t stored = ctx.memo.at(st.key());
  uint32_t in_mask = stored - 1;
  for (size_t i = 0; i < ctx.spec->inputs.size(); ++i)
    node->input[ctx.spec->inputs[i]] = mask_bit(in_mask, i);
  CycleInfo ci = cycle_info(ctx, st, in_mask);
  bool any_reply = false;
  for (uint32_t out_mask = 0; out_mask < ctx.num_out_masks; ++out_mask) {
    GameState next;
    if (!reply_consistent(ctx, st, ci, out_mask, next)) continue;
    any_reply = true;
    push_hist(ctx, next, in_mask);
    std::map<std::string, bool> outs;
    for (size_t i = 0; i < ctx.spec->outputs.size(); ++i)
      outs[ctx.spec->outputs[i]] = mask_bit(out_mask, i);
    node->branches.emplace_back(std::move(outs), build_tree(ctx, next));
  }
  if (!any_reply) node->conflict = "no output assignment satisfies the pending demands";
  return node;
}

}  // namespace

RealizabilityResult brute_force_realizability(const GxwSpec& spec, int omega) {
  if (spec.inputs.size() + spec.outputs.size() > 8)
    throw InstanceTooLargeError("oracle handles at most 8 variables");
  if (omega > 8 || omega < 1) throw InstanceTooLargeError("oracle handles omega in [1, 8]");

  GameCtx ctx;
  ctx.spec = &spec;
  ctx.omega = omega;
  int max_depth = 0;
  for (const auto& s : spec.subs) {
    GameSub gs;
    gs.pattern = s.pattern();
    gs.parts = &s.parts;
    gs.label = s.label;
    for (const auto& c : s.parts.input_clauses) max_depth = std::max(max_depth, c.depth);
    for (const auto& c : s.parts.release_in) {
      max_depth = std::max(max_depth, c.depth);
      gs.max_rel_depth = std::max(gs.max_rel_depth, c.depth);
    }
    ctx.subs.push_back(gs);
  }
  ctx.hist_len = max_depth;
  ctx.num_out_masks = 1u << spec.outputs.size();

  Trace probe = Trace::empty(spec.inputs, 1);
  for (uint32_t mask = 0; mask < (1u << spec.inputs.size()); ++mask) {
    for (size_t i = 0; i < spec.inputs.size(); ++i) probe.cells[0][i] = mask_bit(mask, i);
    if (!spec.has_assumption() || eval_formula_at(spec.assumption, probe, 0))
      ctx.legal_inputs.push_back(mask);
  }

  GameState init;
  init.hist = {};
  init.lock.assign(ctx.subs.size(), 0);
  init.age.assign(ctx.subs.size(), 0);
  for (size_t k = 0; k < ctx.subs.size(); ++k)
    if (ctx.subs[k].pattern == PatternId::P1) init.lock[k] = 1;

  RealizabilityResult res;
  if (env_wins(ctx, init)) {
    res.realizable = false;
    res.counter_strategy = build_tree(ctx, init);
  }
  return res;
}

EquivalenceResult equivalence_check(const ActorSystem& sys, const GxwSpec& spec, int depth,
                                    size_t random_traces, uint64_t seed) {
  EquivalenceResult res;
  auto try_trace = [&](const Trace& ins) -> bool {
    Trace outs = Trace::empty(spec.outputs, ins.length());
    SimState st = initial_state(sys);
    for (size_t t = 0; t < ins.length(); ++t) {
      std::map<std::string, bool> in;
      for (const auto& v : spec.inputs) in[v] = ins.at(t, v);
      std::map<std::string, bool> out;
      try {
        out = step(sys, st, in);
      } catch (const Error& e) {
        res.ok = false;
        res.counterexample = ins;
        res.reason = e.what();
        return false;
      }
      for (const auto& [k, v] : out) outs.set(t, k, v);
    }
    Trace joint = join_traces(ins, outs);
    auto violations = check_trace(spec, joint);
    for (const auto& v : violations) {
      if (v.label == "assume") continue;
      res.ok = false;
      res.counterexample = joint;
      res.reason = v.label + " violated at cycle " + std::to_string(v.cycle) + ": " + v.reason;
      return false;
    }
    return true;
  };

  size_t n = spec.inputs.size();
  double total_bits = static_cast<double>(n) * depth;
  if (random_traces == 0 && total_bits <= 22) {
    uint64_t count = 1ull << static_cast<uint64_t>(total_bits);
    for (uint64_t word = 0; word < count; ++word) {
      Trace ins = Trace::empty(spec.inputs, depth);
      uint64_t w = word;
      bool legal = true;
      for (int t = 0; t < depth && legal; ++t) {
        for (size_t i = 0; i < n; ++i) {
          ins.cells[t][i] = w & 1;
          w >>= 1;
        }
        if (spec.has_assumption() && !eval_formula_at(spec.assumption, ins, t)) legal = false;
      }
      if (!legal) continue;
      if (!try_trace(ins)) return res;
    }
    return res;
  }
  size_t count = random_traces ? random_traces : 256;
  for (size_t k = 0; k < count; ++k) {
    Trace ins = random_trace(spec, depth, seed + k);
    if (!try_trace(ins)) return res;
  }
  return res;
}

}  // namespace gxw
