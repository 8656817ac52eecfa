#include "gxw/qbf.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gxw/errors.hpp"
#include "gxw/util.hpp"

namespace gxw {

int QbfProblem::add_var(VarCat c, const std::string& n) {
  if (cat.empty()) {
    cat.push_back(VarCat::Inner);
    name.push_back("");
  }
  cat.push_back(c);
  name.push_back(n);
  int id = static_cast<int>(cat.size()) - 1;
  if (c == VarCat::Exist) exist_vars.push_back(id);
  return id;
}

namespace {

// Small literal-level expression used to clausify definitions by expansion.
struct LExpr {
  enum class Op { Lit, And, Or } op = Op::Lit;
  Lit lit = 0;
  std::vector<LExpr> kids;

  static LExpr of(Lit l) { return {Op::Lit, l, {}}; }
  static LExpr conj(std::vector<LExpr> xs) { return {Op::And, 0, std::move(xs)}; }
  static LExpr disj(std::vector<LExpr> xs) { return {Op::Or, 0, std::move(xs)}; }
};

// CNF/DNF by distribution; expressions stay tiny here.
std::vector<Clause> expr_cnf(const LExpr& e, bool negate) {
  switch (e.op) {
    case LExpr::Op::Lit:
      return {{negate ? -e.lit : e.lit}};
    case LExpr::Op::And:
    case LExpr::Op::Or: {
      bool conj = (e.op == LExpr::Op::And) != negate;
      std::vector<std::vector<Clause>> parts;
      for (const auto& k : e.kids) parts.push_back(expr_cnf(k, negate));
      if (conj) {
        std::vector<Clause> out;
        for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
        return out;
      }
      // disjunction of CNFs: distribute
      std::vector<Clause> acc{{}};
      for (auto& p : parts) {
        std::vector<Clause> next;
        for (const auto& a : acc)
          for (const auto& c : p) {
            Clause merged = a;
            merged.insert(merged.end(), c.begin(), c.end());
            next.push_back(std::move(merged));
          }
        acc = std::move(next);
        if (acc.size() > 4096) throw Error("definition expansion too large");
      }
      return acc;
    }
  }
  return {};
}

bool clause_tautological(const Clause& c) {
  std::set<Lit> s(c.begin(), c.end());
  for (Lit l : s)
    if (s.count(-l)) return true;
  return false;
}

// Encoding context: ports carry a (t, f) literal pair.
struct PortBits {
  Lit t = 0;
  Lit f = 0;
};

class Encoder {
 public:
  Encoder(const PartialSystem& ps, const GxwSpec& spec) : ps_(ps), spec_(spec) {}

  QbfProblem problem;

  void allocate_params() {
    for (const auto& a : ps_.sys.actors) {
      if (a.kind != ActorKind::Res) continue;
      std::string var = a.id.substr(4);  // res_<output variable>
      int id = problem.add_var(VarCat::Exist, var);
      param_lit_[a.id] = id;
      if (a.res_param) defs().push_back({*a.res_param ? id : -id});
    }
  }

  // Encodes one evaluation cycle. `tag` distinguishes frames. When
  // `free_states` is set the pre-states are universal; otherwise
  // `state_in` supplies the pre-state literals. Returns post-state literals.
  std::map<std::string, std::vector<Lit>> encode_frame(
      const std::string& tag, bool free_states,
      const std::map<std::string, std::vector<Lit>>& state_in,
      std::map<std::string, Lit>* input_vars_out) {
    std::map<std::string, PortBits> port;

    for (const auto& v : ps_.sys.ext_inputs) {
      int x = problem.add_var(VarCat::Univ, "in." + v + tag);
      port["$" + v] = {x, -x};
      if (input_vars_out) (*input_vars_out)[v] = x;
    }

    std::map<std::string, std::vector<Lit>> state_out;
    for (const XiElem& e : evaluation_order(ps_.sys)) {
      if (e.is_wire) {
        const Wire& w = ps_.sys.wires[e.index];
        std::string from = ps_.sys.port_name(w.from);
        std::string to = ps_.sys.port_name(w.to);
        PortBits src = port.at(from);
        PortBits dst;
        dst.t = problem.add_var(VarCat::Inner, to + ".t" + tag);
        dst.f = problem.add_var(VarCat::Inner, to + ".f" + tag);
        biimp(dst.t, src.t);
        biimp(dst.f, src.f);
        port[to] = dst;
        continue;
      }
      const Actor& a = ps_.sys.actors[e.index];
      std::vector<PortBits> in;
      for (const auto& p : a.inputs) in.push_back(port.at(a.id + "." + p));
      std::vector<PortBits> out;
      for (const auto& p : a.outputs) {
        PortBits b;
        b.t = problem.add_var(VarCat::Inner, a.id + "." + p + ".t" + tag);
        b.f = problem.add_var(VarCat::Inner, a.id + "." + p + ".f" + tag);
        out.push_back(b);
        port[a.id + "." + p] = b;
      }

      std::vector<Lit> pre;
      if (a.machine && a.machine->num_bits() > 0) {
        if (free_states) {
          for (int b = 0; b < a.machine->num_bits(); ++b)
            pre.push_back(problem.add_var(
                VarCat::Univ, a.id + ".s" + std::to_string(b) + tag));
        } else {
          pre = state_in.at(a.id);
        }
      }
      std::vector<Lit> post = encode_actor(a, in, out, pre, tag);
      if (!post.empty()) state_out[a.id] = post;
    }

    // resolution no-conflict pairs for this frame
    for (size_t ai = 0; ai < ps_.sys.actors.size(); ++ai) {
      const Actor& a = ps_.sys.actors[ai];
      if (a.kind != ActorKind::Res) continue;
      std::vector<PortBits> ins;
      for (const auto& p : a.inputs) ins.push_back(port.at(a.id + "." + p));
      for (size_t i = 0; i < ins.size(); ++i)
        for (size_t j = 0; j < ins.size(); ++j)
          if (i != j) frame_guarantees_.push_back({-ins[i].t, -ins[j].f});
    }

    // invariants (P5) over the external output values of this frame
    for (const auto& s : spec_.subs) {
      if (s.pattern() != PatternId::P5) continue;
      LExpr e = formula_expr(s.parts.invariant, [&](const std::string& v) {
        return port.at("$" + v).t;
      });
      for (auto& c : expr_cnf(e, false))
        if (!clause_tautological(c)) frame_guarantees_.push_back(std::move(c));
    }

    // assumption for this frame
    if (spec_.has_assumption()) {
      LExpr e = formula_expr(spec_.assumption, [&](const std::string& v) {
        return port.at("$" + v).t;
      });
      int ok = problem.add_var(VarCat::Inner, "assume.ok" + tag);
      define_expr(ok, e);
      ok_vars_.push_back(ok);
    }
    return state_out;
  }

  void finish() {
    Clause guard;  // any violated assumption frame vacates the guarantees
    for (int ok : ok_vars_) guard.push_back(-ok);
    for (auto& c : frame_guarantees_) {
      Clause g = guard;
      g.insert(g.end(), c.begin(), c.end());
      problem.guarantees.push_back(std::move(g));
    }
  }

  std::vector<Clause>& defs() { return problem.defs; }

  // Initial-state unit clauses: allocates inner vars pinned to the machine's
  // initial bits.
  std::map<std::string, std::vector<Lit>> initial_states() {
    std::map<std::string, std::vector<Lit>> st;
    for (const auto& a : ps_.sys.actors) {
      if (!a.machine || a.machine->num_bits() == 0) continue;
      std::vector<bool> init = a.machine->initial_state();
      std::vector<Lit> bits;
      for (size_t b = 0; b < init.size(); ++b) {
        int v = problem.add_var(VarCat::Inner, a.id + ".s" + std::to_string(b) + "@init");
        defs().push_back({init[b] ? v : -v});
        bits.push_back(v);
      }
      st[a.id] = bits;
    }
    return st;
  }

 private:
  void biimp(Lit a, Lit b) {
    defs().push_back({-a, b});
    defs().push_back({a, -b});
  }

  void define_expr(Lit v, const LExpr& e) {
    for (auto& c : expr_cnf(e, false)) {
      if (clause_tautological(c)) continue;
      c.push_back(-v);
      defs().push_back(std::move(c));
    }
    for (auto& c : expr_cnf(e, true)) {
      if (clause_tautological(c)) continue;
      c.push_back(v);
      defs().push_back(std::move(c));
    }
  }

  LExpr bexpr_to_lexpr(const BExprPtr& e, const std::vector<PortBits>& in,
                       const std::vector<Lit>& pre, Lit true_lit) {
    switch (e->op) {
      case BExpr::Op::False:
        return LExpr::of(-true_lit);
      case BExpr::Op::True:
        return LExpr::of(true_lit);
      case BExpr::Op::Input:
        return LExpr::of(in.at(e->index).t);
      case BExpr::Op::StateBit:
        return LExpr::of(pre.at(e->index));
      case BExpr::Op::Not: {
        LExpr k = bexpr_to_lexpr(e->kids[0], in, pre, true_lit);
        return negate_lexpr(k);
      }
      case BExpr::Op::And: {
        std::vector<LExpr> kids;
        for (const auto& k : e->kids) kids.push_back(bexpr_to_lexpr(k, in, pre, true_lit));
        return LExpr::conj(std::move(kids));
      }
      case BExpr::Op::Or: {
        std::vector<LExpr> kids;
        for (const auto& k : e->kids) kids.push_back(bexpr_to_lexpr(k, in, pre, true_lit));
        return LExpr::disj(std::move(kids));
      }
    }
    return LExpr::of(-true_lit);
  }

  static LExpr negate_lexpr(const LExpr& e) {
    switch (e.op) {
      case LExpr::Op::Lit:
        return LExpr::of(-e.lit);
      case LExpr::Op::And: {
        std::vector<LExpr> kids;
        for (const auto& k : e.kids) kids.push_back(negate_lexpr(k));
        return LExpr::disj(std::move(kids));
      }
      case LExpr::Op::Or: {
        std::vector<LExpr> kids;
        for (const auto& k : e.kids) kids.push_back(negate_lexpr(k));
        return LExpr::conj(std::move(kids));
      }
    }
    return e;
  }

  template <typename PortLit>
  LExpr formula_expr(const Formula& f, PortLit port_lit) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Var:
        return LExpr::of(port_lit(f.var_name()));
      case K::True:
        return LExpr::of(true_lit());
      case K::False:
        return LExpr::of(-true_lit());
      case K::Not:
        return negate_lexpr(formula_expr(f.child(0), port_lit));
      case K::And:
        return LExpr::conj({formula_expr(f.child(0), port_lit),
                            formula_expr(f.child(1), port_lit)});
      case K::Or:
        return LExpr::disj({formula_expr(f.child(0), port_lit),
                            formula_expr(f.child(1), port_lit)});
      case K::Implies:
        return LExpr::disj({negate_lexpr(formula_expr(f.child(0), port_lit)),
                            formula_expr(f.child(1), port_lit)});
      case K::Iff: {
        LExpr a = formula_expr(f.child(0), port_lit);
        LExpr b = formula_expr(f.child(1), port_lit);
        return LExpr::disj({LExpr::conj({a, b}),
                            LExpr::conj({negate_lexpr(a), negate_lexpr(b)})});
      }
      default:
        throw Error("temporal operator in a depth-0 context: " + f.str());
    }
  }

  Lit true_lit() {
    if (!true_var_) {
      true_var_ = problem.add_var(VarCat::Inner, "const.true");
      defs().push_back({true_var_});
    }
    return true_var_;
  }

  // Emits the defining clauses of one actor; returns post-state literals.
  std::vector<Lit> encode_actor(const Actor& a, const std::vector<PortBits>& in,
                                const std::vector<PortBits>& out, const std::vector<Lit>& pre,
                                const std::string& tag) {
    switch (a.kind) {
      case ActorKind::Not:
        biimp(out[0].t, in[0].f);
        biimp(out[0].f, in[0].t);
        return {};
      case ActorKind::Or: {
        std::vector<LExpr> ts, fs;
        for (const auto& b : in) {
          ts.push_back(LExpr::of(b.t));
          fs.push_back(LExpr::of(b.f));
        }
        define_expr(out[0].t, LExpr::disj(std::move(ts)));
        define_expr(out[0].f, LExpr::conj(std::move(fs)));
        return {};
      }
      case ActorKind::And: {
        std::vector<LExpr> ts, fs;
        for (const auto& b : in) {
          ts.push_back(LExpr::of(b.t));
          fs.push_back(LExpr::of(b.f));
        }
        define_expr(out[0].t, LExpr::conj(std::move(ts)));
        define_expr(out[0].f, LExpr::disj(std::move(fs)));
        return {};
      }
      case ActorKind::ConstFalse:
        defs().push_back({-out[0].t});
        defs().push_back({out[0].f});
        return {};
      case ActorKind::ConstTrue:
        defs().push_back({out[0].t});
        defs().push_back({-out[0].f});
        return {};
      case ActorKind::Res: {
        Lit A = param_lit_.at(a.id);
        std::vector<LExpr> any_t, any_f, all_dash;
        for (const auto& b : in) {
          any_t.push_back(LExpr::of(b.t));
          any_f.push_back(LExpr::of(b.f));
          all_dash.push_back(LExpr::conj({LExpr::of(-b.t), LExpr::of(-b.f)}));
        }
        LExpr T = LExpr::disj(any_t);
        LExpr F = LExpr::disj(any_f);
        LExpr D = LExpr::conj(all_dash);
        define_expr(out[0].t, LExpr::disj({T, LExpr::conj({D, LExpr::of(A)})}));
        define_expr(out[0].f,
                    LExpr::conj({negate_lexpr(T),
                                 LExpr::disj({F, LExpr::conj({D, LExpr::of(-A)})})}));
        return {};
      }
      default: {
        const MealyMachine& m = *a.machine;
        for (size_t o = 0; o < m.outputs.size(); ++o) {
          define_expr(out[o].t, bexpr_to_lexpr(m.outputs[o].t, in, pre, true_lit()));
          define_expr(out[o].f, bexpr_to_lexpr(m.outputs[o].f, in, pre, true_lit()));
        }
        std::vector<Lit> post;
        for (size_t b = 0; b < m.next_bits.size(); ++b) {
          int v = problem.add_var(VarCat::Inner,
                                  a.id + ".s" + std::to_string(b) + "'" + tag);
          define_expr(v, bexpr_to_lexpr(m.next_bits[b], in, pre, true_lit()));
          post.push_back(v);
        }
        return post;
      }
    }
  }

  const PartialSystem& ps_;
  const GxwSpec& spec_;
  std::map<std::string, Lit> param_lit_;
  std::vector<Clause> frame_guarantees_;
  std::vector<int> ok_vars_;
  int true_var_ = 0;
};

}  // namespace

QbfProblem encode_static(const PartialSystem& ps, const GxwSpec& spec) {
  Encoder enc(ps, spec);
  enc.allocate_params();
  enc.encode_frame("", /*free_states=*/true, {}, nullptr);
  enc.finish();
  return std::move(enc.problem);
}

QbfProblem encode_unrolled(const PartialSystem& ps, const GxwSpec& spec, int omega) {
  if (omega < 1) throw Error("unroll depth must be >= 1");
  Encoder enc(ps, spec);
  enc.allocate_params();
  auto st = enc.initial_states();
  for (int a = 0; a < omega; ++a)
    st = enc.encode_frame("@" + std::to_string(a), /*free_states=*/false, st, nullptr);
  enc.finish();
  return std::move(enc.problem);
}

namespace {

// Validity checker shared by both solve paths: SAT query for
// defs AND ok-defs AND (some guarantee clause violated), under candidate
// assumptions.
class ValidityChecker {
 public:
  explicit ValidityChecker(const QbfProblem& p) : p_(p), solver_(p.num_vars()) {
    for (const auto& c : p.defs) solver_.add_clause(c);
    if (p.guarantees.empty()) {
      trivially_valid_ = true;
      return;
    }
    int next = p.num_vars() + 1;
    Clause any;
    for (const auto& g : p.guarantees) {
      int sel = next++;
      solver_.ensure_vars(sel);
      // sel <-> clause violated
      Clause back{sel};
      for (Lit l : g) {
        solver_.add_clause({-sel, -l});
        back.push_back(l);
      }
      solver_.add_clause(back);
      any.push_back(sel);
    }
    solver_.add_clause(any);
  }

  // Returns nullopt when the candidate is valid; otherwise the universal
  // assignment of a counterexample.
  std::optional<std::map<int, bool>> counterexample(const std::vector<Lit>& candidate) {
    if (trivially_valid_) return std::nullopt;
    auto model = solver_.solve(candidate);
    if (!model) return std::nullopt;
    std::map<int, bool> univ;
    for (int v = 1; v <= p_.num_vars(); ++v)
      if (p_.cat[v] == VarCat::Univ) univ[v] = (*model)[v];
    return univ;
  }

 private:
  const QbfProblem& p_;
  SatSolver solver_;
  bool trivially_valid_ = false;
};

std::vector<Lit> candidate_lits(const QbfProblem& p, const std::vector<bool>& bits) {
  std::vector<Lit> lits;
  for (size_t i = 0; i < p.exist_vars.size(); ++i)
    lits.push_back(bits[i] ? p.exist_vars[i] : -p.exist_vars[i]);
  return lits;
}

QbfWitness make_witness(const QbfProblem& p, const std::vector<bool>& bits) {
  QbfWitness w;
  for (size_t i = 0; i < p.exist_vars.size(); ++i)
    w.values[p.name[p.exist_vars[i]]] = bits[i];
  return w;
}

std::optional<QbfWitness> solve_enum(const QbfProblem& p, ValidityChecker& checker) {
  size_t n = p.exist_vars.size();
  if (n > 24) throw Error("existential space too large to enumerate");
  for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<bool> bits(n);
    // lexicographic order: bit 0 is the most significant position
    for (size_t i = 0; i < n; ++i) bits[i] = (mask >> (n - 1 - i)) & 1;
    if (!checker.counterexample(candidate_lits(p, bits))) return make_witness(p, bits);
  }
  return std::nullopt;
}

std::optional<QbfWitness> solve_cegar(const QbfProblem& p, ValidityChecker& checker) {
  size_t n = p.exist_vars.size();
  // candidate space solver: existential variables keep their ids, inner
  // variables get fresh copies per refinement
  SatSolver cand(p.num_vars());

  auto lex_min_candidate = [&]() -> std::optional<std::vector<bool>> {
    std::vector<Lit> fixed;
    if (!cand.solve({})) return std::nullopt;
    std::vector<bool> bits;
    for (size_t i = 0; i < n; ++i) {
      fixed.push_back(-p.exist_vars[i]);
      if (cand.solve(fixed)) {
        bits.push_back(false);
      } else {
        fixed.back() = p.exist_vars[i];
        bits.push_back(true);
      }
    }
    return bits;
  };

  int next_copy = p.num_vars() + 1;
  for (;;) {
    auto bits = lex_min_candidate();
    if (!bits) return std::nullopt;
    auto cex = checker.counterexample(candidate_lits(p, *bits));
    if (!cex) return make_witness(p, *bits);

    // refine: the matrix must hold at this universal point for any future
    // candidate; inner variables are copied fresh
    std::map<int, int> copy;
    auto remap = [&](Lit l) -> std::optional<Lit> {
      int v = std::abs(l);
      bool neg = l < 0;
      switch (p.cat[v]) {
        case VarCat::Exist:
          return l;
        case VarCat::Univ: {
          bool val = cex->at(v);
          if (val != neg) return std::nullopt;  // literal true: clause satisfied
          return 0;                             // literal false: drop it
        }
        case VarCat::Inner: {
          auto it = copy.find(v);
          int nv;
          if (it == copy.end()) {
            nv = next_copy++;
            cand.ensure_vars(nv);
            copy[v] = nv;
          } else {
            nv = it->second;
          }
          return neg ? -nv : nv;
        }
      }
      return l;
    };
    auto add_constraints = [&](const std::vector<Clause>& cs) {
      for (const auto& c : cs) {
        Clause out;
        bool satisfied = false;
        for (Lit l : c) {
          auto r = remap(l);
          if (!r) {
            satisfied = true;
            break;
          }
          if (*r != 0) out.push_back(*r);
        }
        if (!satisfied) cand.add_clause(std::move(out));
      }
    };
    add_constraints(p.defs);
    add_constraints(p.guarantees);
  }
}

}  // namespace

std::optional<QbfWitness> solve_2qbf(const QbfProblem& p, bool use_cegar) {
  ValidityChecker checker(p);
  if (p.exist_vars.empty()) {
    if (checker.counterexample({})) return std::nullopt;
    return QbfWitness{};
  }
  return use_cegar ? solve_cegar(p, checker) : solve_enum(p, checker);
}

std::string export_qdimacs(const QbfProblem& p) {
  std::ostringstream out;
  out << "c gxw 2qbf encoding\n";
  for (int v = 1; v <= p.num_vars(); ++v) out << "c var " << v << " " << p.name[v] << "\n";
  size_t nclauses = p.defs.size() + p.guarantees.size();
  out << "p cnf " << p.num_vars() << " " << nclauses << "\n";
  std::vector<int> e1, a1, e2;
  for (int v = 1; v <= p.num_vars(); ++v) {
    switch (p.cat[v]) {
      case VarCat::Exist:
        e1.push_back(v);
        break;
      case VarCat::Univ:
        a1.push_back(v);
        break;
      case VarCat::Inner:
        e2.push_back(v);
        break;
    }
  }
  auto block = [&](char q, const std::vector<int>& vars) {
    if (vars.empty()) return;
    out << q;
    for (int v : vars) out << " " << v;
    out << " 0\n";
  };
  block('e', e1);
  block('a', a1);
  block('e', e2);
  auto clause = [&](const Clause& c) {
    for (Lit l : c) out << l << " ";
    out << "0\n";
  };
  for (const auto& c : p.defs) clause(c);
  for (const auto& c : p.guarantees) clause(c);
  return out.str();
}

std::string witness_to_string(const QbfWitness& w) {
  std::string out;
  for (const auto& [k, v] : w.values) out += k + "=" + (v ? "1" : "0") + "\n";
  return out;
}

QbfWitness witness_from_string(const std::string& text) {
  QbfWitness w;
  for (const auto& line : split(text, '\n')) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("bad witness line: " + line);
    w.values[line.substr(0, eq)] = line.substr(eq + 1) == "1";
  }
  return w;
}

ActorSystem apply_witness(const PartialSystem& ps, const QbfWitness& w) {
  ActorSystem sys = ps.sys;
  sys.order_cache.reset();
  sys.plan_cache.reset();
  for (auto& a : sys.actors) {
    if (a.kind != ActorKind::Res) continue;
    std::string var = a.id.substr(4);
    auto it = w.values.find(var);
    if (it == w.values.end()) {
      if (a.res_param) continue;
      throw UnknownWitnessVariableError("witness misses parameter for output " + var);
    }
    a.res_param = it->second;
  }
  return sys;
}

}  // namespace gxw
