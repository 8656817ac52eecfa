#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gxw/dnf.hpp"
#include "gxw/formula.hpp"
#include "gxw/spec.hpp"
#include "gxw/validate.hpp"

namespace gxw::test {

/// Truth-table semantics for propositional/X-only formulas: cell(step, var)
/// provides the word. This is the independent oracle the DNF code is checked
/// against.
inline bool eval_window(const Formula& f,
                        const std::function<bool(int, const std::string&)>& cell, int step = 0) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Var:
      return cell(step, f.var_name());
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Not:
      return !eval_window(f.child(0), cell, step);
    case K::X:
      return eval_window(f.child(0), cell, step + 1);
    case K::And:
      return eval_window(f.child(0), cell, step) && eval_window(f.child(1), cell, step);
    case K::Or:
      return eval_window(f.child(0), cell, step) || eval_window(f.child(1), cell, step);
    case K::Implies:
      return !eval_window(f.child(0), cell, step) || eval_window(f.child(1), cell, step);
    case K::Iff:
      return eval_window(f.child(0), cell, step) == eval_window(f.child(1), cell, step);
    default:
      throw std::runtime_error("temporal operator in window evaluation");
  }
}

inline bool eval_clauses_window(const std::vector<DnfClause>& cs,
                                const std::function<bool(int, const std::string&)>& cell) {
  for (const auto& c : cs)
    if (c.eval(cell)) return true;
  return false;
}

/// Enumerates all assignments of `vars` over `steps` cells and checks that
/// the formula and the clause list agree everywhere.
inline bool dnf_equivalent(const Formula& f, const std::vector<DnfClause>& cs,
                           const std::vector<std::string>& vars, int steps) {
  size_t cells = vars.size() * static_cast<size_t>(steps);
  for (uint64_t mask = 0; mask < (1ull << cells); ++mask) {
    auto cell = [&](int step, const std::string& v) {
      size_t vi = 0;
      while (vars[vi] != v) ++vi;
      return (mask >> (static_cast<size_t>(step) * vars.size() + vi)) & 1 ? true : false;
    };
    if (eval_window(f, cell) != eval_clauses_window(cs, cell)) return false;
  }
  return true;
}

/// All input traces of the given length (inputs listed in `vars`).
inline std::vector<Trace> all_traces(const std::vector<std::string>& vars, int length) {
  std::vector<Trace> out;
  size_t cells = vars.size() * static_cast<size_t>(length);
  for (uint64_t mask = 0; mask < (1ull << cells); ++mask) {
    Trace tr = Trace::empty(vars, length);
    for (int t = 0; t < length; ++t)
      for (size_t i = 0; i < vars.size(); ++i)
        tr.cells[t][i] = (mask >> (static_cast<size_t>(t) * vars.size() + i)) & 1;
    out.push_back(std::move(tr));
  }
  return out;
}

inline Trace random_bits(const std::vector<std::string>& vars, int length, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Trace tr = Trace::empty(vars, length);
  for (int t = 0; t < length; ++t)
    for (size_t i = 0; i < vars.size(); ++i) tr.cells[t][i] = rng() & 1;
  return tr;
}

/// Naive finite-trace falsification: the joint prefix definitely violates
/// the conjunct iff every extension of the missing future cells leaves a
/// violation in place. Implemented literally by enumerating extensions.
inline bool prefix_unextendable(const GxwSpec& spec, const Trace& joint) {
  int max_depth = 0;
  for (const auto& s : spec.subs) {
    for (const auto& c : s.parts.input_clauses) max_depth = std::max(max_depth, c.depth);
    for (const auto& c : s.parts.release_in) max_depth = std::max(max_depth, c.depth);
  }
  std::vector<std::string> all_vars = spec.inputs;
  all_vars.insert(all_vars.end(), spec.outputs.begin(), spec.outputs.end());

  size_t T = joint.length();
  size_t ext_cells = all_vars.size() * static_cast<size_t>(max_depth);
  auto violated_on = [&](const Trace& word) {
    // word has length T + max_depth; violations are only counted at
    // cycles < T, with every window now fully determined
    for (const auto& s : spec.subs) {
      const PatternParts& p = s.parts;
      auto clause_at = [&](const DnfClause& c, size_t at) {
        return c.eval([&](int j, const std::string& v) { return word.at(at + j, v); });
      };
      auto any_at = [&](const std::vector<DnfClause>& cs, size_t at) {
        for (const auto& c : cs)
          if (at + c.depth < word.length() && clause_at(c, at)) return true;
        return false;
      };
      auto out_ok = [&](size_t t) { return word.at(t, p.out_var) == p.out_positive; };
      switch (s.pattern()) {
        case PatternId::P3:
          for (size_t t = p.i; t < T; ++t)
            if (any_at(p.input_clauses, t - p.i) && !out_ok(t)) return true;
          break;
        case PatternId::P4:
          for (size_t t = p.i; t < T; ++t)
            if ((any_at(p.input_clauses, t - p.i) == p.out_positive) != word.at(t, p.out_var))
              return true;
          break;
        case PatternId::P5:
          for (size_t t = 0; t < T; ++t) {
            auto cell = [&](int, const std::string& v) { return word.at(t, v); };
            if (!eval_window(p.invariant, cell)) return true;
          }
          break;
        case PatternId::P1: {
          for (size_t v = 0; v < T; ++v) {
            bool released = false;
            for (size_t sr = 0; sr <= v && !released; ++sr)
              released = any_at(p.input_clauses, sr);
            if (released) break;
            if (!out_ok(v)) return true;
          }
          break;
        }
        case PatternId::P2: {
          std::vector<DnfClause> rel = p.release_in;
          rel.insert(rel.end(), p.release_out.begin(), p.release_out.end());
          for (size_t t1 = 0; t1 + p.i < T; ++t1) {
            if (!any_at(p.input_clauses, t1)) continue;
            size_t u = t1 + p.i;
            for (size_t v = u; v < T; ++v) {
              bool released = false;
              for (size_t sr = u; sr <= v && !released; ++sr) released = any_at(rel, sr);
              if (released) break;
              if (!out_ok(v)) return true;
            }
          }
          break;
        }
        default:
          break;
      }
    }
    return false;
  };

  for (uint64_t mask = 0; mask < (1ull << ext_cells); ++mask) {
    Trace word = joint;
    word.cells.resize(T + max_depth, std::vector<bool>(all_vars.size(), false));
    for (int t = 0; t < max_depth; ++t)
      for (size_t i = 0; i < all_vars.size(); ++i)
        word.cells[T + t][word.var_index(all_vars[i])] =
            (mask >> (static_cast<size_t>(t) * all_vars.size() + i)) & 1;
    if (!violated_on(word)) return false;  // a satisfying extension exists
  }
  return true;
}

/// Random specification inside the complete-check regime: at most 3
/// conjuncts over at most 3 inputs and 2 outputs, trigger depth at most 1,
/// input-only releases, no invariants. Degenerate parts (tautological or
/// contradictory windows) are rerolled, matching the premise that the
/// environment can always falsify a pending window.
inline std::string random_restricted_spec(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> ins = {"a", "b", "c"};
  std::vector<std::string> outs = {"o", "p"};

  auto literal = [&](int max_depth) {
    int d = static_cast<int>(rng() % (max_depth + 1));
    std::string v = ins[rng() % ins.size()];
    bool posi = rng() & 1;
    std::string txt = (posi ? "" : "!") + v;
    for (int k = 0; k < d; ++k) txt = "X " + txt;
    return std::make_tuple(d, v, posi, txt);
  };

  // builds a DNF of 1..2 clauses, each of 1..2 literals; rerolls until the
  // window function is neither constant-true nor constant-false
  auto dnf_text = [&](int max_depth) {
    for (;;) {
      int nclauses = 1 + static_cast<int>(rng() % 2);
      std::vector<std::vector<std::tuple<int, std::string, bool>>> clauses;
      std::string txt;
      for (int ci = 0; ci < nclauses; ++ci) {
        int nlits = 1 + static_cast<int>(rng() % 2);
        std::vector<std::tuple<int, std::string, bool>> lits;
        std::string ctxt;
        for (int li = 0; li < nlits; ++li) {
          auto [d, v, posi, ltxt] = literal(max_depth);
          bool dup = false;
          for (auto& [d2, v2, p2] : lits) dup |= d2 == d && v2 == v;
          if (dup) continue;
          lits.push_back({d, v, posi});
          ctxt += (ctxt.empty() ? "" : " & ") + ltxt;
        }
        if (lits.empty()) continue;
        clauses.push_back(lits);
        txt += (txt.empty() ? "" : " | ") + ("(" + ctxt + ")");
      }
      if (clauses.empty()) continue;
      // evaluate over all windows of depth max_depth+1
      size_t cells = ins.size() * static_cast<size_t>(max_depth + 1);
      bool always = true, never = true;
      for (uint64_t mask = 0; mask < (1ull << cells); ++mask) {
        auto cell = [&](int step, const std::string& v) {
          size_t vi = 0;
          while (ins[vi] != v) ++vi;
          return (mask >> (static_cast<size_t>(step) * ins.size() + vi)) & 1 ? true : false;
        };
        bool val = false;
        for (const auto& lits : clauses) {
          bool cv = true;
          for (const auto& [d, v, posi] : lits) cv &= cell(d, v) == posi;
          val |= cv;
        }
        always &= val;
        never &= !val;
      }
      if (!always && !never) return txt;
    }
  };

  int k = 1 + static_cast<int>(rng() % 3);
  std::string text = "input a, b, c;\noutput o, p;\n";
  for (int m = 0; m < k; ++m) {
    std::string out = outs[rng() % outs.size()];
    std::string lit = (rng() & 1 ? "" : "!") + out;
    int kind = static_cast<int>(rng() % 4);
    int i = static_cast<int>(rng() % 2);
    std::string label = "S" + std::to_string(m + 1) + ": ";
    switch (kind) {
      case 0:  // initial-until
        text += label + lit + " W (" + dnf_text(1) + ");\n";
        break;
      case 1: {  // trigger-until, input-only release
        std::string xs = i == 1 ? "X " : "";
        text += label + "G((" + dnf_text(i) + ") -> " + xs + "(" + lit + " W (" +
                dnf_text(1) + ")));\n";
        break;
      }
      case 2: {  // if-then
        std::string xs = i == 1 ? "X " : "";
        text += label + "G((" + dnf_text(i) + ") -> " + xs + lit + ");\n";
        break;
      }
      default: {  // iff
        std::string xs = i == 1 ? "X " : "";
        text += label + "G((" + dnf_text(i) + ") <-> " + xs + lit + ");\n";
        break;
      }
    }
  }
  return text;
}

}  // namespace gxw::test
