#include "gxw/dnf.hpp"

#include <algorithm>
#include <set>

#include "gxw/errors.hpp"
#include "gxw/util.hpp"

namespace gxw {

bool DnfClause::input_only() const {
  return std::all_of(literals.begin(), literals.end(),
                     [](const Literal& l) { return l.tag == VarTag::Input; });
}

bool DnfClause::output_only() const {
  return std::all_of(literals.begin(), literals.end(),
                     [](const Literal& l) { return l.tag == VarTag::Output; });
}

int DnfClause::literal_depth() const {
  int d = 0;
  for (const auto& l : literals) d = std::max(d, l.depth);
  return d;
}

bool DnfClause::contradictory() const {
  for (size_t i = 0; i + 1 < literals.size(); ++i) {
    const Literal& a = literals[i];
    const Literal& b = literals[i + 1];
    if (a.depth == b.depth && a.var == b.var && a.positive != b.positive) return true;
  }
  return false;
}

bool DnfClause::eval(const std::function<bool(int, const std::string&)>& cell) const {
  for (const auto& l : literals)
    if (cell(l.depth, l.var) != l.positive) return false;
  return true;
}

std::vector<std::string> DnfClause::vars() const {
  std::vector<std::string> out;
  for (const auto& l : literals)
    if (std::find(out.begin(), out.end(), l.var) == out.end()) out.push_back(l.var);
  return out;
}

std::string DnfClause::str() const {
  if (literals.empty()) return "true";
  std::vector<std::string> parts;
  for (const auto& l : literals)
    parts.push_back((l.positive ? "" : "!") + l.var + "@" + std::to_string(l.depth));
  return join(parts, " & ");
}

DnfClause make_clause(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  DnfClause c;
  c.literals = std::move(lits);
  c.depth = c.literal_depth();
  return c;
}

DnfClause parse_clause(const std::string& text, VarTag tag) {
  DnfClause c;
  if (text == "true") return c;
  int maxd = 0;
  for (auto& part : split(text, '&')) {
    Literal l;
    l.tag = tag;
    std::string s = part;
    if (!s.empty() && s[0] == '!') {
      l.positive = false;
      s = s.substr(1);
    }
    auto at = s.find('@');
    if (at == std::string::npos) throw ParseError("bad clause literal: " + part);
    l.var = s.substr(0, at);
    l.depth = std::stoi(s.substr(at + 1));
    maxd = std::max(maxd, l.depth);
    c.literals.push_back(l);
  }
  std::sort(c.literals.begin(), c.literals.end());
  c.depth = maxd;
  return c;
}

namespace {

// Pushes X through connectives and rewrites ->, <-> and ! down to literals.
// `depth` is the number of X operators crossed so far; `neg` the parity of
// negations. The result is in negation normal form over X^j literals.
Formula normalize(const Formula& f, int depth, bool neg) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Var: {
      Formula v = Formula::next_n(Formula::var(f.var_name(), f.var_tag()), depth);
      return neg ? Formula::negate(v) : v;
    }
    case K::True:
      return neg ? Formula::f() : Formula::t();
    case K::False:
      return neg ? Formula::t() : Formula::f();
    case K::Not:
      return normalize(f.child(0), depth, !neg);
    case K::X:
      return normalize(f.child(0), depth + 1, neg);
    case K::And: {
      Formula a = normalize(f.child(0), depth, neg);
      Formula b = normalize(f.child(1), depth, neg);
      return neg ? Formula::disj(a, b) : Formula::conj(a, b);
    }
    case K::Or: {
      Formula a = normalize(f.child(0), depth, neg);
      Formula b = normalize(f.child(1), depth, neg);
      return neg ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    case K::Implies: {
      Formula a = normalize(f.child(0), depth, !neg);
      Formula b = normalize(f.child(1), depth, neg);
      return neg ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    case K::Iff: {
      // (a & b) | (!a & !b), negated: (a & !b) | (!a & b)
      Formula pp = Formula::conj(normalize(f.child(0), depth, false),
                                 normalize(f.child(1), depth, neg));
      Formula nn = Formula::conj(normalize(f.child(0), depth, true),
                                 normalize(f.child(1), depth, !neg));
      return Formula::disj(pp, nn);
    }
    case K::G:
    case K::W:
      throw TemporalOperatorError("temporal operator inside a propositional context: " +
                                  f.str());
  }
  throw Error("unreachable");
}

// NNF over X^j literals -> clause lists by distribution.
std::vector<DnfClause> clauses_of(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return {DnfClause{}};
    case K::False:
      return {};
    case K::Or: {
      auto a = clauses_of(f.child(0));
      auto b = clauses_of(f.child(1));
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case K::And: {
      auto a = clauses_of(f.child(0));
      auto b = clauses_of(f.child(1));
      std::vector<DnfClause> out;
      for (const auto& ca : a)
        for (const auto& cb : b) {
          std::vector<Literal> lits = ca.literals;
          lits.insert(lits.end(), cb.literals.begin(), cb.literals.end());
          out.push_back(make_clause(std::move(lits)));
        }
      return out;
    }
    default: {
      // X^j literal
      int d = 0;
      Formula g = f;
      bool pos = true;
      if (g.kind() == K::Not) {
        pos = false;
        g = g.child(0);
      }
      while (g.kind() == K::X) {
        ++d;
        g = g.child(0);
        if (g.kind() == K::Not) {
          pos = !pos;
          g = g.child(0);
        }
      }
      if (g.kind() == K::True || g.kind() == K::False) {
        bool val = (g.kind() == K::True) == pos;
        return val ? std::vector<DnfClause>{DnfClause{}} : std::vector<DnfClause>{};
      }
      if (g.kind() != K::Var) throw Error("not in literal form: " + f.str());
      Literal l{d, g.var_name(), pos, g.var_tag()};
      return {make_clause({l})};
    }
  }
}

}  // namespace

std::vector<DnfClause> to_dnf(const Formula& f, std::vector<std::string>* warnings) {
  Formula nnf = normalize(f, 0, false);
  std::vector<DnfClause> clauses = clauses_of(nnf);
  std::vector<DnfClause> kept;
  for (auto& c : clauses) {
    if (c.contradictory()) {
      if (warnings)
        warnings->push_back("dropping contradictory clause: " + c.str());
      continue;
    }
    kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  // a true clause absorbs everything
  for (const auto& c : kept)
    if (c.literals.empty()) return {DnfClause{}};
  return kept;
}

DnfClause pad_clause(const DnfClause& c, int i) {
  if (c.depth > i)
    throw DepthExceededError("clause " + c.str() + " has depth " + std::to_string(c.depth) +
                             " > " + std::to_string(i));
  DnfClause out = c;
  out.depth = i;
  return out;
}

Formula dnf_to_formula(const std::vector<DnfClause>& clauses) {
  std::vector<Formula> terms;
  for (const auto& c : clauses) {
    std::vector<Formula> lits;
    for (const auto& l : c.literals) {
      Formula v = Formula::var(l.var, l.tag);
      if (!l.positive) v = Formula::negate(v);
      lits.push_back(Formula::next_n(v, l.depth));
    }
    terms.push_back(Formula::conj(std::move(lits)));
  }
  return Formula::disj(std::move(terms));
}

}  // namespace gxw
