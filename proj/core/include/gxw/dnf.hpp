#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gxw/formula.hpp"

namespace gxw {

/// A literal X^j v or X^j !v. `depth` counts the X prefixes.
struct Literal {
  int depth = 0;
  std::string var;
  bool positive = true;
  VarTag tag = VarTag::Input;

  auto operator<=>(const Literal&) const = default;
};

/// Conjunction of literals. `depth` may exceed the largest literal depth
/// after padding with X^i true, which adds no constraint but widens the
/// evaluation window to depth+1 cycles.
struct DnfClause {
  std::vector<Literal> literals;  // kept sorted, deduplicated
  int depth = 0;

  bool input_only() const;
  bool output_only() const;
  int literal_depth() const;  // max over literals, 0 when empty

  /// True iff some pair of literals contradicts (same depth/var, both signs).
  bool contradictory() const;

  /// Evaluates the conjunction on a window: cell(j, var) gives the value of
  /// `var` at offset j from the window start.
  bool eval(const std::function<bool(int, const std::string&)>& cell) const;

  /// Variables mentioned, in first-use order.
  std::vector<std::string> vars() const;

  std::string str() const;  // e.g. "!a@0 & a@1"

  auto operator<=>(const DnfClause&) const = default;
};

DnfClause make_clause(std::vector<Literal> lits);
DnfClause parse_clause(const std::string& text, VarTag tag);  // inverse of str()

/// Converts a propositional / X-only formula to DNF. Contradictory clauses
/// are removed (a note is appended to `warnings` when given). The result is
/// sorted for reproducible builds; an empty list means false, a list holding
/// one empty clause means true.
std::vector<DnfClause> to_dnf(const Formula& f, std::vector<std::string>* warnings = nullptr);

/// Pads a clause to the given depth (X^i true). Errors when c.depth > i.
DnfClause pad_clause(const DnfClause& c, int i);

/// Rebuilds a formula from clauses (for round-trip checks).
Formula dnf_to_formula(const std::vector<DnfClause>& clauses);

}  // namespace gxw
