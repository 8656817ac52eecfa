#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gxw/dnf.hpp"
#include "gxw/formula.hpp"
#include "gxw/parser.hpp"

namespace gxw {

enum class PatternId { P1, P2, P3, P4, P5, P6 };

std::string pattern_name(PatternId p);

/// Classifies one top-level conjunct against the GXW pattern table.
/// Checks run in the order P6, P5, P4, P2, P3, P1. Throws NoMatchError when
/// the formula fits none of them.
PatternId detect_pattern(const Formula& f);

/// The subformulas bound to the placeholders of one pattern row.
struct PatternParts {
  PatternId pattern;
  int i = 0;  // X prefix of the consequent (P2/P3/P4), trigger depth for P1

  std::vector<DnfClause> input_clauses;  // trigger (P1..P4), padded to i for P2/P3/P4
  std::string out_var;                   // P1..P4
  bool out_positive = true;

  std::vector<DnfClause> release_in;   // P2: input clauses, natural depth
  std::vector<DnfClause> release_out;  // P2: output clauses, depth 0

  Formula invariant;  // P5 only
};

PatternParts project_parts(const Formula& f, PatternId p,
                           std::vector<std::string>* warnings = nullptr);

/// One classified sub-specification.
struct SubSpec {
  std::string label;
  Formula formula;
  PatternParts parts;
  PatternId pattern() const { return parts.pattern; }
};

/// A validated GXW specification: I/O sets, assumption, classified conjuncts.
struct GxwSpec {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  Formula assumption;                     // input-only, depth 0; true when absent
  std::vector<DnfClause> assumption_dnf;  // cached DNF of the assumption
  std::vector<SubSpec> subs;              // patterns P1..P5
  std::vector<std::string> warnings;

  bool has_assumption() const;
  const SubSpec* find(const std::string& label) const;
};

/// Validates a parsed file: expands nothing further (macros are gone by
/// parse time), classifies every formula, folds P6 conjuncts into the
/// assumption and checks the variable-purity rules of the fragment.
GxwSpec validate_spec(const ParsedSpec& parsed);

GxwSpec load_spec(const std::string& path);
GxwSpec spec_from_string(const std::string& text);

/// Unroll bound: number of P1..P4 conjuncts plus the sum of their trigger
/// depths. P5 contributes nothing.
int compute_omega(const GxwSpec& spec);

/// True when the bounded unroll check is complete for this spec: every P2
/// release is input-only and there is no P5 invariant.
bool bounded_check_complete(const GxwSpec& spec);

}  // namespace gxw
