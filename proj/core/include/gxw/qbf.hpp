#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gxw/sat.hpp"
#include "gxw/synthesis.hpp"

namespace gxw {

enum class VarCat { Exist, Univ, Inner };

/// One quantified constraint system with a single top-level alternation:
/// exists(parameters) forall(inputs, free states) exists(defined values):
/// defs AND guarantees. Every Inner variable is functionally defined by the
/// defs clauses, so the inner block never adds decision power; it only keeps
/// the matrix in clausal form.
struct QbfProblem {
  std::vector<VarCat> cat;        // 1-based, cat[0] unused
  std::vector<std::string> name;  // 1-based
  std::vector<int> exist_vars;    // witness order
  std::vector<Clause> defs;
  std::vector<Clause> guarantees;

  int num_vars() const { return static_cast<int>(cat.size()) - 1; }
  int add_var(VarCat c, const std::string& n);
};

struct QbfWitness {
  std::map<std::string, bool> values;  // parameter name -> value
};

/// Single-cycle encoding: transition relations and wiring over one cycle,
/// with state variables left unconstrained. Satisfiability is sound for
/// realizability but not complete (unreachable state combinations are
/// considered too).
QbfProblem encode_static(const PartialSystem& ps, const GxwSpec& spec);

/// Bounded unroll over `omega` cycles starting from the initial states.
QbfProblem encode_unrolled(const PartialSystem& ps, const GxwSpec& spec, int omega);

/// Decides the problem. CEGAR over existential candidates with a SAT-based
/// validity check; candidates and the returned witness are lexicographically
/// smallest with false < true. `use_cegar=false` switches to plain
/// enumeration of the existential space (differential testing path).
std::optional<QbfWitness> solve_2qbf(const QbfProblem& p, bool use_cegar = true);

/// QDIMACS text: prefix e(parameters) a(universals) e(defined), then CNF.
std::string export_qdimacs(const QbfProblem& p);

/// Witness file: one "name=0|1" line per parameter.
std::string witness_to_string(const QbfWitness& w);
QbfWitness witness_from_string(const std::string& text);

/// Fixes every resolution parameter, yielding a runnable controller.
ActorSystem apply_witness(const PartialSystem& ps, const QbfWitness& w);

}  // namespace gxw
