#pragma once

#include <optional>
#include <vector>

namespace gxw {

/// Literals use DIMACS convention: +v / -v, variables numbered from 1.
using Lit = int;
using Clause = std::vector<Lit>;

/// Small CDCL solver: two-watched-literal propagation, first-UIP conflict
/// clauses, non-chronological backjumping. Decisions follow ascending
/// variable order with false first, which the callers rely on for
/// reproducible models.
class SatSolver {
 public:
  explicit SatSolver(int num_vars);

  void add_clause(Clause c);
  int num_vars() const { return static_cast<int>(assign_.size()) - 1; }
  void ensure_vars(int num_vars);

  /// Solves under the given assumptions. Returns model (index 1..n) on sat.
  std::optional<std::vector<bool>> solve(const std::vector<Lit>& assumptions = {});

 private:
  struct WatchedClause {
    Clause lits;
  };

  enum class Value : signed char { Unassigned = 0, True = 1, False = -1 };

  Value value(Lit l) const;
  void assign(Lit l, int reason);
  bool propagate();  // false on conflict (conflict_ set)
  void analyze_and_backjump();
  bool decide();

  std::vector<WatchedClause> clauses_;
  std::vector<std::vector<int>> watches_;  // literal index -> clause ids
  std::vector<Value> assign_;              // by variable
  std::vector<int> level_;                 // by variable
  std::vector<int> reason_;                // by variable, clause id or -1
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;
  int conflict_ = -1;
  bool unsat_ = false;

  int watch_index(Lit l) const;
  void attach(int ci);
  void cancel_until(int level);
};

}  // namespace gxw
