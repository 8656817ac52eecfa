#include "gxw/sat.hpp"

#include <algorithm>

#include "gxw/errors.hpp"

namespace gxw {

SatSolver::SatSolver(int num_vars) {
  assign_.resize(1, Value::Unassigned);
  ensure_vars(num_vars);
}

void SatSolver::ensure_vars(int num_vars) {
  if (num_vars + 1 <= static_cast<int>(assign_.size())) return;
  assign_.resize(num_vars + 1, Value::Unassigned);
  level_.resize(num_vars + 1, 0);
  reason_.resize(num_vars + 1, -1);
  watches_.resize(2 * (num_vars + 1));
}

int SatSolver::watch_index(Lit l) const { return 2 * std::abs(l) + (l < 0 ? 1 : 0); }

SatSolver::Value SatSolver::value(Lit l) const {
  Value v = assign_[std::abs(l)];
  if (v == Value::Unassigned) return v;
  bool val = v == Value::True;
  if (l < 0) val = !val;
  return val ? Value::True : Value::False;
}

void SatSolver::assign(Lit l, int reason) {
  int v = std::abs(l);
  assign_[v] = l > 0 ? Value::True : Value::False;
  level_[v] = static_cast<int>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(l);
}

void SatSolver::add_clause(Clause c) {
  std::sort(c.begin(), c.end(), [](Lit a, Lit b) { return std::abs(a) < std::abs(b); });
  // drop duplicates, detect tautologies
  Clause dedup;
  for (Lit l : c) {
    if (!dedup.empty() && dedup.back() == l) continue;
    if (!dedup.empty() && dedup.back() == -l) return;  // tautology
    dedup.push_back(l);
  }
  c = std::move(dedup);
  for (Lit l : c) ensure_vars(std::abs(l));
  if (c.empty()) {
    unsat_ = true;
    return;
  }
  if (c.size() == 1) {
    // store as clause so propagation finds it from the root level
    int ci = static_cast<int>(clauses_.size());
    clauses_.push_back({c});
    if (value(c[0]) == Value::False && level_[std::abs(c[0])] == 0)
      unsat_ = true;
    else if (value(c[0]) == Value::Unassigned && trail_lim_.empty())
      assign(c[0], ci);
    else if (trail_lim_.empty() && value(c[0]) == Value::False)
      unsat_ = true;
    return;
  }
  int ci = static_cast<int>(clauses_.size());
  clauses_.push_back({std::move(c)});
  attach(ci);
}

void SatSolver::attach(int ci) {
  const Clause& c = clauses_[ci].lits;
  watches_[watch_index(c[0])].push_back(ci);
  watches_[watch_index(c[1])].push_back(ci);
}

bool SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    // clauses watching -p must find a new watch or propagate/conflict
    std::vector<int>& wl = watches_[watch_index(-p)];
    std::vector<int> keep;
    keep.reserve(wl.size());
    for (size_t k = 0; k < wl.size(); ++k) {
      int ci = wl[k];
      Clause& c = clauses_[ci].lits;
      if (c[0] == -p) std::swap(c[0], c[1]);
      // c[1] == -p now
      if (value(c[0]) == Value::True) {
        keep.push_back(ci);
        continue;
      }
      bool moved = false;
      for (size_t j = 2; j < c.size(); ++j) {
        if (value(c[j]) != Value::False) {
          std::swap(c[1], c[j]);
          watches_[watch_index(c[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      keep.push_back(ci);
      if (value(c[0]) == Value::False) {
        conflict_ = ci;
        for (size_t j = k + 1; j < wl.size(); ++j) keep.push_back(wl[j]);
        wl = std::move(keep);
        return false;
      }
      assign(c[0], ci);
    }
    wl = std::move(keep);
  }
  return true;
}

void SatSolver::cancel_until(int lvl) {
  if (static_cast<int>(trail_lim_.size()) <= lvl) return;
  int target = trail_lim_[lvl];
  for (int i = static_cast<int>(trail_.size()) - 1; i >= target; --i)
    assign_[std::abs(trail_[i])] = Value::Unassigned;
  trail_.resize(target);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

void SatSolver::analyze_and_backjump() {
  // first UIP conflict analysis
  Clause learnt;
  std::vector<bool> seen(assign_.size(), false);
  int counter = 0;
  Lit asserting = 0;
  int ci = conflict_;
  size_t idx = trail_.size();
  int cur_level = static_cast<int>(trail_lim_.size());

  Lit p = 0;
  for (;;) {
    const Clause& c = clauses_[ci].lits;
    for (Lit q : c) {
      if (q == p) continue;
      int v = std::abs(q);
      if (seen[v] || level_[v] == 0) continue;
      seen[v] = true;
      if (level_[v] == cur_level)
        ++counter;
      else
        learnt.push_back(q);
    }
    // find next literal on the trail at current level
    for (;;) {
      p = trail_[--idx];
      if (seen[std::abs(p)]) break;
    }
    seen[std::abs(p)] = false;
    --counter;
    if (counter == 0) {
      asserting = -p;
      break;
    }
    ci = reason_[std::abs(p)];
  }
  learnt.insert(learnt.begin(), asserting);

  int back = 0;
  for (size_t i = 1; i < learnt.size(); ++i) back = std::max(back, level_[std::abs(learnt[i])]);
  cancel_until(back);
  conflict_ = -1;

  if (learnt.size() == 1) {
    if (value(learnt[0]) == Value::False) {
      unsat_ = true;
      return;
    }
    int nci = static_cast<int>(clauses_.size());
    clauses_.push_back({learnt});
    if (value(learnt[0]) == Value::Unassigned) assign(learnt[0], nci);
    return;
  }
  // put a literal of the backjump level in the second watch slot
  for (size_t i = 1; i < learnt.size(); ++i)
    if (level_[std::abs(learnt[i])] == back) {
      std::swap(learnt[1], learnt[i]);
      break;
    }
  int nci = static_cast<int>(clauses_.size());
  clauses_.push_back({learnt});
  attach(nci);
  assign(learnt[0], nci);
}

bool SatSolver::decide() {
  for (int v = 1; v < static_cast<int>(assign_.size()); ++v) {
    if (assign_[v] == Value::Unassigned) {
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      assign(-v, -1);  // false first
      return true;
    }
  }
  return false;
}

std::optional<std::vector<bool>> SatSolver::solve(const std::vector<Lit>& assumptions) {
  if (unsat_) return std::nullopt;
  cancel_until(0);
  // re-propagate root units
  qhead_ = 0;
  if (!propagate()) {
    unsat_ = true;
    return std::nullopt;
  }
  // assumptions become decisions; a conflict below/at the assumption levels
  // means unsat under these assumptions
  size_t num_assumed = 0;
  for (Lit a : assumptions) {
    ensure_vars(std::abs(a));
    if (value(a) == Value::True) continue;
    if (value(a) == Value::False) {
      cancel_until(0);
      return std::nullopt;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    ++num_assumed;
    assign(a, -1);
    if (!propagate()) {
      cancel_until(0);
      return std::nullopt;
    }
  }
  int assumed_levels = static_cast<int>(trail_lim_.size());

  for (;;) {
    if (!propagate()) {
      if (static_cast<int>(trail_lim_.size()) <= assumed_levels) {
        // conflict depends on assumptions only
        cancel_until(0);
        return std::nullopt;
      }
      analyze_and_backjump();
      if (unsat_) return std::nullopt;
      if (static_cast<int>(trail_lim_.size()) < assumed_levels) {
        // backjumped into the assumption prefix; re-establish assumptions
        cancel_until(0);
        return solve(assumptions);
      }
      continue;
    }
    if (!decide()) {
      std::vector<bool> model(assign_.size(), false);
      for (int v = 1; v < static_cast<int>(assign_.size()); ++v)
        model[v] = assign_[v] == Value::True;
      cancel_until(0);
      return model;
    }
  }
}

}  // namespace gxw
