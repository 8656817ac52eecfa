#pragma once

#include <memory>
#include <string>
#include <vector>

namespace gxw {

/// Whether a variable belongs to the declared input or output set.
enum class VarTag { Input, Output };

/// Immutable LTL formula over the operators used by the GXW fragment:
/// variables, constants, !, &, |, ->, <->, X, G, W. U, F and R are not
/// representable; the parser rejects them up front.
class Formula {
 public:
  enum class Kind { Var, True, False, Not, And, Or, Implies, Iff, X, G, W };

  Formula() = default;

  static Formula var(std::string name, VarTag tag);
  static Formula t();
  static Formula f();
  static Formula negate(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula conj(std::vector<Formula> xs);  // empty -> true
  static Formula disj(std::vector<Formula> xs);  // empty -> false
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula next(Formula a);
  static Formula next_n(Formula a, int n);
  static Formula globally(Formula a);
  static Formula weak_until(Formula a, Formula b);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  const std::string& var_name() const;
  VarTag var_tag() const;
  size_t arity() const;
  Formula child(size_t i) const;

  bool is_literal() const;  // v or !v, depth 0

  /// Maximum X-nesting depth.
  int depth() const;

  bool mentions_input() const;
  bool mentions_output() const;

  std::string str() const;

  bool same_tree(const Formula& other) const;

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend struct FormulaBuilder;
};

}  // namespace gxw
