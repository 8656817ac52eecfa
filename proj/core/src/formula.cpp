#include "gxw/formula.hpp"

#include <algorithm>

namespace gxw {

struct Formula::Node {
  Kind kind;
  std::string name;  // Var only
  VarTag tag = VarTag::Input;
  std::vector<Formula> kids;
};

struct FormulaBuilder {
  static Formula build(Formula::Kind k, std::vector<Formula> kids) {
    auto n = std::make_shared<Formula::Node>();
    n->kind = k;
    n->kids = std::move(kids);
    return Formula(std::move(n));
  }
  static Formula build_var(std::string name, VarTag tag) {
    auto n = std::make_shared<Formula::Node>();
    n->kind = Formula::Kind::Var;
    n->name = std::move(name);
    n->tag = tag;
    return Formula(std::move(n));
  }
};

Formula Formula::var(std::string name, VarTag tag) {
  return FormulaBuilder::build_var(std::move(name), tag);
}
Formula Formula::t() { return FormulaBuilder::build(Kind::True, {}); }
Formula Formula::f() { return FormulaBuilder::build(Kind::False, {}); }
Formula Formula::negate(Formula a) { return FormulaBuilder::build(Kind::Not, {std::move(a)}); }
Formula Formula::conj(Formula a, Formula b) {
  return FormulaBuilder::build(Kind::And, {std::move(a), std::move(b)});
}
Formula Formula::disj(Formula a, Formula b) {
  return FormulaBuilder::build(Kind::Or, {std::move(a), std::move(b)});
}
Formula Formula::conj(std::vector<Formula> xs) {
  if (xs.empty()) return t();
  Formula acc = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) acc = conj(acc, xs[i]);
  return acc;
}
Formula Formula::disj(std::vector<Formula> xs) {
  if (xs.empty()) return f();
  Formula acc = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) acc = disj(acc, xs[i]);
  return acc;
}
Formula Formula::implies(Formula a, Formula b) {
  return FormulaBuilder::build(Kind::Implies, {std::move(a), std::move(b)});
}
Formula Formula::iff(Formula a, Formula b) {
  return FormulaBuilder::build(Kind::Iff, {std::move(a), std::move(b)});
}
Formula Formula::next(Formula a) { return FormulaBuilder::build(Kind::X, {std::move(a)}); }
Formula Formula::next_n(Formula a, int n) {
  Formula r = std::move(a);
  for (int i = 0; i < n; ++i) r = next(r);
  return r;
}
Formula Formula::globally(Formula a) { return FormulaBuilder::build(Kind::G, {std::move(a)}); }
Formula Formula::weak_until(Formula a, Formula b) {
  return FormulaBuilder::build(Kind::W, {std::move(a), std::move(b)});
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::var_name() const { return node_->name; }
VarTag Formula::var_tag() const { return node_->tag; }
size_t Formula::arity() const { return node_->kids.size(); }
Formula Formula::child(size_t i) const { return node_->kids.at(i); }

bool Formula::is_literal() const {
  if (kind() == Kind::Var) return true;
  return kind() == Kind::Not && child(0).kind() == Kind::Var;
}

int Formula::depth() const {
  switch (kind()) {
    case Kind::Var:
    case Kind::True:
    case Kind::False:
      return 0;
    case Kind::X:
      return 1 + child(0).depth();
    default: {
      int d = 0;
      for (size_t i = 0; i < arity(); ++i) d = std::max(d, child(i).depth());
      return d;
    }
  }
}

bool Formula::mentions_input() const {
  if (kind() == Kind::Var) return var_tag() == VarTag::Input;
  for (size_t i = 0; i < arity(); ++i)
    if (child(i).mentions_input()) return true;
  return false;
}

bool Formula::mentions_output() const {
  if (kind() == Kind::Var) return var_tag() == VarTag::Output;
  for (size_t i = 0; i < arity(); ++i)
    if (child(i).mentions_output()) return true;
  return false;
}

namespace {
int prec(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::Var:
    case K::True:
    case K::False:
      return 100;
    case K::Not:
    case K::X:
      return 90;
    case K::And:
      return 80;
    case K::Or:
      return 70;
    case K::W:
      return 60;
    case K::Implies:
    case K::Iff:
      return 50;
    case K::G:
      return 40;
  }
  return 0;
}
}  // namespace

std::string Formula::str() const {
  using K = Kind;
  auto wrap = [this](const Formula& c) {
    std::string s = c.str();
    if (prec(c.kind()) <= prec(kind()) && c.arity() > 1) return "(" + s + ")";
    if (prec(c.kind()) < prec(kind())) return "(" + s + ")";
    return s;
  };
  switch (kind()) {
    case K::Var:
      return var_name();
    case K::True:
      return "true";
    case K::False:
      return "false";
    case K::Not:
      return "!" + wrap(child(0));
    case K::X:
      return "X " + wrap(child(0));
    case K::G:
      return "G (" + child(0).str() + ")";
    case K::And:
      return wrap(child(0)) + " & " + wrap(child(1));
    case K::Or:
      return wrap(child(0)) + " | " + wrap(child(1));
    case K::W:
      return wrap(child(0)) + " W " + wrap(child(1));
    case K::Implies:
      return wrap(child(0)) + " -> " + wrap(child(1));
    case K::Iff:
      return wrap(child(0)) + " <-> " + wrap(child(1));
  }
  return "?";
}

bool Formula::same_tree(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || arity() != other.arity()) return false;
  if (kind() == Kind::Var && (var_name() != other.var_name() || var_tag() != other.var_tag()))
    return false;
  for (size_t i = 0; i < arity(); ++i)
    if (!child(i).same_tree(other.child(i))) return false;
  return true;
}

}  // namespace gxw
