#include "gxw/spec.hpp"

#include <algorithm>

#include "gxw/errors.hpp"
#include "gxw/util.hpp"

namespace gxw {

std::string pattern_name(PatternId p) {
  switch (p) {
    case PatternId::P1:
      return "P1";
    case PatternId::P2:
      return "P2";
    case PatternId::P3:
      return "P3";
    case PatternId::P4:
      return "P4";
    case PatternId::P5:
      return "P5";
    case PatternId::P6:
      return "P6";
  }
  return "?";
}

namespace {

bool is_output_literal(const Formula& f) {
  if (f.kind() == Formula::Kind::Var) return f.var_tag() == VarTag::Output;
  return f.kind() == Formula::Kind::Not && f.child(0).kind() == Formula::Kind::Var &&
         f.child(0).var_tag() == VarTag::Output;
}

bool is_propositional_x(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::G:
    case K::W:
      return false;
    default:
      for (size_t i = 0; i < f.arity(); ++i)
        if (!is_propositional_x(f.child(i))) return false;
      return true;
  }
}

// Strips the X^i prefix, returning (i, body).
std::pair<int, Formula> strip_next(Formula f) {
  int i = 0;
  while (f.kind() == Formula::Kind::X) {
    ++i;
    f = f.child(0);
  }
  return {i, f};
}

}  // namespace

PatternId detect_pattern(const Formula& f) {
  using K = Formula::Kind;
  if (f.kind() == K::G) {
    Formula body = f.child(0);
    if (is_propositional_x(body)) {
      if (body.depth() == 0 && !body.mentions_input() ) return PatternId::P5;
      if (body.depth() == 0 && !body.mentions_output()) return PatternId::P6;
      // G over a mixed or X-bearing propositional body fits no row
      if (!body.mentions_input()) return PatternId::P5;  // output-only with X: rejected later
    }
    if (body.kind() == K::Iff) return PatternId::P4;
    if (body.kind() == K::Implies) {
      auto [i, rhs] = strip_next(body.child(1));
      if (rhs.kind() == K::W) return PatternId::P2;
      if (is_propositional_x(rhs)) return PatternId::P3;
    }
    throw NoMatchError("formula matches no GXW pattern: " + f.str());
  }
  if (f.kind() == K::W) return PatternId::P1;
  throw NoMatchError("formula matches no GXW pattern: " + f.str());
}

namespace {

std::vector<DnfClause> input_part_clauses(const Formula& f, int i, const std::string& ctx,
                                          std::vector<std::string>* warnings, bool pad) {
  if (f.mentions_output())
    throw NoMatchError(ctx + ": trigger part mentions output variables: " + f.str());
  if (f.depth() > i)
    throw NoMatchError(ctx + ": trigger has " + std::to_string(f.depth()) +
                       " nested X but the consequent allows only " + std::to_string(i));
  auto clauses = to_dnf(f, warnings);
  if (pad)
    for (auto& c : clauses) c = pad_clause(c, i);
  return clauses;
}

void bind_output_literal(const Formula& f, PatternParts& parts, const std::string& ctx) {
  if (!is_output_literal(f))
    throw NoMatchError(ctx + ": expected a single output literal, got: " + f.str());
  if (f.kind() == Formula::Kind::Not) {
    parts.out_positive = false;
    parts.out_var = f.child(0).var_name();
  } else {
    parts.out_positive = true;
    parts.out_var = f.var_name();
  }
}

}  // namespace

PatternParts project_parts(const Formula& f, PatternId p, std::vector<std::string>* warnings) {
  using K = Formula::Kind;
  PatternParts parts;
  parts.pattern = p;
  switch (p) {
    case PatternId::P1: {
      // out_lit W input_part
      bind_output_literal(f.child(0), parts, "P1");
      Formula rel = f.child(1);
      parts.i = rel.depth();
      parts.input_clauses = input_part_clauses(rel, parts.i, "P1", warnings, /*pad=*/false);
      break;
    }
    case PatternId::P3:
    case PatternId::P4: {
      Formula body = f.child(0);
      auto [i, rhs] = strip_next(body.child(1));
      parts.i = i;
      bind_output_literal(rhs, parts, pattern_name(p));
      parts.input_clauses =
          input_part_clauses(body.child(0), i, pattern_name(p), warnings, /*pad=*/true);
      break;
    }
    case PatternId::P2: {
      Formula body = f.child(0);
      auto [i, rhs] = strip_next(body.child(1));
      parts.i = i;
      bind_output_literal(rhs.child(0), parts, "P2");
      parts.input_clauses =
          input_part_clauses(body.child(0), i, "P2", warnings, /*pad=*/true);
      Formula release = rhs.child(1);
      if (release.kind() == K::G || release.kind() == K::W)
        throw NoMatchError("P2: release must be propositional: " + release.str());
      for (auto& c : to_dnf(release, warnings)) {
        if (c.input_only()) {
          parts.release_in.push_back(c);
        } else if (c.output_only()) {
          if (c.depth > 0)
            throw MixedClauseError("P2: release clause over outputs must be depth 0: " +
                                   c.str());
          parts.release_out.push_back(c);
        } else {
          throw MixedClauseError("P2: release clause mixes input and output variables: " +
                                 c.str());
        }
      }
      break;
    }
    case PatternId::P5: {
      Formula body = f.child(0);
      if (body.mentions_input() || body.depth() > 0)
        throw NoMatchError("P5: invariant must be over outputs only, without X: " +
                           body.str());
      parts.invariant = body;
      break;
    }
    case PatternId::P6: {
      Formula body = f.child(0);
      if (body.mentions_output())
        throw NoMatchError("P6: assumption mentions output variables: " + body.str());
      if (body.depth() > 0)
        throw NoMatchError(
            "P6: assumptions are restricted to depth 0 (no X operators): " + body.str());
      break;
    }
  }
  return parts;
}

bool GxwSpec::has_assumption() const {
  return assumption.valid() && assumption.kind() != Formula::Kind::True;
}

const SubSpec* GxwSpec::find(const std::string& label) const {
  for (const auto& s : subs)
    if (s.label == label) return &s;
  return nullptr;
}

GxwSpec validate_spec(const ParsedSpec& parsed) {
  GxwSpec spec;
  spec.inputs = parsed.inputs;
  spec.outputs = parsed.outputs;

  std::vector<Formula> assumed;
  for (const auto& a : parsed.assumptions) {
    Formula g = Formula::globally(a);
    project_parts(g, PatternId::P6, &spec.warnings);  // validation only
    assumed.push_back(a);
  }

  for (const auto& pf : parsed.formulas) {
    PatternId p = detect_pattern(pf.formula);
    if (p == PatternId::P6) {
      project_parts(pf.formula, p, &spec.warnings);
      assumed.push_back(pf.formula.child(0));
      continue;
    }
    PatternParts parts = project_parts(pf.formula, p, &spec.warnings);
    if (p != PatternId::P5 && parts.input_clauses.empty()) {
      spec.warnings.push_back(pf.label +
                              ": trigger is unsatisfiable, sub-specification is vacuous "
                              "and was skipped");
      continue;
    }
    spec.subs.push_back({pf.label, pf.formula, std::move(parts)});
  }

  spec.assumption = assumed.empty() ? Formula::t() : Formula::conj(assumed);
  spec.assumption_dnf = to_dnf(spec.assumption, &spec.warnings);
  if (spec.assumption_dnf.empty())
    throw UnsatisfiableAssumptionError("assumption is unsatisfiable");
  return spec;
}

GxwSpec load_spec(const std::string& path) { return validate_spec(parse_gxw_file(path)); }

GxwSpec spec_from_string(const std::string& text) {
  return validate_spec(parse_gxw(text, "<string>"));
}

int compute_omega(const GxwSpec& spec) {
  int omega = 0;
  for (const auto& s : spec.subs) {
    if (s.pattern() == PatternId::P5) continue;
    omega += 1 + s.parts.i;
  }
  return omega;
}

bool bounded_check_complete(const GxwSpec& spec) {
  for (const auto& s : spec.subs) {
    if (s.pattern() == PatternId::P5) return false;
    if (s.pattern() == PatternId::P2 && !s.parts.release_out.empty()) return false;
  }
  return true;
}

}  // namespace gxw
