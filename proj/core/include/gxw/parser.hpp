#pragma once

#include <string>
#include <vector>

#include "gxw/formula.hpp"

namespace gxw {

/// One top-level formula of a .gxw file, after macro expansion.
struct ParsedFormula {
  std::string label;  // user label or generated F<n>
  Formula formula;
};

/// Raw contents of a .gxw specification file.
///
/// Grammar:
///   file    := item* ;  item := io | macro | assume | formula
///   io      := ("input"|"output") ident ("," ident)* ";"
///   macro   := "let" ident "=" expr ";"
///   assume  := "assume" expr ";"
///   formula := [ident ":"] expr ";"
/// Operator precedence, high to low: "!"/"X" (prefix), "&", "|", "W",
/// "->"/"<->" (right associative), "G" (prefix, loosest). "//" comments.
struct ParsedSpec {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Formula> assumptions;  // bodies of assume items (G implied)
  std::vector<ParsedFormula> formulas;
};

ParsedSpec parse_gxw(const std::string& text, const std::string& filename = "<string>");
ParsedSpec parse_gxw_file(const std::string& path);

}  // namespace gxw
