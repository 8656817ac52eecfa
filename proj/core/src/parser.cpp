#include "gxw/parser.hpp"

#include <cctype>
#include <deque>
#include <map>
#include <set>

#include "gxw/errors.hpp"
#include "gxw/util.hpp"

namespace gxw {

namespace {

struct Token {
  enum class Type { Ident, Keyword, Punct, End };
  Type type;
  std::string text;
  int line;
};

const std::set<std::string> kKeywords = {"input", "output", "let",  "assume",
                                         "true",  "false",  "G",    "X",
                                         "W",     "U",      "F",    "R"};

class Lexer {
 public:
  Lexer(const std::string& text, std::string file) : text_(text), file_(std::move(file)) {}

  const Token& peek(size_t n = 0) {
    while (queue_.size() <= n) queue_.push_back(scan());
    return queue_[n];
  }

  Token take() {
    peek();
    Token t = queue_.front();
    queue_.pop_front();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(file_ + ":" + std::to_string(peek().line) + ": " + msg);
  }

 private:
  Token scan() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) return {Token::Type::End, "", line_};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t b = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string w = text_.substr(b, pos_ - b);
      return {kKeywords.count(w) ? Token::Type::Keyword : Token::Type::Ident, w, line_};
    }
    static const std::vector<std::string> puncts = {"<->", "->", ";", ",", "=",
                                                    "(",   ")",  "!", "&", "|", ":"};
    for (const auto& p : puncts) {
      if (text_.compare(pos_, p.size(), p) == 0) {
        pos_ += p.size();
        return {Token::Type::Punct, p, line_};
      }
    }
    throw ParseError(file_ + ":" + std::to_string(line_) + ": unexpected character '" +
                     std::string(1, c) + "'");
  }

  const std::string& text_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  std::deque<Token> queue_;
};

class Parser {
 public:
  Parser(const std::string& text, const std::string& file) : lex_(text, file) {}

  ParsedSpec run() {
    ParsedSpec spec;
    int anon = 0;
    while (lex_.peek().type != Token::Type::End) {
      const Token t = lex_.peek();
      if (t.type == Token::Type::Keyword && (t.text == "input" || t.text == "output")) {
        bool in = t.text == "input";
        lex_.take();
        for (;;) {
          Token id = expect_ident("variable name");
          declare(id.text, in ? VarTag::Input : VarTag::Output, spec);
          if (lex_.peek().text == ",") {
            lex_.take();
            continue;
          }
          break;
        }
        expect_punct(";");
      } else if (t.type == Token::Type::Keyword && t.text == "let") {
        lex_.take();
        Token id = expect_ident("macro name");
        if (vars_.count(id.text) || macros_.count(id.text))
          lex_.fail("'" + id.text + "' is already defined");
        expect_punct("=");
        Formula body = parse_expr();
        expect_punct(";");
        macros_[id.text] = body;
      } else if (t.type == Token::Type::Keyword && t.text == "assume") {
        lex_.take();
        Formula body = parse_expr();
        expect_punct(";");
        spec.assumptions.push_back(body);
      } else {
        std::string label;
        if (t.type == Token::Type::Ident && lex_.peek(1).text == ":") {
          label = lex_.take().text;
          lex_.take();  // ':'
        }
        Formula f = parse_expr();
        expect_punct(";");
        if (label.empty()) label = "F" + std::to_string(++anon);
        spec.formulas.push_back({label, f});
      }
    }
    return spec;
  }

 private:
  void declare(const std::string& name, VarTag tag, ParsedSpec& spec) {
    if (vars_.count(name)) lex_.fail("variable '" + name + "' declared twice");
    if (macros_.count(name)) lex_.fail("'" + name + "' is already a macro");
    vars_[name] = tag;
    (tag == VarTag::Input ? spec.inputs : spec.outputs).push_back(name);
  }

  Token expect_ident(const std::string& what) {
    Token t = lex_.take();
    if (t.type != Token::Type::Ident) lex_.fail("expected " + what);
    return t;
  }

  void expect_punct(const std::string& p) {
    Token t = lex_.take();
    if (t.type != Token::Type::Punct || t.text != p) lex_.fail("expected '" + p + "'");
  }

  // expr := "G" expr | impl
  Formula parse_expr() {
    if (lex_.peek().type == Token::Type::Keyword && lex_.peek().text == "G") {
      lex_.take();
      return Formula::globally(parse_expr());
    }
    return parse_impl();
  }

  // impl := wexpr [("->" | "<->") expr], right associative
  Formula parse_impl() {
    Formula lhs = parse_w();
    const Token t = lex_.peek();
    if (t.type == Token::Type::Punct && (t.text == "->" || t.text == "<->")) {
      std::string op = lex_.take().text;
      Formula rhs = parse_expr();
      return op == "->" ? Formula::implies(lhs, rhs) : Formula::iff(lhs, rhs);
    }
    return lhs;
  }

  // wexpr := orexpr ["W" wexpr]
  Formula parse_w() {
    Formula lhs = parse_or();
    if (lex_.peek().type == Token::Type::Keyword && lex_.peek().text == "W") {
      lex_.take();
      return Formula::weak_until(lhs, parse_w());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (lex_.peek().text == "|") {
      lex_.take();
      lhs = Formula::disj(lhs, parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (lex_.peek().text == "&") {
      lex_.take();
      lhs = Formula::conj(lhs, parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token t = lex_.peek();
    if (t.type == Token::Type::Punct && t.text == "!") {
      lex_.take();
      return Formula::negate(parse_unary());
    }
    if (t.type == Token::Type::Keyword && t.text == "X") {
      lex_.take();
      return Formula::next(parse_unary());
    }
    if (t.type == Token::Type::Keyword && (t.text == "U" || t.text == "F" || t.text == "R")) {
      lex_.fail("operator '" + t.text + "' is outside the GXW fragment (only G, X, W)");
    }
    return parse_atom();
  }

  Formula parse_atom() {
    Token t = lex_.take();
    if (t.type == Token::Type::Punct && t.text == "(") {
      Formula f = parse_expr();
      expect_punct(")");
      return f;
    }
    if (t.type == Token::Type::Keyword && t.text == "true") return Formula::t();
    if (t.type == Token::Type::Keyword && t.text == "false") return Formula::f();
    if (t.type == Token::Type::Ident) {
      auto m = macros_.find(t.text);
      if (m != macros_.end()) return m->second;
      auto v = vars_.find(t.text);
      if (v != vars_.end()) return Formula::var(t.text, v->second);
      lex_.fail("unknown identifier '" + t.text + "' (declare it with input/output or let)");
    }
    lex_.fail("expected a formula, got '" + t.text + "'");
    return Formula::f();
  }

  Lexer lex_;
  std::map<std::string, VarTag> vars_;
  std::map<std::string, Formula> macros_;
};

}  // namespace

ParsedSpec parse_gxw(const std::string& text, const std::string& filename) {
  Parser p(text, filename);
  return p.run();
}

ParsedSpec parse_gxw_file(const std::string& path) {
  return parse_gxw(read_file(path), path);
}

}  // namespace gxw
