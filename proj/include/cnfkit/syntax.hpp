#pragma once

// Concrete syntax for formulas.
//
//   formula := impl
//   impl    := or ("->" impl)?
//   or      := and ("|" and)*
//   and     := neg ("&" neg)*
//   neg     := "~" neg | atom
//   atom    := "true" | "false" | IDENT | "(" formula ")"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cnfkit/errors.hpp"
#include "cnfkit/formula.hpp"

namespace cnf {

namespace detail {

enum class Tok { Tilde, Amp, Bar, Arrow, LParen, RParen, True, False, Ident, End, Invalid };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
    const std::size_t start = pos_;
    if (pos_ == src_.size()) return {Tok::End, start, {}};
    const char c = src_[pos_];
    switch (c) {
      case '~': return single(Tok::Tilde);
      case '&': return single(Tok::Amp);
      case '|': return single(Tok::Bar);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          pos_ += 2;
          return {Tok::Arrow, start, src_.substr(start, 2)};
        }
        return single(Tok::Invalid);
      default:
        break;
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      std::string_view word = src_.substr(start, pos_ - start);
      if (word == "true") return {Tok::True, start, word};
      if (word == "false") return {Tok::False, start, word};
      return {Tok::Ident, start, word};
    }
    return single(Tok::Invalid);
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

  Token single(Tok kind) {
    const std::size_t start = pos_++;
    return {kind, start, src_.substr(start, 1)};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  Formula parse_all() {
    Formula f = implication();
    if (current_.kind != Tok::End) fail({"'&'", "'|'", "'->'", "end of input"});
    return f;
  }

 private:
  static constexpr std::size_t kMaxNesting = 10000;

  void advance() { current_ = lexer_.next(); }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found;
    switch (current_.kind) {
      case Tok::End: found = "end of input"; break;
      case Tok::Ident: found = "identifier '" + std::string(current_.text) + "'"; break;
      default: found = "'" + std::string(current_.text) + "'"; break;
    }
    throw SyntaxError(current_.offset, std::move(expected), found);
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (current_.kind != Tok::Arrow) return lhs;
    advance();
    return Formula::Impl(std::move(lhs), implication());
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (current_.kind == Tok::Bar) {
      advance();
      f = Formula::Or(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = negation();
    while (current_.kind == Tok::Amp) {
      advance();
      f = Formula::And(std::move(f), negation());
    }
    return f;
  }

  // "~" is right-recursive in the grammar; counting the prefix keeps long
  // negation chains off the call stack.
  Formula negation() {
    std::size_t count = 0;
    while (current_.kind == Tok::Tilde) {
      ++count;
      advance();
    }
    Formula f = atom();
    while (count-- > 0) f = Formula::Neg(std::move(f));
    return f;
  }

  Formula atom() {
    switch (current_.kind) {
      case Tok::True:
        advance();
        return Formula::Const(true);
      case Tok::False:
        advance();
        return Formula::Const(false);
      case Tok::Ident: {
        std::string name(current_.text);
        advance();
        return Formula::Var(std::move(name));
      }
      case Tok::LParen: {
        if (++nesting_ > kMaxNesting) fail({"at most " + std::to_string(kMaxNesting) + " nested '('"});
        advance();
        Formula inner = implication();
        if (current_.kind != Tok::RParen) fail({"'&'", "'|'", "'->'", "')'"});
        advance();
        --nesting_;
        return inner;
      }
      default:
        fail({"'~'", "'('", "'true'", "'false'", "identifier"});
    }
  }

  Lexer lexer_;
  Token current_{Tok::End, 0, {}};
  std::size_t nesting_ = 0;
};

inline int precedence(Connective c) {
  switch (c) {
    case Connective::Impl: return 1;
    case Connective::Or: return 2;
    case Connective::And: return 3;
    case Connective::Neg: return 4;
    default: return 5;
  }
}

template <bool I>
void print_to(const BasicFormula<I>& phi, std::string& out) {
  const BasicFormula<I>* f = &phi;
  while (f->is(Connective::Neg)) {
    out += '~';
    f = &f->operand();
  }
  if (f != &phi && f->is_binary()) {
    out += '(';
    print_to(*f, out);
    out += ')';
    return;
  }
  switch (f->kind()) {
    case Connective::Var:
      out += f->name();
      return;
    case Connective::Const:
      out += f->value() ? "true" : "false";
      return;
    default:
      break;
  }
  const int prec = precedence(f->kind());
  const bool right_assoc = f->is(Connective::Impl);
  const int lp = precedence(f->lhs().kind());
  const int rp = precedence(f->rhs().kind());
  const bool wrap_lhs = lp < prec || (lp == prec && right_assoc);
  const bool wrap_rhs = rp < prec || (rp == prec && !right_assoc);

  if (wrap_lhs) out += '(';
  print_to(f->lhs(), out);
  if (wrap_lhs) out += ')';
  out += f->is(Connective::And) ? " & " : f->is(Connective::Or) ? " | " : " -> ";
  if (wrap_rhs) out += '(';
  print_to(f->rhs(), out);
  if (wrap_rhs) out += ')';
}

}  // namespace detail

/// Parses formula text; throws SyntaxError on malformed or empty input.
inline Formula parse(std::string_view text) { return detail::Parser(text).parse_all(); }

/// Minimally parenthesized text such that `parse(print(phi)) == phi`.
template <bool I>
std::string print(const BasicFormula<I>& phi) {
  std::string out;
  detail::print_to(phi, out);
  return out;
}

inline std::string print_wi(const FormulaWI& phi) { return print(phi); }

}  // namespace cnf
