#pragma once

// Tokenizer and recursive-descent parser for the formula grammar:
//
//   formula := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := '~' unary                       (first-order input only)
//            | 'exists' ident (',' ident)* '.' formula
//            | '(' formula ')' | 'true' | 'false'
//            | ident '=' ident | ident [ '(' [ident (',' ident)*] ')' ]

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pmt/syntax.hpp"

namespace pmt::syntax {

enum class Tok {
  Ident, Int, LParen, RParen, LBrace, RBrace, Comma, Semi, Dot, Slash,
  Eq, Amp, Bar, Tilde, Arrow, Assign, Colon, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

/// '#' and '//' start comments running to end of line.
std::vector<Token> tokenize(std::string_view text);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token &peek(std::size_t ahead = 0) const;
  Token next();
  bool at(Tok k) const { return peek().kind == k; }
  bool at_keyword(std::string_view kw) const { return at(Tok::Ident) && peek().text == kw; }
  Token expect(Tok k, std::string_view what);
  void expect_keyword(std::string_view kw);
  std::string expect_ident(std::string_view what);
  std::size_t expect_int(std::string_view what);
  [[noreturn]] void fail(const std::string &msg) const;
  [[noreturn]] void fail_at(const Token &t, const std::string &msg) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Formula parse_formula(TokenStream &ts, const Signature &sig, bool allow_negation);

/// Positive formula over sig; negation is a parse error.
Formula parse_formula(std::string_view text, const Signature &sig);
/// First-order formula (negation allowed), used for Morleisation input.
Formula parse_fo_formula(std::string_view text, const Signature &sig);

}  // namespace pmt::syntax
