#include "pmt/parse.hpp"

#include <cctype>
#include <charconv>

#include "pmt/error.hpp"

namespace pmt::syntax {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Int, std::string(text.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "->") {
      out.push_back({Tok::Arrow, "->", l, cl});
      advance(2);
      continue;
    }
    if (two == ":=") {
      out.push_back({Tok::Assign, ":=", l, cl});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semi; break;
      case '.': k = Tok::Dot; break;
      case '/': k = Tok::Slash; break;
      case '=': k = Tok::Eq; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      case '~': k = Tok::Tilde; break;
      case ':': k = Tok::Colon; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({k, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const Token &TokenStream::peek(std::size_t ahead) const {
  std::size_t p = pos_ + ahead;
  return p < tokens_.size() ? tokens_[p] : tokens_.back();
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

void TokenStream::fail_at(const Token &t, const std::string &msg) const {
  throw ParseError(msg, t.line, t.column);
}

void TokenStream::fail(const std::string &msg) const { fail_at(peek(), msg); }

Token TokenStream::expect(Tok k, std::string_view what) {
  if (!at(k)) {
    const Token &t = peek();
    fail("expected " + std::string(what) + ", found " + (t.kind == Tok::End ? "end of input" : "'" + t.text + "'"));
  }
  return next();
}

void TokenStream::expect_keyword(std::string_view kw) {
  if (!at_keyword(kw)) fail("expected '" + std::string(kw) + "'");
  next();
}

std::string TokenStream::expect_ident(std::string_view what) { return expect(Tok::Ident, what).text; }

std::size_t TokenStream::expect_int(std::string_view what) {
  Token t = expect(Tok::Int, what);
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc()) fail_at(t, "integer out of range");
  return v;
}

namespace {

bool is_reserved(std::string_view s) {
  return s == "exists" || s == "true" || s == "false";
}

class FormulaParser {
 public:
  FormulaParser(TokenStream &ts, const Signature &sig, bool neg) : ts_(ts), sig_(sig), neg_(neg) {}

  Formula disjunction() {
    std::vector<Formula> ops{conjunction()};
    while (ts_.at(Tok::Bar)) {
      ts_.next();
      ops.push_back(conjunction());
    }
    return Formula::disj(std::move(ops));
  }

 private:
  Formula conjunction() {
    std::vector<Formula> ops{unary()};
    while (ts_.at(Tok::Amp)) {
      ts_.next();
      ops.push_back(unary());
    }
    return Formula::conj(std::move(ops));
  }

  std::string variable() {
    const Token &t = ts_.peek();
    if (t.kind != Tok::Ident || is_reserved(t.text)) ts_.fail("expected a variable");
    return ts_.next().text;
  }

  Formula unary() {
    const Token &t = ts_.peek();
    if (t.kind == Tok::Tilde) {
      if (!neg_) ts_.fail("negation is not allowed in a positive formula");
      ts_.next();
      return Formula::negation(unary());
    }
    if (t.kind == Tok::LParen) {
      ts_.next();
      Formula f = disjunction();
      ts_.expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) ts_.fail("expected a formula");
    if (t.text == "true") {
      ts_.next();
      return Formula::top();
    }
    if (t.text == "false") {
      ts_.next();
      return Formula::bottom();
    }
    if (t.text == "exists") {
      ts_.next();
      std::vector<std::string> vars{variable()};
      while (ts_.at(Tok::Comma) || (ts_.at(Tok::Ident) && !is_reserved(ts_.peek().text))) {
        if (ts_.at(Tok::Comma)) ts_.next();
        vars.push_back(variable());
      }
      ts_.expect(Tok::Dot, "'.' after quantified variables");
      Formula body = disjunction();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::exists(*it, body);
      return body;
    }
    Token name = ts_.next();
    if (ts_.at(Tok::Eq)) {
      ts_.next();
      std::string rhs = variable();
      return Formula::equal(name.text, rhs);
    }
    std::vector<std::string> args;
    if (ts_.at(Tok::LParen)) {
      ts_.next();
      if (!ts_.at(Tok::RParen)) {
        args.push_back(variable());
        while (ts_.at(Tok::Comma)) {
          ts_.next();
          args.push_back(variable());
        }
      }
      ts_.expect(Tok::RParen, "')'");
    }
    auto ar = sig_.arity_of(name.text);
    if (!ar) ts_.fail_at(name, "unknown relation symbol '" + name.text + "'");
    if (*ar != args.size())
      ts_.fail_at(name, "arity mismatch for '" + name.text + "': expected " + std::to_string(*ar) +
                            " arguments, got " + std::to_string(args.size()));
    return Formula::atom(name.text, std::move(args));
  }

  TokenStream &ts_;
  const Signature &sig_;
  bool neg_;
};

Formula parse_whole(std::string_view text, const Signature &sig, bool neg) {
  TokenStream ts(tokenize(text));
  Formula f = parse_formula(ts, sig, neg);
  if (!ts.at(Tok::End)) ts.fail("unexpected '" + ts.peek().text + "' after formula");
  return f;
}

}  // namespace

Formula parse_formula(TokenStream &ts, const Signature &sig, bool allow_negation) {
  return FormulaParser(ts, sig, allow_negation).disjunction();
}

Formula parse_formula(std::string_view text, const Signature &sig) { return parse_whole(text, sig, false); }

Formula parse_fo_formula(std::string_view text, const Signature &sig) { return parse_whole(text, sig, true); }

}  // namespace pmt::syntax
