#include "hspace33/parser.hpp"

#include <cctype>
#include <vector>

namespace h33 {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { integer, identifier, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    const std::size_t l = line;
    const std::size_t c = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') throw ParseError("decimal numbers are not allowed", line, col + (j - i));
      out.push_back({Tok::integer, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::identifier, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
    }
    out.push_back({kind, std::string(1, ch), l, c});
    advance(1);
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParseOptions& options) : toks_(std::move(tokens)), options_(options) {}

  Expr parse_all() {
    Expr e = expression();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    take();
  }

  Expr expression() {
    std::vector<Expr> terms{term()};
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool negate = take().kind == Tok::minus;
      Expr t = term();
      terms.push_back(negate ? negated(t) : t);
    }
    return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{signed_factor(true)};
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      if (take().kind == Tok::star) {
        factors.push_back(signed_factor(false));
      } else {
        Expr num = factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
        factors = {Expr::quotient(std::move(num), signed_factor(false))};
      }
    }
    return factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
  }

  Expr signed_factor(bool term_start) {
    if (peek().kind == Tok::minus) {
      take();
      return negated(factor(term_start));
    }
    return factor(term_start);
  }

  static Expr negated(const Expr& e) {
    if (e.is_constant()) return Expr(-e.value());
    return Expr::product({Expr(Rational(-1)), e});
  }

  Expr factor(bool term_start) {
    Expr b = base(term_start);
    if (peek().kind == Tok::caret) {
      take();
      bool negative = false;
      if (peek().kind == Tok::minus || peek().kind == Tok::plus) negative = take().kind == Tok::minus;
      if (peek().kind != Tok::integer) fail("expected integer exponent");
      const Token& t = take();
      long n = 0;
      try {
        n = std::stol(t.text);
      } catch (const std::exception&) {
        throw ParseError("exponent out of range", t.line, t.column);
      }
      if (negative) n = -n;
      if (n == 0 && b.is_zero()) throw ParseError("0^0 is not a valid expression", t.line, t.column);
      return Expr::power(std::move(b), n);
    }
    return b;
  }

  Expr base(bool term_start) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::integer: {
        take();
        if (term_start && peek().kind == Tok::slash && peek(1).kind == Tok::integer) {
          take();
          const Token& den = take();
          if (den.text.find_first_not_of('0') == std::string::npos)
            throw ParseError("zero denominator in rational literal", den.line, den.column);
          return Expr(Rational::parse(t.text + "/" + den.text));
        }
        return Expr(Rational::parse(t.text));
      }
      case Tok::identifier: {
        take();
        if (options_.allowed_symbols && !options_.allowed_symbols->contains(t.text))
          throw UnknownSymbolError("symbol '" + t.text + "' is not allowed here", t.line, t.column);
        return Expr(Symbol::named(t.text));
      }
      case Tok::lparen: {
        take();
        Expr e = expression();
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::end:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view source, const ParseOptions& options) {
  return Parser(tokenize(source), options).parse_all();
}

}  // namespace h33
