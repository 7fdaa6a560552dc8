#include "finsler/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string_view>
#include <vector>

#include "finsler/errors.hpp"

namespace finsler {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
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
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::End, {}, 0.0, line, col};
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src.data() + i;
      char* end = nullptr;
      t.number = std::strtod(begin, &end);
      const auto len = static_cast<std::size_t>(end - begin);
      if (len == 0) throw ParseError("malformed number", line, col);
      t.kind = Tok::Number;
      t.text.assign(begin, len);
      advance(len);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text.assign(src.substr(i, j - i));
      advance(j - i);
    } else {
      switch (c) {
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '/': t.kind = Tok::Slash; break;
        case '^': t.kind = Tok::Caret; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      t.text.assign(1, c);
      advance(1);
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, {}, 0.0, line, col});
  return out;
}

ExprPtr make(Expr::Kind kind, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr, double value = 0.0,
             int index = 0) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->value = value;
  e->index = index;
  return e;
}

// Constant value of a variable-free subtree; false if it references x or y.
bool fold(const Expr& e, double& out) {
  double a = 0.0;
  double b = 0.0;
  switch (e.kind) {
    case Expr::Kind::Constant: out = e.value; return true;
    case Expr::Kind::X:
    case Expr::Kind::Y: return false;
    case Expr::Kind::Neg:
      if (!fold(*e.lhs, a)) return false;
      out = -a;
      return true;
    case Expr::Kind::Sqrt:
      if (!fold(*e.lhs, a)) return false;
      out = std::sqrt(a);
      return true;
    case Expr::Kind::Pow:
      if (!fold(*e.lhs, a)) return false;
      out = std::pow(a, e.value);
      return true;
    default: break;
  }
  if (!fold(*e.lhs, a) || !fold(*e.rhs, b)) return false;
  switch (e.kind) {
    case Expr::Kind::Add: out = a + b; break;
    case Expr::Kind::Sub: out = a - b; break;
    case Expr::Kind::Mul: out = a * b; break;
    case Expr::Kind::Div: out = a / b; break;
    default: return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, int n) : toks_(std::move(tokens)), n_(n) {}

  ExprPtr parse() {
    auto e = expr();
    expect(Tok::End, {Tok::Plus, Tok::Minus, Tok::Star, Tok::Slash, Tok::Caret, Tok::End});
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    std::string msg = "expected ";
    bool first = true;
    for (Tok t : expected) {
      msg += first ? "" : " | ";
      msg += describe(t);
      first = false;
    }
    const Token& t = peek();
    msg += ", found " + (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'");
    throw ParseError(msg, t.line, t.column);
  }

  void expect(Tok kind, std::initializer_list<Tok> expected) {
    if (peek().kind != kind) fail(expected);
    ++pos_;
  }

  ExprPtr expr() {
    auto lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const auto kind = peek().kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      ++pos_;
      lhs = make(kind, lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    auto lhs = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const auto kind = peek().kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div;
      ++pos_;
      lhs = make(kind, lhs, unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      ++pos_;
      return make(Expr::Kind::Neg, unary());
    }
    return power();
  }

  ExprPtr power() {
    auto base = primary();
    if (peek().kind != Tok::Caret) return base;
    ++pos_;
    const Token& at = peek();
    const int line = at.line;
    const int column = at.column;
    auto exponent = unary();
    double value = 0.0;
    if (!fold(*exponent, value)) throw ParseError("exponent must be a constant", line, column);
    if (!std::isfinite(value)) throw ParseError("exponent is not a finite number", line, column);
    return make(Expr::Kind::Pow, base, nullptr, value);
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        ++pos_;
        return make(Expr::Kind::Constant, nullptr, nullptr, t.number);
      case Tok::LParen: {
        ++pos_;
        auto e = expr();
        expect(Tok::RParen, {Tok::Plus, Tok::Minus, Tok::Star, Tok::Slash, Tok::Caret, Tok::RParen});
        return e;
      }
      case Tok::Ident:
        return identifier();
      default:
        fail({Tok::Number, Tok::Ident, Tok::LParen, Tok::Minus});
    }
  }

  ExprPtr identifier() {
    const Token& t = peek();
    ++pos_;
    if (t.text == "sqrt") {
      expect(Tok::LParen, {Tok::LParen});
      auto e = expr();
      expect(Tok::RParen, {Tok::Plus, Tok::Minus, Tok::Star, Tok::Slash, Tok::Caret, Tok::RParen});
      return make(Expr::Kind::Sqrt, e);
    }
    const bool coord = t.text.size() >= 2 && (t.text[0] == 'x' || t.text[0] == 'y') &&
                       t.text.find_first_not_of("0123456789", 1) == std::string::npos &&
                       t.text[1] != '0';
    if (!coord) throw UnknownIdentifier("unknown identifier '" + t.text + "'", t.line, t.column);
    const int k = std::atoi(t.text.c_str() + 1);
    if (t.text.size() > 4 || k > n_) {
      throw DimensionMismatch("'" + t.text + "' exceeds dimension " + std::to_string(n_), t.line,
                              t.column);
    }
    return make(t.text[0] == 'x' ? Expr::Kind::X : Expr::Kind::Y, nullptr, nullptr, 0.0, k - 1);
  }

  std::vector<Token> toks_;
  int n_;
  std::size_t pos_ = 0;
};

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ExprPtr parse_energy(const std::string& source, int n) {
  return Parser(tokenize(source), n).parse();
}

std::string to_string(const Expr& e) {
  auto bin = [&](const char* op) { return "(" + to_string(*e.lhs) + " " + op + " " + to_string(*e.rhs) + ")"; };
  switch (e.kind) {
    case Expr::Kind::Constant: return number(e.value);
    case Expr::Kind::X: return "x" + std::to_string(e.index + 1);
    case Expr::Kind::Y: return "y" + std::to_string(e.index + 1);
    case Expr::Kind::Add: return bin("+");
    case Expr::Kind::Sub: return bin("-");
    case Expr::Kind::Mul: return bin("*");
    case Expr::Kind::Div: return bin("/");
    case Expr::Kind::Neg: return "(-" + to_string(*e.lhs) + ")";
    case Expr::Kind::Pow: return "(" + to_string(*e.lhs) + "^" + number(e.value) + ")";
    case Expr::Kind::Sqrt: return "sqrt(" + to_string(*e.lhs) + ")";
  }
  return {};
}

bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Constant: return a.value == b.value;
    case Expr::Kind::X:
    case Expr::Kind::Y: return a.index == b.index;
    case Expr::Kind::Neg:
    case Expr::Kind::Sqrt: return same_structure(*a.lhs, *b.lhs);
    case Expr::Kind::Pow: return a.value == b.value && same_structure(*a.lhs, *b.lhs);
    default: return same_structure(*a.lhs, *b.lhs) && same_structure(*a.rhs, *b.rhs);
  }
}

int max_coordinate_index(const Expr& e) {
  int m = (e.kind == Expr::Kind::X || e.kind == Expr::Kind::Y) ? e.index + 1 : 0;
  if (e.lhs) m = std::max(m, max_coordinate_index(*e.lhs));
  if (e.rhs) m = std::max(m, max_coordinate_index(*e.rhs));
  return m;
}

ScalarField energy_from_expression(ExprPtr e, int n) {
  return ScalarField::generic(n, [e](auto x, auto y) { return evaluate(*e, x, y); });
}

}  // namespace finsler
