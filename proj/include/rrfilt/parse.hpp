#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "rrfilt/polynomial.hpp"

namespace rrfilt {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at line " + std::to_string(line_) +
                           ", column " + std::to_string(col_)),
        line(line_),
        col(col_) {}
};

namespace detail {

class PolyParser {
 public:
  PolyParser(RingPtr ring, std::string_view text, int line = 1, int col0 = 1)
      : ring_(std::move(ring)), s_(text), line_(line), col0_(col0) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  // expr := ['-'] term (('+'|'-') term)*
  Polynomial expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      ++pos_;
      neg = true;
    } else if (peek() == '+') {
      ++pos_;
    }
    Polynomial p = term();
    if (neg) p = -p;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '+') {
        ++pos_;
        p += term();
      } else if (c == '-') {
        ++pos_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  // term := factor ('*' factor)*
  Polynomial term() {
    Polynomial p = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        p = p * factor();
      } else if (peek() == '/') {
        fail("division is not allowed in polynomial expressions");
      } else {
        return p;
      }
    }
  }

  // factor := atom ['^' nat]
  Polynomial factor() {
    Polynomial p = atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(peek())) fail("expected exponent");
      unsigned long e = 0;
      while (std::isdigit(peek())) {
        e = e * 10 + unsigned(peek() - '0');
        if (e > Monomial::kMaxExp) fail("exponent overflow");
        ++pos_;
      }
      p = p.pow(static_cast<unsigned>(e));
    }
    return p;
  }

  // atom := integer ['/' integer] | variable | '(' expr ')'
  Polynomial atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(c)) {
      std::string num = read_digits();
      std::size_t save = pos_;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        if (!std::isdigit(peek())) fail("expected denominator");
        std::string den = read_digits();
        if (!ring_->field().rationals())
          fail("fractional coefficients need the rational field");
        return Polynomial::constant(
            ring_, Scalar(ring_->field(), mpq_class(num + "/" + den)));
      }
      pos_ = save;
      return Polynomial::constant(ring_,
                                  Scalar(ring_->field(), mpq_class(num)));
    }
    if (std::isalpha(c) || c == '_') {
      std::string name;
      while (std::isalnum(peek()) || peek() == '_') name += s_[pos_++];
      int idx = ring_->var_index(name);
      if (idx < 0) fail("unknown variable '" + name + "'");
      return Polynomial::variable(ring_, static_cast<std::size_t>(idx));
    }
    if (c == '\0') fail("unexpected end of expression");
    fail(std::string("unexpected character '") + c + "'");
    return {};
  }

  std::string read_digits() {
    std::string out;
    while (std::isdigit(peek())) out += s_[pos_++];
    return out;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col0_ + static_cast<int>(pos_));
  }

  RingPtr ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_, col0_;
};

}  // namespace detail

// Parses an arithmetic expression over the ring's variables and field
// constants into canonical sparse form.
inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text,
                                   int line = 1, int col = 1) {
  return detail::PolyParser(ring, text, line, col).parse();
}

// Ring spec grammar: `QQ[x,y,z]` or `GF(32003)[x,y]`.
inline RingPtr parse_ring(std::string_view spec, int line = 1) {
  auto fail = [&](const std::string& m) -> void {
    throw ParseError(m, line, 1);
  };
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  Field field;
  std::size_t lb = s.find('[');
  if (lb == std::string::npos || s.back() != ']') fail("expected field[vars]");
  std::string fs = s.substr(0, lb);
  if (fs == "QQ") {
    field.p = 0;
  } else if (fs.rfind("GF(", 0) == 0 && fs.back() == ')') {
    std::string ps = fs.substr(3, fs.size() - 4);
    unsigned long p = 0;
    for (char c : ps) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad prime");
      p = p * 10 + static_cast<unsigned long>(c - '0');
      if (p > (1ul << 62)) fail("prime too large");
    }
    if (p < 3) fail("prime field needs p > 2");
    for (unsigned long d = 2; d * d <= p; ++d)
      if (p % d == 0) fail(std::to_string(p) + " is not prime");
    field.p = p;
  } else {
    fail("unknown field '" + fs + "' (expected QQ or GF(p))");
  }
  std::vector<std::string> vars;
  std::string cur;
  for (std::size_t i = lb + 1; i + 1 < s.size(); ++i) {
    if (s[i] == ',') {
      if (cur.empty()) fail("empty variable name");
      vars.push_back(cur);
      cur.clear();
    } else if (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_') {
      cur += s[i];
    } else {
      fail(std::string("bad character in variable list: '") + s[i] + "'");
    }
  }
  if (!cur.empty()) vars.push_back(cur);
  if (vars.empty()) fail("ring needs at least one variable");
  try {
    return make_ring(std::move(vars), field);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return nullptr;
}

// Comma-separated polynomial list with per-item positions.
inline std::vector<Polynomial> parse_poly_list(const RingPtr& ring,
                                               std::string_view text,
                                               int line = 1) {
  std::vector<Polynomial> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      auto piece = text.substr(start, i - start);
      out.push_back(parse_polynomial(ring, piece, line, int(start) + 1));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace rrfilt
