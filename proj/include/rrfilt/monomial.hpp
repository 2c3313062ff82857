#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rrfilt {

// Power product of the ring variables, stored as an exponent vector.
// Exponents are bounded to 2^31 - 1; crossing the bound is a hard error.
class Monomial {
 public:
  static constexpr std::uint32_t kMaxExp = 0x7fffffffu;

  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {}
  static Monomial one(std::size_t nvars) {
    return Monomial(std::vector<std::uint32_t>(nvars, 0));
  }
  static Monomial var(std::size_t nvars, std::size_t i,
                      std::uint32_t power = 1) {
    std::vector<std::uint32_t> e(nvars, 0);
    e[i] = power;
    return Monomial(std::move(e));
  }

  std::size_t nvars() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  const std::vector<std::uint32_t>& exps() const { return e_; }
  bool is_one() const {
    for (auto x : e_)
      if (x) return false;
    return true;
  }

  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (auto x : e_) d += x;
    return d;
  }

  bool divides(const Monomial& m) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > m.e_[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) {
      std::uint64_t s = std::uint64_t(r.e_[i]) + m.e_[i];
      if (s > kMaxExp) throw std::overflow_error("monomial exponent overflow");
      r.e_[i] = static_cast<std::uint32_t>(s);
    }
    return r;
  }

  // Exact quotient; caller must ensure m divides *this.
  Monomial operator/(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (m.e_[i] > r.e_[i]) throw std::domain_error("inexact monomial quotient");
      r.e_[i] -= m.e_[i];
    }
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i)
      if (b.e_[i] > r.e_[i]) r.e_[i] = b.e_[i];
    return r;
  }
  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i)
      if (b.e_[i] < r.e_[i]) r.e_[i] = b.e_[i];
    return r;
  }
  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e_.size(); ++i)
      if (a.e_[i] && b.e_[i]) return false;
    return true;
  }

  bool operator==(const Monomial&) const = default;
  // Canonical (order-independent) comparison used for term storage.
  auto operator<=>(const Monomial& m) const { return e_ <=> m.e_; }

 private:
  std::vector<std::uint32_t> e_;
};

// Term orders: graded reverse lexicographic, lexicographic, and block
// elimination orders (leading block compared first, degrevlex on each block).
struct MonomialOrder {
  enum class Kind { Degrevlex, Lex, Elimination };
  Kind kind = Kind::Degrevlex;
  std::size_t block = 0;  // leading-block size for elimination orders

  static MonomialOrder degrevlex() { return {Kind::Degrevlex, 0}; }
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder elimination(std::size_t block_size) {
    return {Kind::Elimination, block_size};
  }

  bool operator==(const MonomialOrder&) const = default;

  std::string name() const {
    switch (kind) {
      case Kind::Degrevlex: return "degrevlex";
      case Kind::Lex: return "lex";
      case Kind::Elimination: return "elim" + std::to_string(block);
    }
    return "?";
  }

  // Returns <0, 0, >0 as a < b, a == b, a > b in this order.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case Kind::Lex: {
        for (std::size_t i = 0; i < a.nvars(); ++i) {
          if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        }
        return 0;
      }
      case Kind::Degrevlex:
        return degrevlex_range(a, b, 0, a.nvars());
      case Kind::Elimination: {
        int c = degrevlex_range(a, b, 0, block);
        if (c != 0) return c;
        return degrevlex_range(a, b, block, a.nvars());
      }
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b) const {
    return compare(a, b) < 0;
  }

 private:
  static int degrevlex_range(const Monomial& a, const Monomial& b,
                             std::size_t lo, std::size_t hi) {
    std::int64_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    // Equal degree: larger exponent in the last differing variable loses.
    for (std::size_t i = hi; i-- > lo;) {
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
  }
};

}  // namespace rrfilt
