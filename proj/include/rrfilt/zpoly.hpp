#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rrfilt {

// Dense integer polynomial in one variable z, lowest degree first.
// Used for h-polynomials and the auxiliary series b_I and r_I.
struct ZPoly {
  std::vector<long long> c;

  ZPoly() = default;
  explicit ZPoly(std::vector<long long> coeffs) : c(std::move(coeffs)) {
    trim();
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  long long coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }

  bool operator==(const ZPoly&) const = default;

  ZPoly operator+(const ZPoly& o) const {
    ZPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
      r.c[i] = coeff(i) + o.coeff(i);
    r.trim();
    return r;
  }
  ZPoly operator-(const ZPoly& o) const {
    ZPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
      r.c[i] = coeff(i) - o.coeff(i);
    r.trim();
    return r;
  }
  ZPoly operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    ZPoly r;
    r.c.assign(c.size() + o.c.size() - 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
  }

  long long eval1() const {
    long long s = 0;
    for (auto v : c) s += v;
    return s;
  }

  // (1-z)^k
  static ZPoly one_minus_z_pow(unsigned k) {
    ZPoly r(std::vector<long long>{1});
    ZPoly f(std::vector<long long>{1, -1});
    for (unsigned i = 0; i < k; ++i) r = r * f;
    return r;
  }

  // i-th normalized derivative at 1: p^{(i)}(1)/i! = sum_j C(j,i) c_j.
  long long deriv_at_one(unsigned i) const {
    long long s = 0;
    for (std::size_t j = 0; j < c.size(); ++j) s += binom(j, i) * c[j];
    return s;
  }

  static long long binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * static_cast<long long>(n - i) / static_cast<long long>(i + 1);
    return r;
  }

  std::string str() const {
    if (c.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      std::string t;
      long long v = c[i];
      if (!s.empty()) {
        s += v < 0 ? " - " : " + ";
        v = v < 0 ? -v : v;
      } else if (v < 0) {
        s += "-";
        v = -v;
      }
      if (i == 0) {
        t = std::to_string(v);
      } else {
        t = (v == 1 ? "" : std::to_string(v) + "*");
        t += i == 1 ? "z" : "z^" + std::to_string(i);
      }
      s += t;
    }
    return s.empty() ? "0" : s;
  }
};

}  // namespace rrfilt
