#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rrfilt/ring.hpp"

namespace rrfilt {

// Sparse multivariate polynomial in canonical form: a map from monomials to
// nonzero coefficients. Immutable value semantics; all operations return new
// values, so polynomials are safely shareable across threads.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Scalar>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, TermMap terms)
      : ring_(std::move(ring)), t_(std::move(terms)) {
    prune();
  }

  static Polynomial constant(const RingPtr& ring, Scalar c) {
    Polynomial p(ring);
    if (!c.is_zero()) p.t_.emplace(Monomial::one(ring->nvars()), std::move(c));
    return p;
  }
  static Polynomial constant(const RingPtr& ring, long c) {
    return constant(ring, Scalar(ring->field(), c));
  }
  static Polynomial variable(const RingPtr& ring, std::size_t i) {
    Polynomial p(ring);
    p.t_.emplace(Monomial::var(ring->nvars(), i), Scalar(ring->field(), 1));
    return p;
  }
  static Polynomial term(const RingPtr& ring, Monomial m, Scalar c) {
    Polynomial p(ring);
    if (!c.is_zero()) p.t_.emplace(std::move(m), std::move(c));
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t nterms() const { return t_.size(); }

  bool is_monomial() const {
    return t_.size() == 1;
  }
  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
  }

  bool is_homogeneous() const {
    if (t_.empty()) return true;
    std::uint64_t d = t_.begin()->first.degree();
    for (auto& [m, c] : t_)
      if (m.degree() != d) return false;
    return true;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.degree());
    return d;
  }

  // Leading term with respect to a given order (throws on zero).
  std::pair<Monomial, Scalar> leading_term(const MonomialOrder& ord) const {
    if (t_.empty()) throw std::domain_error("leading term of zero polynomial");
    auto best = t_.begin();
    for (auto it = std::next(t_.begin()); it != t_.end(); ++it)
      if (ord.less(best->first, it->first)) best = it;
    return {best->first, best->second};
  }

  Polynomial operator-() const {
    Polynomial r(ring_);
    for (auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial r(a.ring_);
    for (auto& [ma, ca] : a.t_)
      for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  Polynomial scaled(const Scalar& c) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    for (auto& [m, k] : t_) r.t_.emplace(m, k * c);
    return r;
  }

  // Multiply by a single term c*m.
  Polynomial times_term(const Monomial& m, const Scalar& c) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    for (auto& [mm, k] : t_) r.t_.emplace(mm * m, k * c);
    return r;
  }

  Polynomial pow(unsigned n) const {
    Polynomial r = constant(ring_, 1);
    Polynomial base = *this;
    while (n) {
      if (n & 1u) r = r * base;
      base = (n >>= 1) ? base * base : base;
    }
    return r;
  }

  Polynomial monic(const MonomialOrder& ord) const {
    if (is_zero()) return *this;
    return scaled(leading_term(ord).second.inverse());
  }

  bool operator==(const Polynomial& o) const {
    return t_ == o.t_;
  }

  // Canonical text form, terms ordered descending by `ord`.
  std::string str(const MonomialOrder& ord) const {
    if (t_.empty()) return "0";
    std::vector<const std::pair<const Monomial, Scalar>*> ts;
    ts.reserve(t_.size());
    for (auto& kv : t_) ts.push_back(&kv);
    std::sort(ts.begin(), ts.end(),
              [&](auto* a, auto* b) { return ord.less(b->first, a->first); });
    std::string s;
    for (auto* kv : ts) {
      const auto& [m, c] = *kv;
      std::string cs = c.str();
      bool neg = !cs.empty() && cs[0] == '-';
      if (s.empty()) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      if (neg) cs = cs.substr(1);
      std::string ms = mono_str(m);
      if (ms.empty()) {
        s += cs;
      } else if (cs == "1") {
        s += ms;
      } else {
        s += cs + "*" + ms;
      }
    }
    return s;
  }
  std::string str() const { return str(ring_ ? ring_->order() : MonomialOrder::degrevlex()); }

 private:
  void check(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_))
      throw std::invalid_argument("polynomials from different rings");
  }
  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  void prune() {
    for (auto it = t_.begin(); it != t_.end();)
      it = it->second.is_zero() ? t_.erase(it) : std::next(it);
  }
  std::string mono_str(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (!m[i]) continue;
      if (!s.empty()) s += "*";
      s += ring_->vars()[i];
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

  RingPtr ring_;
  TermMap t_;
};

}  // namespace rrfilt
