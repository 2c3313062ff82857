#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace rrfilt {

// Coefficient field: exact rationals (p == 0) or a prime field GF(p), p > 2.
struct Field {
  unsigned long p = 0;

  bool rationals() const { return p == 0; }
  bool operator==(const Field&) const = default;

  std::string name() const {
    return p == 0 ? "QQ" : "GF(" + std::to_string(p) + ")";
  }
};

// A field element. Rationals are arbitrary-precision mpq; prime-field
// elements are canonical representatives in [0, p) stored in the numerator.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& f, long v) : p_(f.p), v_(v) { normalize(); }
  Scalar(const Field& f, mpq_class v) : p_(f.p), v_(std::move(v)) {
    if (p_ != 0 && v_.get_den() != 1)
      throw std::invalid_argument("non-integer value in prime field");
    normalize();
  }

  const Field field() const { return Field{p_}; }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar operator-() const {
    Scalar r = *this;
    r.v_ = -r.v_;
    r.normalize();
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    v_ += o.v_;
    normalize();
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check(o);
    v_ -= o.v_;
    normalize();
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    check(o);
    v_ *= o.v_;
    normalize();
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    check(o);
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    if (p_ == 0) {
      v_ /= o.v_;
    } else {
      *this *= o.inverse();
    }
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.p_ == b.p_ && a.v_ == b.v_;
  }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (p_ == 0) return Scalar(Field{0}, mpq_class(1) / v_);
    mpz_class inv, mod(static_cast<unsigned long>(p_));
    if (mpz_invert(inv.get_mpz_t(), v_.get_num().get_mpz_t(),
                   mod.get_mpz_t()) == 0)
      throw std::domain_error("non-invertible element mod p");
    return Scalar(Field{p_}, mpq_class(inv));
  }

  std::string str() const { return v_.get_str(); }

 private:
  void normalize() {
    if (p_ == 0) {
      v_.canonicalize();
      return;
    }
    mpz_class mod(static_cast<unsigned long>(p_));
    mpz_class r = v_.get_num() % mod;
    if (r < 0) r += mod;
    v_ = mpq_class(r);
  }
  void check(const Scalar& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixed coefficient fields");
  }

  unsigned long p_ = 0;
  mpq_class v_ = 0;
};

}  // namespace rrfilt
