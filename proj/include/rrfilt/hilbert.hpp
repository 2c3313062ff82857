#pragma once

#include "rrfilt/reductions.hpp"

namespace rrfilt {

struct HilbertError : std::runtime_error {
  explicit HilbertError(const std::string& m) : std::runtime_error(m) {}
};

// Hilbert-Samuel data of the filtration: the numerator h(z) of
// sum λ(A/I^{n+1}) z^n = h(z)/(1-z)^{r+1} with r = dim, and the Hilbert
// coefficients e_i = h^{(i)}(1)/i!. The candidate h is accepted once its
// trailing coefficients vanish on a window of width W and h(1) equals the
// multiplicity certificate λ(A/J) from a minimal reduction.
struct HilbertReport {
  unsigned r = 0;
  std::vector<std::uint64_t> hs;  // λ(A/I^{n+1}) for n = 0..deg h + W
  ZPoly h;
  std::vector<long long> e;  // e_0 .. e_{r+1}
  unsigned certified_window = 0;
  std::uint64_t e0_certificate = 0;
};

// Same data for the Ratliff-Rush filtration, with the exact relation
// h = h~ + (1-z)^{r+1} r(z) used both as construction and as check.
struct RRHilbertReport {
  ZPoly h_tilde;
  std::vector<long long> e_tilde;  // e~_0 .. e~_{r+1}
  ZPoly r_poly;
};

inline HilbertReport h_polynomial(FiltrationCache& F,
                                  const ReductionCertificate& red) {
  HilbertReport rep;
  rep.r = F.dim();
  rep.certified_window = F.params().W;
  rep.e0_certificate = red.e0;
  ZPoly binomial = ZPoly::one_minus_z_pow(rep.r + 1);

  std::vector<long long> h;
  long long sum = 0;
  unsigned zeros = 0;
  // n_cap bounds the reduction number, and deg h = max(red. number, ...)
  // in the well-behaved range; maxN + W is the hard horizon on top.
  unsigned cap = std::max<unsigned>(red.reduction_number, F.params().maxN) +
                 F.params().W + rep.r + 1;
  for (unsigned j = 0;; ++j) {
    if (j > cap)
      throw HilbertError(
          "h-polynomial undetermined within the horizon; raise max-n");
    rep.hs.push_back(F.length(j + 1));
    long long c = 0;
    for (unsigned i = 0; i <= std::min<unsigned>(rep.r + 1, j); ++i)
      c += binomial.coeff(i) * static_cast<long long>(rep.hs[j - i]);
    h.push_back(c);
    sum += c;
    zeros = c == 0 ? zeros + 1 : 0;
    if (zeros >= F.params().W &&
        sum == static_cast<long long>(red.e0))
      break;
  }
  rep.h = ZPoly(std::move(h));
  for (unsigned i = 0; i <= rep.r + 1; ++i)
    rep.e.push_back(rep.h.deriv_at_one(i));
  return rep;
}

inline RRHilbertReport rr_h_polynomial(FiltrationCache& F,
                                       const HilbertReport& hs) {
  RRHilbertReport rep;
  rep.r_poly = F.r_polynomial();
  rep.h_tilde =
      hs.h - ZPoly::one_minus_z_pow(hs.r + 1) * rep.r_poly;
  for (unsigned i = 0; i <= hs.r + 1; ++i)
    rep.e_tilde.push_back(rep.h_tilde.deriv_at_one(i));
  // exact consequences of h = h~ + (1-z)^{r+1} r(z)
  for (unsigned i = 0; i <= hs.r; ++i)
    if (rep.e_tilde[i] != hs.e[i])
      throw std::logic_error("e_i != e~_i below the dimension");
  long long sign = (hs.r + 1) % 2 == 0 ? 1 : -1;
  if (hs.e[hs.r + 1] != rep.e_tilde[hs.r + 1] + sign * rep.r_poly.eval1())
    throw std::logic_error("e_{r+1} relation with r_I(1) violated");
  return rep;
}

// σ_j = λ(closure(j+1)/J·closure(j)) for a minimal reduction J, together
// with the identities they satisfy (dimension at most two):
//   e~_k = sum_{j >= k-1} C(j, k-1) σ_j,
//   σ_0 = e_0 - λ(A/I) + λ(closure(1)/I),
//   χ_1 = e_1 - e_0 + λ(A/I) >= λ(closure(1)/I), equality iff σ_j = 0
//   for all j >= 1.
struct SigmaReport {
  std::vector<long long> sigma;
  long long chi1 = 0;
  long long rr_colength = 0;  // λ(closure(1)/I)
  bool chi1_equality = false;
  bool identities_ok = true;
};

inline SigmaReport sigma_invariants(FiltrationCache& F,
                                    const ReductionCertificate& red,
                                    const HilbertReport& hs,
                                    const RRHilbertReport& rr) {
  if (F.dim() > 2)
    throw std::invalid_argument("sigma invariants need dimension <= 2");
  if (!red.minimal)
    throw std::invalid_argument("sigma invariants need a minimal reduction");
  SigmaReport rep;
  IdealPtr J = make_ideal(F.ring(), red.J);
  unsigned upto = std::max(F.stabilization_bound(), red.reduction_number) + 1;
  for (unsigned j = 0; j <= upto; ++j) {
    IdealPtr JC = j == 0 ? detail::plus_mods(F, J)
                         : detail::plus_mods(F, ideal_product(J, F.closure(j)));
    auto len = colength(*JC);
    if (!len) throw std::logic_error("J*closure(j) not m-primary");
    rep.sigma.push_back(static_cast<long long>(*len) -
                        static_cast<long long>(F.closure_length(j + 1)));
    if (rep.sigma.back() < 0)
      throw std::logic_error("negative sigma invariant");
  }
  rep.rr_colength = static_cast<long long>(F.length(1)) -
                    static_cast<long long>(F.closure_length(1));
  rep.chi1 = hs.e[1] - hs.e[0] + static_cast<long long>(F.length(1));

  for (unsigned k = 1; k <= F.dim(); ++k) {
    long long s = 0;
    for (std::size_t j = k - 1; j < rep.sigma.size(); ++j)
      s += ZPoly::binom(j, k - 1) * rep.sigma[j];
    if (s != rr.e_tilde[k]) rep.identities_ok = false;
  }
  if (rep.sigma[0] !=
      hs.e[0] - static_cast<long long>(F.length(1)) + rep.rr_colength)
    rep.identities_ok = false;

  bool tail_zero = true;
  for (std::size_t j = 1; j < rep.sigma.size(); ++j)
    if (rep.sigma[j] != 0) tail_zero = false;
  rep.chi1_equality = rep.chi1 == rep.rr_colength;
  if (rep.chi1 < rep.rr_colength) rep.identities_ok = false;
  if (rep.chi1_equality != tail_zero) rep.identities_ok = false;
  return rep;
}

// Checks h_A = h_{A/x} - (1-z)^r b(z) for a certified superficial x and
// records the outcome on the certificate. Failure revokes it.
inline bool verify_superficial_identity(FiltrationCache& F,
                                        const SuperficialCertificate& cert,
                                        const HilbertReport& hs) {
  FiltrationCache down = F.quotient({cert.element});
  ReductionCertificate red_down =
      minimal_reduction(down, F.params().trials, down.params().seed);
  HilbertReport hs_down = h_polynomial(down, red_down);
  ZPoly b = F.b_polynomial(cert);
  ZPoly expect = hs.h + ZPoly::one_minus_z_pow(hs.r) * b;
  bool ok = hs_down.h == expect;
  F.set_superficial_identity(cert, ok);
  return ok;
}

}  // namespace rrfilt
