#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rrfilt/colon.hpp"
#include "rrfilt/zpoly.hpp"

namespace rrfilt {

// Tuning knobs for the bounded-verification windows. The paper gives no
// effective bounds for its "for all n >> 0" clauses; these defaults cover
// the worked examples with margin and are CLI-overridable.
struct FiltParams {
  unsigned W = 3;            // certificate / vanishing-tail window
  unsigned K_max = 12;       // colon-chain cap
  unsigned maxN = 10;        // bounded-verification horizon
  unsigned trials = 24;      // random candidate draws
  unsigned n_cap = 10;       // reduction-number search cap
  std::uint64_t seed = 1;

  unsigned c_max(std::size_t ngens) const {
    return 2 * static_cast<unsigned>(ngens) + 6;
  }
};

// Witness that x is superficial: (I^{n+1} : x) = I^n was verified for every
// n in [window_start, window_start + window_length]. The h-polynomial
// identity check is filled in by the Hilbert layer when it runs.
struct SuperficialCertificate {
  Polynomial element;
  unsigned window_start = 0;
  unsigned window_length = 0;
  unsigned trial_index = 0;
  std::optional<bool> identity_check;
};

struct UnstableChainError : std::runtime_error {
  unsigned n, reached_k;
  UnstableChainError(unsigned n_, unsigned k)
      : std::runtime_error("Ratliff-Rush colon chain for power " +
                           std::to_string(n_) +
                           " did not stabilize with cross-check by k = " +
                           std::to_string(k)),
        n(n_),
        reached_k(k) {}
};

struct SuperficialSearchError : std::runtime_error {
  explicit SuperficialSearchError(const std::string& m)
      : std::runtime_error(m) {}
};

struct BehaveVerdict {
  bool ok = true;
  unsigned first_failing_n = 0;  // meaningful when !ok
  unsigned checked_up_to = 0;
};

// All filtration data for one m-primary ideal I, possibly taken modulo a
// sequence of ring elements. Quotients B = A/(x_1..x_s) are represented by
// preimages: every ideal of B is stored as the A-ideal containing the mods,
// so power(n) is I^n + (mods) and lengths are computed upstairs. Single
// coarse lock: concurrent queries serialize cache insertion.
class FiltrationCache {
 public:
  // `stride` analyzes the power filtration K = I^stride: power(n) is then
  // I^{stride·n} + (mods), and all powers go through the shared cache on
  // the base handle.
  FiltrationCache(IdealPtr base, FiltParams params = {},
                  std::vector<Polynomial> mods = {}, unsigned stride = 1)
      : ring_(base->ring()),
        base_(std::move(base)),
        mods_(std::move(mods)),
        params_(params),
        stride_(stride) {
    if (stride_ == 0) throw std::invalid_argument("zero stride");
    if (mods_.size() > ring_->nvars())
      throw std::invalid_argument("too many elements quotiented out");
    if (!is_mprimary(*power(1)))
      throw std::domain_error("ideal is not m-primary");
  }

  const RingPtr& ring() const { return ring_; }
  const IdealPtr& base() const { return base_; }
  const std::vector<Polynomial>& mods() const { return mods_; }
  unsigned stride() const { return stride_; }
  // Generators of the filtered ideal itself (I^stride when stride > 1).
  const std::vector<Polynomial>& ideal_gens() {
    return stride_ == 1 ? base_->gens() : ideal_power(base_, stride_)->gens();
  }
  const FiltParams& params() const { return params_; }
  unsigned dim() const {
    return static_cast<unsigned>(ring_->nvars() - mods_.size());
  }

  // A cache for the same filtration modulo additional elements.
  FiltrationCache quotient(std::vector<Polynomial> extra) const {
    auto m = mods_;
    m.insert(m.end(), extra.begin(), extra.end());
    FiltParams p = params_;
    p.seed = params_.seed * 0x9e3779b97f4a7c15ull + m.size();
    return FiltrationCache(base_, p, std::move(m), stride_);
  }

  // I^n + (mods), generators interreduced to the reduced Groebner basis.
  IdealPtr power(unsigned n) {
    std::scoped_lock lk(mu_);
    return power_locked(n);
  }

  // λ(A / (I^n + mods)); length(0) = 0.
  std::uint64_t length(unsigned n) {
    std::scoped_lock lk(mu_);
    return length_locked(n);
  }

  std::uint64_t closure_length(unsigned n) {
    std::scoped_lock lk(mu_);
    return closure_locked(n).length;
  }

  // Ratliff-Rush closure of the n-th power, materialized with a reduced GB.
  IdealPtr closure(unsigned n) {
    std::scoped_lock lk(mu_);
    auto& info = closure_locked(n);
    if (!info.materialized) {
      IdealPtr raw = info.rep.materialize();
      info.materialized =
          make_ideal(ring_, raw->gb(ring_->order()));
    }
    return info.materialized;
  }

  const SuperficialCertificate& superficial() {
    std::scoped_lock lk(mu_);
    if (!superficial_)
      superficial_ =
          find_superficial_locked(params_.trials, params_.W, params_.seed);
    return *superficial_;
  }

  // Records an h-polynomial identity verification outcome on the cached
  // certificate. A failed check revokes the cached element entirely.
  void set_superficial_identity(const SuperficialCertificate& cert, bool ok) {
    std::scoped_lock lk(mu_);
    if (superficial_ && superficial_->element == cert.element) {
      if (ok)
        superficial_->identity_check = ok;
      else
        superficial_.reset();
    }
  }

  SuperficialCertificate find_superficial(unsigned trials, unsigned window,
                                          std::uint64_t seed) {
    std::scoped_lock lk(mu_);
    return find_superficial_locked(trials, window, seed);
  }

  // Certifies a caller-chosen element: scans for a length-`window` run of
  // (I^{n+1} : x) = I^n. Nothing is cached.
  std::optional<SuperficialCertificate> certify(const Polynomial& x,
                                                unsigned window) {
    std::scoped_lock lk(mu_);
    if (x.is_zero() || ideal_membership(power_locked(2), x) ||
        !ideal_membership(power_locked(1), x))
      return std::nullopt;
    unsigned c_max = params_.c_max(ideal_gens().size());
    unsigned run = 0;
    std::optional<unsigned> start;
    for (unsigned n = 0; n <= c_max + window; ++n) {
      if (colon_equals_power_locked(n, x)) {
        if (run == 0) start = n;
        if (++run == window + 1) {
          SuperficialCertificate cert;
          cert.element = x;
          cert.window_start = *start;
          cert.window_length = window;
          cert.trial_index = 0;
          return cert;
        }
      } else {
        run = 0;
        start.reset();
      }
    }
    return std::nullopt;
  }

  // Least N with closure(n) = I^n certified for n in [N, N+W); powers past
  // the bound reuse the certificate instead of re-running colon chains.
  unsigned stabilization_bound() {
    std::scoped_lock lk(mu_);
    r_polynomial_locked();
    return *stab_bound_;
  }

  // r_I(z): coefficient of z^n is λ(closure(n+1)/I^{n+1}).
  ZPoly r_polynomial() {
    std::scoped_lock lk(mu_);
    return r_polynomial_locked();
  }

  // b_I(x; z): coefficient of z^n is λ((I^{n+1} : x)/I^n) for a certified
  // superficial x. Finite by superficiality; failure to vanish within the
  // safety cap revokes the certificate.
  ZPoly b_polynomial(const SuperficialCertificate& cert) {
    std::scoped_lock lk(mu_);
    std::vector<long long> coeffs;
    unsigned zeros = 0;
    unsigned min_n = cert.window_start + cert.window_length;
    unsigned cap = min_n + params_.maxN + params_.W;
    for (unsigned n = 0;; ++n) {
      if (n > cap)
        throw SuperficialSearchError(
            "b-polynomial did not terminate: element is not superficial");
      long long c = b_coeff_locked(n, cert.element);
      if (c < 0)
        throw std::logic_error("negative b-coefficient: broken colon");
      coeffs.push_back(c);
      zeros = c == 0 ? zeros + 1 : 0;
      if (n + 1 > min_n && zeros >= params_.W) break;
    }
    return ZPoly(std::move(coeffs));
  }

  // Greedy superficial sequence: x_1 superficial for I, x_2 for the image
  // ideal mod x_1, and so on.
  std::vector<SuperficialCertificate> find_superficial_sequence(
      unsigned s, std::uint64_t seed) {
    if (s + mods_.size() >= ring_->nvars())
      throw std::invalid_argument("superficial sequence too long");
    std::vector<SuperficialCertificate> certs;
    std::vector<Polynomial> xs;
    for (unsigned i = 0; i < s; ++i) {
      FiltrationCache level = quotient(xs);
      certs.push_back(
          level.find_superficial(params_.trials, params_.W, seed + i));
      xs.push_back(certs.back().element);
    }
    return certs;
  }

  // Base exponents whose powers were materialized during this run (cache
  // introspection for provenance reporting).
  std::vector<unsigned> cached_power_exponents() {
    std::scoped_lock lk(mu_);
    std::vector<unsigned> out;
    out.reserve(powers_.size());
    for (auto& [e, ideal] : powers_) out.push_back(e);
    return out;
  }

  // Compares the image of the Ratliff-Rush filtration of A with the
  // Ratliff-Rush filtration computed inside A/(xs), degree by degree up to
  // the stabilization bounds (equality past both bounds is automatic).
  BehaveVerdict behaves_well_mod(const std::vector<Polynomial>& xs,
                                 unsigned maxN) {
    FiltrationCache down = quotient(xs);
    IdealPtr xs_ideal = make_ideal(ring_, xs);
    unsigned bound = std::max(stabilization_bound(), down.stabilization_bound());
    BehaveVerdict v;
    v.checked_up_to = std::min(maxN, bound + params_.W);
    for (unsigned n = 1; n <= v.checked_up_to; ++n) {
      IdealPtr image = ideal_sum(closure(n), xs_ideal);
      if (!ideal_equal(image, down.closure(n))) {
        v.ok = false;
        v.first_failing_n = n;
        return v;
      }
    }
    return v;
  }

 private:
  struct ClosureInfo {
    ColonRep rep;
    std::uint64_t length = 0;
    unsigned stabilized_at_k = 0;  // 0 = via stabilization bound
    IdealPtr materialized;
  };

  // I^e + (mods), keyed by the exponent e of the *base* ideal. Filtration
  // powers are the stride multiples; closure chains also step through the
  // intermediate exponents.
  IdealPtr base_power_locked(unsigned e) {
    if (e == 0) return unit_ideal(ring_);
    if (auto it = powers_.find(e); it != powers_.end()) return it->second;
    IdealPtr pn = ideal_power(base_, e);
    IdealPtr result;
    if (mods_.empty()) {
      result = pn;
    } else {
      auto gens = pn->gens();
      gens.insert(gens.end(), mods_.begin(), mods_.end());
      IdealPtr raw = make_ideal(ring_, std::move(gens));
      result = make_ideal(ring_, raw->gb(ring_->order()));
    }
    powers_.emplace(e, result);
    return result;
  }

  IdealPtr power_locked(unsigned n) { return base_power_locked(stride_ * n); }

  const QuotientBasis& base_qb_locked(unsigned e) {
    if (auto it = qbs_.find(e); it != qbs_.end()) return it->second;
    return qbs_.emplace(e, quotient_basis(base_power_locked(e))).first->second;
  }

  const QuotientBasis& qb_locked(unsigned n) {
    return base_qb_locked(stride_ * n);
  }

  std::uint64_t length_locked(unsigned n) {
    if (n == 0) return 0;
    return qb_locked(n).dim();
  }

  // λ(A/(I^{n+1} : x)) via the nullity of multiplication by x on A/I^{n+1}.
  std::uint64_t colon_by_elt_length_locked(unsigned n_plus_1,
                                           const Polynomial& x) {
    const QuotientBasis& qb = qb_locked(n_plus_1);
    return qb.dim() - mult_nullity(qb, x);
  }

  long long b_coeff_locked(unsigned n, const Polynomial& x) {
    // Sandwich: I^n ⊆ (I^{n+1}:x) ⊆ closure(n), so a certified-trivial
    // closure forces a zero coefficient.
    if (n >= 1 && stab_bound_ && n >= *stab_bound_) return 0;
    return static_cast<long long>(length_locked(n)) -
           static_cast<long long>(colon_by_elt_length_locked(n + 1, x));
  }

  // True iff (I^{n+1} : x) = I^n, tested as injectivity of multiplication
  // by x from A/I^n into A/I^{n+1}.
  bool colon_equals_power_locked(unsigned n, const Polynomial& x) {
    std::uint64_t expect = length_locked(n + 1) - length_locked(n);
    return mult_nullity(qb_locked(n + 1), x, expect) == expect;
  }

  // Same test at base exponents: (I^{e+1} + mods : x) = I^e + mods.
  bool colon_equals_base_power_locked(unsigned e, const Polynomial& x) {
    std::uint64_t lo = e == 0 ? 0 : base_qb_locked(e).dim();
    std::uint64_t expect = base_qb_locked(e + 1).dim() - lo;
    return mult_nullity(base_qb_locked(e + 1), x, expect) == expect;
  }

  // Element of I \ I^2 whose colon chain meets the closure chain: for
  // stride 1 the certified superficial element itself; otherwise a
  // base-level analogue found with base-exponent colon windows (the
  // stride-level element lies in I^stride and its colons overshoot the
  // closure). Superficiality is only a meeting heuristic here — the
  // killed-by certificate in closure_locked is exact regardless.
  const Polynomial& chain_element_locked() {
    if (stride_ == 1) {
      if (!superficial_)
        superficial_ =
            find_superficial_locked(params_.trials, params_.W, params_.seed);
      return superficial_->element;
    }
    if (chain_elt_) return *chain_elt_;
    unsigned c_max = params_.c_max(base_->gens().size());
    std::mt19937_64 rng(params_.seed);
    for (unsigned t = 0; t < params_.trials; ++t) {
      Polynomial cand = draw_candidate_from(rng, t, base_->gens());
      if (cand.is_zero() || ideal_membership(base_power_locked(2), cand))
        continue;
      unsigned horizon = std::min<unsigned>(c_max, 4 + 4 * t);
      unsigned run = 0;
      for (unsigned e = 0; e <= horizon + params_.W; ++e) {
        run = colon_equals_base_power_locked(e, cand) ? run + 1 : 0;
        if (run == params_.W + 1) {
          chain_elt_ = std::move(cand);
          return *chain_elt_;
        }
      }
    }
    throw SuperficialSearchError(
        "no base-level superficial element found for the closure chains");
  }

  SuperficialCertificate find_superficial_locked(unsigned trials,
                                                 unsigned window,
                                                 std::uint64_t seed) {
    if (trials == 0)
      throw SuperficialSearchError("superficial search with zero trials");
    unsigned c_max = params_.c_max(ideal_gens().size());
    std::mt19937_64 rng(seed);
    std::string best;
    for (unsigned t = 0; t < trials; ++t) {
      Polynomial cand = draw_candidate(rng, t);
      if (cand.is_zero()) continue;
      // x should sit in I \ I^2.
      if (ideal_membership(power_locked(2), cand)) continue;
      // Early trials get a short scan horizon: superficial elements show
      // their window at small n, and every failed check costs a quotient
      // basis of a higher power. Later trials extend toward c_max.
      unsigned horizon = std::min<unsigned>(c_max, 4 + 4 * t);
      unsigned run = 0;
      std::optional<unsigned> start;
      for (unsigned n = 0; n <= horizon + window; ++n) {
        if (colon_equals_power_locked(n, cand)) {
          if (run == 0) start = n;
          if (++run == window + 1) break;
        } else {
          run = 0;
          start.reset();
        }
      }
      if (run == window + 1) {
        SuperficialCertificate cert;
        cert.element = cand;
        cert.window_start = *start;
        cert.window_length = window;
        cert.trial_index = t;
        return cert;
      }
      if (best.empty()) best = cand.str();
    }
    throw SuperficialSearchError(
        "no superficial element found in " + std::to_string(trials) +
        " trials (best candidate: " + (best.empty() ? "none" : best) + ")");
  }

  Polynomial draw_candidate(std::mt19937_64& rng, unsigned trial) {
    return draw_candidate_from(rng, trial, ideal_gens());
  }

  Polynomial draw_candidate_from(std::mt19937_64& rng, unsigned trial,
                                 const std::vector<Polynomial>& gens) {
    const Field& f = ring_->field();
    Polynomial x(ring_);
    if (trial == 0) {
      // sparsest first: the sum of the pure-power generators keeps the
      // multiplication matrix thin (monomial m-primary ideals always have
      // one per variable among their minimal generators)
      for (auto& g : gens) {
        if (!g.is_monomial()) continue;
        const Monomial& m = g.terms().begin()->first;
        unsigned support = 0;
        for (std::size_t v = 0; v < ring_->nvars(); ++v)
          if (m[v] > 0) ++support;
        if (support == 1) x += g.monic(ring_->order());
      }
      if (!x.is_zero()) return x;
    }
    for (auto& g : gens) {
      long c;
      if (trial <= 1) {
        c = 1;  // plain generator sum, still fairly sparse
      } else if (f.rationals()) {
        long h = 3 + static_cast<long>(trial / 4);
        c = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * h + 1)) - h;
      } else {
        c = static_cast<long>(rng() % f.p);
      }
      if (c != 0) x += g.scaled(Scalar(f, c));
    }
    return x;
  }

  ClosureInfo& closure_locked(unsigned n) {
    if (auto it = closures_.find(n); it != closures_.end()) return it->second;
    if (n == 0) {
      ClosureInfo info;
      info.rep = ColonRep{unit_ideal(ring_), {}, 0};
      info.length = 0;
      return closures_.emplace(0, std::move(info)).first->second;
    }
    if (stab_bound_ && n >= *stab_bound_) {
      ClosureInfo info;
      info.rep = ColonRep{power_locked(n), {}, length_locked(n)};
      info.length = length_locked(n);
      return closures_.emplace(n, std::move(info)).first->second;
    }

    // Two ascending chains with union the closure, stepping by *base*
    // powers (for stride s the union over j of (I^{sn+j} : I^j) is cofinal
    // with the stride-stepped chain and its ambients are much smaller):
    //   C_j = ((I^{sn+j} + mods) : I^j)  ⊆  D_j = (... : x^j),
    // the containment because x lies in I^s ⊆ I. Only the cheap one-element
    // colon D_j is eliminated; stabilization is accepted at the first j
    // where I^j kills the kernel of D_j, I^{j+1} kills the kernel of
    // D_{j+1}, and the lengths agree — which forces
    // C_j = D_j = D_{j+1} = C_{j+1} exactly.
    const Polynomial& x = chain_element_locked();

    struct Link {
      ColonRep rep;
      unsigned k = 0;
      std::optional<bool> killed;
    };
    auto killed = [&](Link& l) {
      if (!l.killed)
        l.killed = killed_by(base_qb_locked(stride_ * n + l.k), l.rep.kernel,
                             ideal_power(base_, l.k)->gens());
      return *l.killed;
    };
    std::optional<Link> prev;
    for (unsigned k = 1; k <= params_.K_max; ++k) {
      Link cur{colon_power_kernel(base_qb_locked(stride_ * n + k), x, k), k,
               {}};
      if (prev && prev->rep.length == cur.rep.length && killed(*prev) &&
          killed(cur)) {
        ClosureInfo info;
        info.rep = std::move(prev->rep);
        info.length = info.rep.length;
        info.stabilized_at_k = prev->k;
        return closures_.emplace(n, std::move(info)).first->second;
      }
      prev = std::move(cur);
    }
    throw UnstableChainError(n, params_.K_max);
  }

  ZPoly r_polynomial_locked() {
    if (r_poly_) return *r_poly_;
    std::vector<long long> coeffs;
    unsigned zeros = 0;
    unsigned cap = params_.maxN + params_.W;
    unsigned last_nonzero = 0;
    bool any_nonzero = false;
    for (unsigned j = 0;; ++j) {
      if (j > cap) throw UnstableChainError(j, params_.K_max);
      long long c = static_cast<long long>(length_locked(j + 1)) -
                    static_cast<long long>(closure_locked(j + 1).length);
      if (c < 0) throw std::logic_error("closure smaller than power");
      coeffs.push_back(c);
      if (c != 0) {
        any_nonzero = true;
        last_nonzero = j;
        zeros = 0;
      } else {
        ++zeros;
      }
      if (zeros >= params_.W) break;
    }
    stab_bound_ = any_nonzero ? last_nonzero + 2 : 1;
    r_poly_ = ZPoly(std::move(coeffs));
    return *r_poly_;
  }

  RingPtr ring_;
  IdealPtr base_;
  std::vector<Polynomial> mods_;
  FiltParams params_;
  unsigned stride_ = 1;

  std::recursive_mutex mu_;
  std::map<unsigned, IdealPtr> powers_;
  std::map<unsigned, QuotientBasis> qbs_;
  std::map<unsigned, ClosureInfo> closures_;
  std::optional<SuperficialCertificate> superficial_;
  std::optional<Polynomial> chain_elt_;
  std::optional<unsigned> stab_bound_;
  std::optional<ZPoly> r_poly_;
};

}  // namespace rrfilt
