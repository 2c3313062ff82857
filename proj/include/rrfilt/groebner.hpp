#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rrfilt/polynomial.hpp"

namespace rrfilt {

// ---------------------------------------------------------------------------
// Multivariate division
// ---------------------------------------------------------------------------

namespace detail {

// Working form: terms keyed ascending in `ord`, so the leading term is the
// last entry.
struct OrdCmp {
  MonomialOrder ord;
  bool operator()(const Monomial& a, const Monomial& b) const {
    return ord.less(a, b);
  }
};
using WorkMap = std::map<Monomial, Scalar, OrdCmp>;

inline WorkMap to_work(const Polynomial& f, const MonomialOrder& ord) {
  WorkMap w{OrdCmp{ord}};
  for (auto& [m, c] : f.terms()) w.emplace(m, c);
  return w;
}

inline void work_add(WorkMap& w, const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = w.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) w.erase(it);
  }
}

struct BasisElt {
  Monomial lt;
  Scalar lc;
  Polynomial p;
};

inline std::vector<BasisElt> to_basis(const std::vector<Polynomial>& basis,
                                      const MonomialOrder& ord) {
  std::vector<BasisElt> out;
  out.reserve(basis.size());
  for (auto& g : basis) {
    if (g.is_zero()) throw std::invalid_argument("zero polynomial in basis");
    auto [m, c] = g.leading_term(ord);
    out.push_back({m, c, g});
  }
  return out;
}

inline Polynomial reduce_impl(const Polynomial& f,
                              const std::vector<BasisElt>& basis,
                              const MonomialOrder& ord) {
  WorkMap w = to_work(f, ord);
  Polynomial::TermMap rem;
  while (!w.empty()) {
    auto lead = std::prev(w.end());
    const Monomial& m = lead->first;
    const BasisElt* div = nullptr;
    for (auto& b : basis)
      if (b.lt.divides(m)) {
        div = &b;
        break;
      }
    if (!div) {
      rem.emplace(lead->first, lead->second);
      w.erase(lead);
      continue;
    }
    Monomial q = m / div->lt;
    Scalar c = lead->second / div->lc;
    for (auto& [bm, bc] : div->p.terms()) work_add(w, bm * q, -(bc * c));
  }
  return Polynomial(f.ring(), std::move(rem));
}

}  // namespace detail

// Normal form of f modulo an ordered generator sequence: no term of the
// result is divisible by any basis leading term. Deterministic given the
// basis sequence and order.
inline Polynomial reduce(const Polynomial& f,
                         const std::vector<Polynomial>& basis,
                         const MonomialOrder& ord) {
  if (f.is_zero()) return f;
  return detail::reduce_impl(f, detail::to_basis(basis, ord), ord);
}

// Single-divisor division with quotient; returns nullopt unless g divides f
// exactly (zero remainder).
inline std::optional<Polynomial> exact_div(const Polynomial& f,
                                           const Polynomial& g,
                                           const MonomialOrder& ord) {
  if (g.is_zero()) throw std::domain_error("division by zero polynomial");
  Polynomial q(f.ring());
  if (f.is_zero()) return q;
  auto [glt, glc] = g.leading_term(ord);
  detail::WorkMap w = detail::to_work(f, ord);
  while (!w.empty()) {
    auto lead = std::prev(w.end());
    if (!glt.divides(lead->first)) return std::nullopt;
    Monomial qm = lead->first / glt;
    Scalar qc = lead->second / glc;
    q += Polynomial::term(f.ring(), qm, qc);
    for (auto& [bm, bc] : g.terms()) detail::work_add(w, bm * qm, -(bc * qc));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Buchberger
// ---------------------------------------------------------------------------

namespace detail {

// Minimal generating set of a monomial ideal: drop monomials divisible by
// another generator.
inline std::vector<Monomial> minimize_monomials(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(),
            [](const Monomial& a, const Monomial& b) {
              auto da = a.degree(), db = b.degree();
              return da != db ? da < db : a < b;
            });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Monomial> kept;
  for (auto& m : gens) {
    bool redundant = false;
    for (auto& k : kept)
      if (k.divides(m)) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(std::move(m));
  }
  return kept;
}

inline std::optional<std::vector<Monomial>> as_monomials(
    const std::vector<Polynomial>& gens) {
  std::vector<Monomial> ms;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!g.is_monomial()) return std::nullopt;
    ms.push_back(g.terms().begin()->first);
  }
  return ms;
}

}  // namespace detail

// Reduced Groebner basis by Buchberger's algorithm with the coprimality and
// chain criteria; normal pair-selection strategy (minimal lcm degree first).
// The result is unique: monic, auto-reduced, sorted by decreasing leading
// term.
inline std::vector<Polynomial> buchberger(const RingPtr& ring,
                                          const std::vector<Polynomial>& gens,
                                          const MonomialOrder& ord) {
  // Monomial ideals are their own reduced basis.
  if (auto ms = detail::as_monomials(gens)) {
    auto minimal = detail::minimize_monomials(std::move(*ms));
    std::sort(minimal.begin(), minimal.end(),
              [&](const Monomial& a, const Monomial& b) { return ord.less(b, a); });
    std::vector<Polynomial> out;
    for (auto& m : minimal)
      out.push_back(Polynomial::term(ring, m, Scalar(ring->field(), 1)));
    return out;
  }

  std::vector<detail::BasisElt> g;
  for (auto& f : gens) {
    if (f.is_zero()) continue;
    Polynomial r = detail::reduce_impl(f, g, ord);
    if (r.is_zero()) continue;
    auto [m, c] = r.leading_term(ord);
    g.push_back({m, c, std::move(r)});
  }

  // Pending S-pairs keyed by (lcm degree, lcm, i, j): normal strategy.
  struct PairCmp {
    MonomialOrder ord;
    bool operator()(const std::tuple<std::uint64_t, Monomial, std::size_t,
                                     std::size_t>& a,
                    const std::tuple<std::uint64_t, Monomial, std::size_t,
                                     std::size_t>& b) const {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
      int c = ord.compare(std::get<1>(a), std::get<1>(b));
      if (c != 0) return c < 0;
      if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) < std::get<2>(b);
      return std::get<3>(a) < std::get<3>(b);
    }
  };
  std::set<std::tuple<std::uint64_t, Monomial, std::size_t, std::size_t>, PairCmp>
      pairs{PairCmp{ord}};
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto push_pair = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    Monomial l = lcm(g[i].lt, g[j].lt);
    pairs.emplace(l.degree(), std::move(l), i, j);
    pending.emplace(i, j);
  };
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) push_pair(i, j);

  while (!pairs.empty()) {
    auto [deg, l, i, j] = *pairs.begin();
    pairs.erase(pairs.begin());
    pending.erase({i, j});

    if (coprime(g[i].lt, g[j].lt)) continue;
    // Chain criterion: skip if some g[k] divides the lcm and both side pairs
    // were already treated.
    bool skip = false;
    for (std::size_t k = 0; k < g.size() && !skip; ++k) {
      if (k == i || k == j || !g[k].lt.divides(l)) continue;
      auto p1 = std::minmax(i, k);
      auto p2 = std::minmax(j, k);
      if (!pending.count({p1.first, p1.second}) &&
          !pending.count({p2.first, p2.second}))
        skip = true;
    }
    if (skip) continue;

    Polynomial s = g[i].p.times_term(l / g[i].lt, g[i].lc.inverse()) -
                   g[j].p.times_term(l / g[j].lt, g[j].lc.inverse());
    Polynomial r = detail::reduce_impl(s, g, ord);
    if (r.is_zero()) continue;
    auto [m, c] = r.leading_term(ord);
    g.push_back({m, c, std::move(r)});
    for (std::size_t k = 0; k + 1 < g.size(); ++k) push_pair(k, g.size() - 1);
  }

  // Minimize: drop elements whose leading term another leading term divides.
  std::vector<detail::BasisElt> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (g[j].lt.divides(g[i].lt) &&
          (g[i].lt != g[j].lt || j < i))
        redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  // Tail-reduce each element against the others and normalize.
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<detail::BasisElt> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial r = detail::reduce_impl(minimal[i].p, others, ord);
    out.push_back(r.monic(ord));
  }
  std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ord.less(b.leading_term(ord).first, a.leading_term(ord).first);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Ideal handles
// ---------------------------------------------------------------------------

class Ideal;
using IdealPtr = std::shared_ptr<const Ideal>;

// An ideal given by generators, with synchronized caches for reduced Groebner
// bases (one per order), colength, and powers. Handles are immutable from the
// caller's point of view; concurrent readers trigger at most one computation.
class Ideal : public std::enable_shared_from_this<Ideal> {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> gens)
      : ring_(std::move(ring)) {
    for (auto& g : gens)
      if (!g.is_zero()) gens_.push_back(std::move(g));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& gens() const { return gens_; }
  bool is_zero_ideal() const { return gens_.empty(); }

  // All generators are single terms (a sufficient, generator-level test).
  bool monomial_generated() const {
    for (auto& g : gens_)
      if (!g.is_monomial()) return false;
    return true;
  }

  const std::vector<Polynomial>& gb(const MonomialOrder& ord) const {
    std::scoped_lock lk(mu_);
    auto key = ord.name();
    auto it = gb_.find(key);
    if (it == gb_.end())
      it = gb_.emplace(key, buchberger(ring_, gens_, ord)).first;
    return it->second;
  }
  const std::vector<Polynomial>& gb() const { return gb(ring_->order()); }

  // Internal caches used by the filtration layer.
  mutable std::mutex derived_mu;
  mutable std::map<unsigned, IdealPtr> power_cache;
  mutable std::optional<std::optional<std::uint64_t>> colength_cache;

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::vector<Polynomial>> gb_;
};

inline IdealPtr make_ideal(RingPtr ring, std::vector<Polynomial> gens) {
  return std::make_shared<Ideal>(std::move(ring), std::move(gens));
}

inline IdealPtr unit_ideal(const RingPtr& ring) {
  return make_ideal(ring, {Polynomial::constant(ring, 1)});
}

inline void check_same_ring(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring()))
    throw std::invalid_argument("ideals from different rings");
}

inline bool ideal_membership(const Ideal& I, const Polynomial& f) {
  if (f.is_zero()) return true;
  if (I.gens().empty()) return false;
  return reduce(f, I.gb(), I.ring()->order()).is_zero();
}
inline bool ideal_membership(const IdealPtr& I, const Polynomial& f) {
  return ideal_membership(*I, f);
}

inline bool ideal_equal(const Ideal& a, const Ideal& b) {
  check_same_ring(a, b);
  return a.gb(a.ring()->order()) == b.gb(a.ring()->order());
}
inline bool ideal_equal(const IdealPtr& a, const IdealPtr& b) {
  return ideal_equal(*a, *b);
}

inline IdealPtr ideal_sum(const IdealPtr& a, const IdealPtr& b) {
  check_same_ring(*a, *b);
  auto gens = a->gens();
  gens.insert(gens.end(), b->gens().begin(), b->gens().end());
  return make_ideal(a->ring(), std::move(gens));
}

inline IdealPtr ideal_product(const IdealPtr& a, const IdealPtr& b) {
  check_same_ring(*a, *b);
  std::vector<Polynomial> gens;
  gens.reserve(a->gens().size() * b->gens().size());
  for (auto& f : a->gens())
    for (auto& g : b->gens()) gens.push_back(f * g);
  if (auto ms = detail::as_monomials(gens)) {
    auto minimal = detail::minimize_monomials(std::move(*ms));
    gens.clear();
    for (auto& m : minimal)
      gens.push_back(
          Polynomial::term(a->ring(), m, Scalar(a->ring()->field(), 1)));
  }
  return make_ideal(a->ring(), std::move(gens));
}

// I^n by repeated products, interreducing the generator list (reduced GB)
// after each multiplication to keep generator counts bounded.
inline IdealPtr ideal_power(const IdealPtr& I, unsigned n) {
  if (n == 0) return unit_ideal(I->ring());
  std::scoped_lock lk(I->derived_mu);
  auto& cache = I->power_cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  unsigned best = 1;
  for (auto& [k, v] : cache)
    if (k <= n && k > best) best = k;
  IdealPtr acc = best == 1 ? I : cache.at(best);
  for (unsigned k = best; k < n; ++k) {
    IdealPtr prod = ideal_product(acc, I);
    acc = prod->monomial_generated()
              ? prod
              : make_ideal(I->ring(), prod->gb(I->ring()->order()));
    cache.emplace(k + 1, acc);
  }
  cache.emplace(n, acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Intersection (elimination) and colon via intersect-and-divide
// ---------------------------------------------------------------------------

namespace detail {

// Maps polynomials into the ring with a fresh elimination variable prepended.
struct TExtension {
  RingPtr ext;
  explicit TExtension(const RingPtr& ring) {
    std::vector<std::string> vars;
    vars.push_back("@t");
    for (auto& v : ring->vars()) vars.push_back(v);
    ext = make_ring(std::move(vars), ring->field(),
                    MonomialOrder::elimination(1));
  }
  Polynomial up(const Polynomial& f, std::uint32_t tdeg) const {
    Polynomial::TermMap terms;
    for (auto& [m, c] : f.terms()) {
      std::vector<std::uint32_t> e;
      e.reserve(m.nvars() + 1);
      e.push_back(tdeg);
      for (std::size_t i = 0; i < m.nvars(); ++i) e.push_back(m[i]);
      terms.emplace(Monomial(std::move(e)), Scalar(ext->field(), c.value()));
    }
    return Polynomial(ext, std::move(terms));
  }
  std::optional<Polynomial> down(const RingPtr& ring, const Polynomial& f) const {
    Polynomial::TermMap terms;
    for (auto& [m, c] : f.terms()) {
      if (m[0] != 0) return std::nullopt;
      std::vector<std::uint32_t> e(m.exps().begin() + 1, m.exps().end());
      terms.emplace(Monomial(std::move(e)), Scalar(ring->field(), c.value()));
    }
    return Polynomial(ring, std::move(terms));
  }
};

}  // namespace detail

// I ∩ J. Monomial inputs use pairwise lcms; the general case eliminates a
// tag variable t from t·I + (1-t)·J.
inline IdealPtr intersection(const IdealPtr& I, const IdealPtr& J) {
  check_same_ring(*I, *J);
  const RingPtr& ring = I->ring();
  if (I->is_zero_ideal() || J->is_zero_ideal()) return make_ideal(ring, {});
  if (I->monomial_generated() && J->monomial_generated()) {
    std::vector<Monomial> cands;
    auto mi = *detail::as_monomials(I->gens());
    auto mj = *detail::as_monomials(J->gens());
    cands.reserve(mi.size() * mj.size());
    for (auto& a : mi)
      for (auto& b : mj) cands.push_back(lcm(a, b));
    auto minimal = detail::minimize_monomials(std::move(cands));
    std::vector<Polynomial> gens;
    for (auto& m : minimal)
      gens.push_back(Polynomial::term(ring, m, Scalar(ring->field(), 1)));
    return make_ideal(ring, std::move(gens));
  }
  detail::TExtension tx(ring);
  std::vector<Polynomial> gens;
  for (auto& f : I->gens()) gens.push_back(tx.up(f, 1));
  Polynomial one_minus_t =
      Polynomial::constant(tx.ext, 1) - Polynomial::variable(tx.ext, 0);
  for (auto& g : J->gens()) gens.push_back(tx.up(g, 0) * one_minus_t);
  auto gb = buchberger(tx.ext, gens, tx.ext->order());
  std::vector<Polynomial> out;
  for (auto& f : gb)
    if (auto d = tx.down(ring, f)) out.push_back(std::move(*d));
  return make_ideal(ring, std::move(out));
}

// ---------------------------------------------------------------------------
// Colength and standard monomials
// ---------------------------------------------------------------------------

namespace detail {

// Enumerates the monomials outside a minimally generated monomial ideal by
// slicing on the last variable; callers guarantee finiteness.
inline void enum_std_rec(const std::vector<std::vector<std::uint32_t>>& gens,
                         std::size_t d, std::vector<std::uint32_t>& suffix,
                         std::vector<Monomial>& out, std::size_t nvars) {
  if (d == 0) {
    if (!gens.empty()) return;  // contains 1
    // suffix holds exponents for vars nvars-1 down to 0.
    std::vector<std::uint32_t> nat(nvars, 0);
    for (std::size_t i = 0; i < suffix.size(); ++i)
      nat[nvars - 1 - i] = suffix[i];
    out.emplace_back(std::move(nat));
    return;
  }
  std::uint32_t bound = Monomial::kMaxExp;
  for (auto& g : gens) {
    bool pure = true;
    for (std::size_t i = 0; i + 1 < d; ++i)
      if (g[i]) {
        pure = false;
        break;
      }
    if (pure) bound = std::min(bound, g[d - 1]);
  }
  if (bound == Monomial::kMaxExp)
    throw std::domain_error("standard monomials of a non-mprimary ideal");
  for (std::uint32_t a = 0; a < bound; ++a) {
    std::vector<std::vector<std::uint32_t>> slice;
    for (auto& g : gens) {
      if (g[d - 1] > a) continue;
      slice.emplace_back(g.begin(), g.begin() + static_cast<long>(d - 1));
    }
    // minimize slice
    std::sort(slice.begin(), slice.end(),
              [](const auto& x, const auto& y) {
                std::uint64_t dx = 0, dy = 0;
                for (auto v : x) dx += v;
                for (auto v : y) dy += v;
                return dx != dy ? dx < dy : x < y;
              });
    slice.erase(std::unique(slice.begin(), slice.end()), slice.end());
    std::vector<std::vector<std::uint32_t>> kept;
    for (auto& m : slice) {
      bool red = false;
      for (auto& k : kept) {
        bool div = true;
        for (std::size_t i = 0; i < k.size(); ++i)
          if (k[i] > m[i]) {
            div = false;
            break;
          }
        if (div) {
          red = true;
          break;
        }
      }
      if (!red) kept.push_back(std::move(m));
    }
    suffix.push_back(a);
    enum_std_rec(kept, d - 1, suffix, out, nvars);
    suffix.pop_back();
  }
}

inline std::vector<Monomial> leading_monomials(const Ideal& I) {
  std::vector<Monomial> lts;
  for (auto& g : I.gb(I.ring()->order()))
    lts.push_back(g.leading_term(I.ring()->order()).first);
  return lts;
}

}  // namespace detail

// True when the leading-term ideal contains a pure power of every variable
// (exact criterion for the quotient to have finite length).
inline bool is_mprimary(const Ideal& I) {
  if (I.gens().empty()) return I.ring()->nvars() == 0;
  auto lts = detail::leading_monomials(I);
  for (std::size_t v = 0; v < I.ring()->nvars(); ++v) {
    bool found = false;
    for (auto& m : lts) {
      if (m[v] == 0) continue;
      bool pure = true;
      for (std::size_t i = 0; i < m.nvars(); ++i)
        if (i != v && m[i]) {
          pure = false;
          break;
        }
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}
inline bool is_mprimary(const IdealPtr& I) { return is_mprimary(*I); }

// Monomials outside the leading-term ideal; a vector-space basis of A/I.
// Throws unless I is m-primary.
inline std::vector<Monomial> standard_monomials(const Ideal& I) {
  if (!is_mprimary(I))
    throw std::domain_error("standard monomial basis needs an m-primary ideal");
  auto lts = detail::minimize_monomials(detail::leading_monomials(I));
  std::vector<std::vector<std::uint32_t>> gens;
  for (auto& m : lts) gens.push_back(m.exps());
  std::vector<Monomial> out;
  std::vector<std::uint32_t> suffix;
  detail::enum_std_rec(gens, I.ring()->nvars(), suffix, out, I.ring()->nvars());
  return out;
}
inline std::vector<Monomial> standard_monomials(const IdealPtr& I) {
  return standard_monomials(*I);
}

// λ(A/I) as the number of standard monomials; nullopt means infinite
// (I not m-primary).
inline std::optional<std::uint64_t> colength(const Ideal& I) {
  {
    std::scoped_lock lk(I.derived_mu);
    if (I.colength_cache) return *I.colength_cache;
  }
  std::optional<std::uint64_t> result;
  if (is_mprimary(I)) result = standard_monomials(I).size();
  std::scoped_lock lk(I.derived_mu);
  I.colength_cache = result;
  return result;
}
inline std::optional<std::uint64_t> colength(const IdealPtr& I) {
  return colength(*I);
}

}  // namespace rrfilt
