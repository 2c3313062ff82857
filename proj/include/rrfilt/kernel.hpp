#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rrfilt/groebner.hpp"

namespace rrfilt {

// Finite-dimensional quotient A/X of the polynomial ring by an m-primary
// ideal, with its standard-monomial basis. Colons (X : g) are computed here
// as kernels of the multiplication map by g on A/X, which avoids elimination
// Groebner bases entirely on the hot paths.
struct QuotientBasis {
  IdealPtr X;
  std::vector<Monomial> mons;
  std::map<Monomial, unsigned> index;
  bool monomial = false;  // X generated by monomials: normal form is a filter
  // Prepared reducer for the non-monomial case. When the basis is
  // homogeneous, normal forms preserve degree, so terms above the largest
  // standard-monomial degree vanish and are dropped before division.
  std::vector<detail::BasisElt> reducer;
  bool homogeneous = false;
  std::uint64_t max_std_deg = 0;

  std::uint64_t dim() const { return mons.size(); }
};

inline QuotientBasis quotient_basis(IdealPtr X) {
  QuotientBasis qb;
  qb.monomial = X->monomial_generated();
  qb.mons = standard_monomials(*X);
  for (unsigned i = 0; i < qb.mons.size(); ++i) qb.index.emplace(qb.mons[i], i);
  for (auto& m : qb.mons) qb.max_std_deg = std::max(qb.max_std_deg, m.degree());
  if (!qb.monomial) {
    const auto& gb = X->gb(X->ring()->order());
    qb.reducer = detail::to_basis(gb, X->ring()->order());
    qb.homogeneous = std::all_of(gb.begin(), gb.end(), [](const Polynomial& g) {
      return g.is_homogeneous();
    });
  }
  qb.X = std::move(X);
  return qb;
}

// Sparse vector over the standard-monomial basis, sorted by index.
using SparseVec = std::vector<std::pair<unsigned, Scalar>>;

inline SparseVec nf_vec(const QuotientBasis& qb, const Polynomial& f) {
  const Polynomial* reduced = &f;
  Polynomial tmp;
  if (!qb.monomial) {
    if (qb.homogeneous) {
      Polynomial::TermMap keep;
      for (auto& [m, c] : f.terms())
        if (m.degree() <= qb.max_std_deg) keep.emplace(m, c);
      tmp = detail::reduce_impl(Polynomial(f.ring(), std::move(keep)),
                                qb.reducer, qb.X->ring()->order());
    } else {
      tmp = detail::reduce_impl(f, qb.reducer, qb.X->ring()->order());
    }
    reduced = &tmp;
  }
  SparseVec v;
  for (auto& [m, c] : reduced->terms()) {
    auto it = qb.index.find(m);
    if (it != qb.index.end()) v.emplace_back(it->second, c);
  }
  std::sort(v.begin(), v.end(),
            [](auto& a, auto& b) { return a.first < b.first; });
  return v;
}

inline Polynomial poly_of(const QuotientBasis& qb, const SparseVec& v) {
  Polynomial::TermMap terms;
  for (auto& [i, c] : v) terms.emplace(qb.mons[i], c);
  return Polynomial(qb.X->ring(), std::move(terms));
}

namespace detail {

inline void axpy(SparseVec& v, const Scalar& c, const SparseVec& row) {
  if (c.is_zero()) return;
  SparseVec out;
  out.reserve(v.size() + row.size());
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < row.size()) {
    if (j == row.size() || (i < v.size() && v[i].first < row[j].first)) {
      out.push_back(std::move(v[i++]));
    } else if (i == v.size() || row[j].first < v[i].first) {
      out.emplace_back(row[j].first, c * row[j].second);
      ++j;
    } else {
      Scalar s = v[i].second + c * row[j].second;
      if (!s.is_zero()) out.emplace_back(v[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  v = std::move(out);
}

// Incremental sparse Gaussian elimination that tracks the combination of
// input rows producing each reduced row. Rows are normalized so the pivot
// (their first surviving coordinate) has coefficient one, hence reduction
// never touches coordinates left of the scan position.
class SparseEliminator {
 public:
  // Returns the input combination when the row reduces to zero (a kernel
  // element), nothing when a new pivot is created.
  std::optional<SparseVec> feed(SparseVec v, SparseVec combo) {
    std::size_t pos = 0;
    while (pos < v.size()) {
      auto it = pivots_.find(v[pos].first);
      if (it == pivots_.end()) {
        ++pos;
        continue;
      }
      const Row& r = rows_[it->second];
      Scalar c = -v[pos].second;
      axpy(v, c, r.v);
      axpy(combo, c, r.combo);
    }
    if (v.empty()) return combo;
    Scalar inv = v.front().second.inverse();
    for (auto& [i, c] : v) c *= inv;
    for (auto& [i, c] : combo) c *= inv;
    pivots_.emplace(v.front().first, rows_.size());
    rows_.push_back({std::move(v), std::move(combo)});
    return std::nullopt;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  struct Row {
    SparseVec v, combo;
  };
  std::vector<Row> rows_;
  std::unordered_map<unsigned, std::size_t> pivots_;
};

}  // namespace detail

// (X : J)/X as a subspace of A/X, with λ(A/(X:J)) attached. Generators of
// the colon ideal are the ambient generators plus the kernel representatives.
struct ColonRep {
  IdealPtr ambient;
  std::vector<Polynomial> kernel;
  std::uint64_t length = 0;  // λ(A/(X:J))

  IdealPtr materialize() const {
    auto gens = ambient->gens();
    gens.insert(gens.end(), kernel.begin(), kernel.end());
    return make_ideal(ambient->ring(), std::move(gens));
  }
};

// Kernel of simultaneous multiplication by every generator of J on A/X:
// exactly (X : J)/X. Works for any m-primary X.
//
// The running subspace is kept as coordinate vectors over the standard
// basis; images under multiplication go through a lazily built column table
// (normal forms of monomial · g), so no polynomial products of dense kernel
// combinations are ever formed.
inline ColonRep colon_kernel(const QuotientBasis& qb,
                             const std::vector<Polynomial>& colon_gens) {
  const RingPtr& ring = qb.X->ring();
  const Scalar one(ring->field(), 1);
  const unsigned dim = static_cast<unsigned>(qb.mons.size());

  std::vector<SparseVec> cur;  // empty while still the full space
  bool full_space = true;
  for (auto& g : colon_gens) {
    if (g.is_zero()) continue;
    if (!full_space && cur.empty()) break;
    std::vector<std::optional<SparseVec>> cols(dim);
    auto column = [&](unsigned i) -> const SparseVec& {
      if (!cols[i])
        cols[i] = nf_vec(qb, Polynomial::term(ring, qb.mons[i], one) * g);
      return *cols[i];
    };
    detail::SparseEliminator elim;
    std::vector<SparseVec> kers;
    std::size_t count = full_space ? dim : cur.size();
    for (unsigned i = 0; i < count; ++i) {
      SparseVec img;
      if (full_space) {
        img = column(i);
      } else {
        for (auto& [j, c] : cur[i]) detail::axpy(img, c, column(j));
      }
      if (auto k = elim.feed(std::move(img), SparseVec{{i, one}}))
        kers.push_back(std::move(*k));
    }
    if (full_space) {
      cur = std::move(kers);  // combo indices are basis indices
      full_space = false;
    } else {
      std::vector<SparseVec> next;
      next.reserve(kers.size());
      for (auto& combo : kers) {
        SparseVec v;
        for (auto& [i, c] : combo) detail::axpy(v, c, cur[i]);
        next.push_back(std::move(v));
      }
      cur = std::move(next);
    }
  }
  ColonRep rep;
  rep.ambient = qb.X;
  rep.length = full_space ? 0 : qb.dim() - cur.size();
  if (full_space)
    for (auto& m : qb.mons)
      rep.kernel.push_back(Polynomial::term(ring, m, one));
  else
    for (auto& v : cur) rep.kernel.push_back(poly_of(qb, v));
  return rep;
}

inline ColonRep colon_kernel(IdealPtr X, const std::vector<Polynomial>& gens) {
  return colon_kernel(quotient_basis(std::move(X)), gens);
}

// (X : x^k)/X as the kernel of the k-th power of the multiplication-by-x
// matrix. Building the matrix once and iterating sparse products avoids
// normal forms of the dense polynomial x^k.
inline ColonRep colon_power_kernel(const QuotientBasis& qb,
                                   const Polynomial& x, unsigned k) {
  const RingPtr& ring = qb.X->ring();
  const Scalar one(ring->field(), 1);
  const unsigned dim = static_cast<unsigned>(qb.mons.size());
  std::vector<SparseVec> M(dim);
  for (unsigned j = 0; j < dim; ++j)
    M[j] = nf_vec(qb, Polynomial::term(ring, qb.mons[j], one) * x);
  detail::SparseEliminator elim;
  std::vector<SparseVec> kers;
  for (unsigned j = 0; j < dim; ++j) {
    SparseVec img = M[j];
    for (unsigned t = 1; t < k && !img.empty(); ++t) {
      SparseVec next;
      for (auto& [i, c] : img) detail::axpy(next, c, M[i]);
      img = std::move(next);
    }
    if (auto kc = elim.feed(std::move(img), SparseVec{{j, one}}))
      kers.push_back(std::move(*kc));
  }
  ColonRep rep;
  rep.ambient = qb.X;
  rep.length = dim - kers.size();
  for (auto& v : kers) rep.kernel.push_back(poly_of(qb, v));
  return rep;
}

// Whether every generator of J multiplies the given residues (normal forms
// over qb) into X, i.e. whether they all lie in (X : J). Used to certify
// that a cheap single-element colon already equals the full ideal colon.
inline bool killed_by(const QuotientBasis& qb,
                      const std::vector<Polynomial>& residues,
                      const std::vector<Polynomial>& gens) {
  const RingPtr& ring = qb.X->ring();
  const Scalar one(ring->field(), 1);
  std::vector<SparseVec> coords;
  coords.reserve(residues.size());
  for (auto& p : residues) coords.push_back(nf_vec(qb, p));
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    std::vector<std::optional<SparseVec>> cols(qb.mons.size());
    for (auto& v : coords) {
      SparseVec img;
      for (auto& [j, c] : v) {
        if (!cols[j])
          cols[j] = nf_vec(qb, Polynomial::term(ring, qb.mons[j], one) * g);
        detail::axpy(img, c, *cols[j]);
      }
      if (!img.empty()) return false;
    }
  }
  return true;
}

// Nullity of multiplication by g on A/X, i.e. λ((X:g)/X). Stops early once
// the nullity exceeds `bail` (when the caller only needs an equality check).
inline std::uint64_t mult_nullity(const QuotientBasis& qb, const Polynomial& g,
                                  std::uint64_t bail = UINT64_MAX) {
  detail::SparseEliminator elim;
  std::uint64_t null = 0;
  for (unsigned i = 0; i < qb.mons.size(); ++i) {
    Polynomial sm = Polynomial::term(qb.X->ring(), qb.mons[i],
                                     Scalar(qb.X->ring()->field(), 1));
    if (elim.feed(nf_vec(qb, sm * g), SparseVec{})) {
      if (++null > bail) return null;
    }
  }
  return null;
}

}  // namespace rrfilt
