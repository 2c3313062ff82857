#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "rrfilt/filtration.hpp"

namespace rrfilt {

struct ReductionError : std::runtime_error {
  explicit ReductionError(const std::string& m) : std::runtime_error(m) {}
};

// Witness that J ⊆ I is a reduction: J·I^n = I^{n+1} was verified at the
// stated n (and re-verified at n+1). For a random minimal reduction, J has
// dim-many generic generators and λ(A/J) = e_0(I).
struct ReductionCertificate {
  std::vector<Polynomial> J;
  unsigned reduction_number = 0;
  std::uint64_t e0 = 0;  // λ(A/(J + mods))
  bool minimal = true;   // #gens == dim
  bool explicit_generators = false;
  unsigned trials_run = 0;
  unsigned min_over_trials = 0;
  unsigned max_over_trials = 0;
};

namespace detail {

inline IdealPtr plus_mods(FiltrationCache& F, IdealPtr X) {
  if (F.mods().empty()) return X;
  return ideal_sum(std::move(X), make_ideal(F.ring(), F.mods()));
}

// Least n ≤ n_cap with J·I^n (+ mods) = I^{n+1} (+ mods), if any. Once it
// holds at n it holds at every larger n, but the next index is re-verified
// as a consistency check.
inline std::optional<unsigned> reduction_number_of(
    FiltrationCache& F, const std::vector<Polynomial>& J) {
  unsigned cap = F.params().n_cap;
  IdealPtr Jideal =
      J.empty() ? make_ideal(F.ring(), {}) : make_ideal(F.ring(), J);
  for (unsigned n = 0; n <= cap; ++n) {
    IdealPtr lhs =
        n == 0 ? detail::plus_mods(F, Jideal)
               : detail::plus_mods(
                     F, ideal_product(Jideal,
                                      ideal_power(F.base(), F.stride() * n)));
    if (ideal_equal(lhs, F.power(n + 1))) {
      IdealPtr next = detail::plus_mods(
          F, ideal_product(Jideal,
                           ideal_power(F.base(), F.stride() * (n + 1))));
      if (!ideal_equal(next, F.power(n + 2)))
        throw std::logic_error("reduction property failed to persist");
      return n;
    }
  }
  return std::nullopt;
}

// Drops generators lying in the ideal of the others. Redundant generators
// poison reduction draws: a combination that weights them forces zeros away
// from the origin (the pencil then contains an element every irredundant
// generator divides into), and no draw is m-primary with the right colength.
inline std::vector<Polynomial> minimal_generators(
    const RingPtr& ring, const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> kept = gens;
  bool monomial = true;
  for (auto& g : kept) monomial &= g.is_monomial();
  if (monomial) {
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const Monomial& mi = kept[i].terms().begin()->first;
      bool redundant = false;
      for (std::size_t j = 0; j < kept.size() && !redundant; ++j) {
        if (j == i) continue;
        const Monomial& mj = kept[j].terms().begin()->first;
        // strict divisor anywhere, or an earlier duplicate
        redundant = mj.divides(mi) && (!(mi == mj) || j < i);
      }
      if (!redundant) out.push_back(kept[i]);
    }
    return out;
  }
  for (std::size_t i = kept.size(); i-- > 0 && kept.size() > 1;) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    if (ideal_membership(make_ideal(ring, others), kept[i]))
      kept.erase(kept.begin() + i);
  }
  return kept;
}

inline std::vector<Polynomial> draw_reduction(FiltrationCache& F,
                                              std::mt19937_64& rng,
                                              unsigned trial,
                                              const std::vector<Polynomial>& gens) {
  const Field& f = F.ring()->field();
  // Odd trials partition the generators across the components instead of
  // letting every component see all of them: full-support pencils can force
  // zeros away from the origin (e.g. for (x^4, y^5, x y^3) any generic pair
  // shares three extra points, while (x^4 + y^5, x y^3) is a clean minimal
  // reduction).
  std::vector<unsigned> owner(gens.size(), 0);
  if (trial % 2 == 1 && gens.size() > F.dim()) {
    std::vector<std::size_t> order(gens.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < order.size(); ++i)
      owner[order[i]] = i < F.dim()
                            ? static_cast<unsigned>(i)
                            : static_cast<unsigned>(rng() % F.dim());
  }
  std::vector<Polynomial> J;
  for (unsigned i = 0; i < F.dim(); ++i) {
    Polynomial x(F.ring());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (trial % 2 == 1 && gens.size() > F.dim() && owner[k] != i) continue;
      long c;
      if (f.rationals()) {
        long h = 3 + static_cast<long>(trial / 4);
        c = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * h + 1)) -
            h;
      } else {
        c = static_cast<long>(rng() % f.p);
      }
      if (c != 0) x += gens[k].scaled(Scalar(f, c));
    }
    if (x.is_zero()) return {};  // degenerate draw, reject whole candidate
    J.push_back(std::move(x));
  }
  return J;
}

}  // namespace detail

// Verifies an explicitly given reduction J of the filtered ideal.
inline ReductionCertificate verify_reduction(FiltrationCache& F,
                                             std::vector<Polynomial> J) {
  for (auto& g : J)
    if (!ideal_membership(F.power(1), g))
      throw ReductionError("reduction generator not contained in the ideal");
  IdealPtr Jm = detail::plus_mods(
      F, J.empty() ? make_ideal(F.ring(), {}) : make_ideal(F.ring(), J));
  auto len = colength(*Jm);
  if (!len)
    throw ReductionError("candidate reduction is not m-primary");
  auto n = detail::reduction_number_of(F, J);
  if (!n)
    throw ReductionError("J*I^n = I^{n+1} not reached within n_cap = " +
                         std::to_string(F.params().n_cap));
  ReductionCertificate cert;
  cert.J = std::move(J);
  cert.reduction_number = *n;
  cert.e0 = *len;
  cert.minimal = cert.J.size() == F.dim();
  cert.explicit_generators = true;
  cert.trials_run = 1;
  cert.min_over_trials = cert.max_over_trials = *n;
  return cert;
}

// Random minimal reduction: dim-many generic combinations of the
// generators. Repeats over `trials` draws; reports the best (smallest)
// reduction number found together with the min/max spread, and checks
// that λ(A/J) agrees across all successful draws.
inline ReductionCertificate minimal_reduction(FiltrationCache& F,
                                              unsigned trials,
                                              std::uint64_t seed) {
  if (F.dim() == 0) return verify_reduction(F, {});
  if (trials == 0) throw ReductionError("reduction search with zero trials");
  std::mt19937_64 rng(seed);
  std::vector<Polynomial> gens =
      detail::minimal_generators(F.ring(), F.ideal_gens());
  std::optional<ReductionCertificate> best;
  unsigned lo = 0, hi = 0, successes = 0;
  for (unsigned t = 0; t < trials; ++t) {
    std::vector<Polynomial> J = detail::draw_reduction(F, rng, t, gens);
    if (J.empty()) continue;
    IdealPtr Jm = detail::plus_mods(F, make_ideal(F.ring(), J));
    auto len = colength(*Jm);
    if (!len) continue;  // not m-primary: non-generic draw
    auto n = detail::reduction_number_of(F, J);
    if (!n) continue;
    if (best && best->e0 != *len)
      throw std::logic_error("minimal reductions with different colengths");
    if (++successes == 1) {
      lo = hi = *n;
    } else {
      lo = std::min(lo, *n);
      hi = std::max(hi, *n);
    }
    if (!best || *n < best->reduction_number) {
      ReductionCertificate cert;
      cert.J = std::move(J);
      cert.reduction_number = *n;
      cert.e0 = *len;
      best = std::move(cert);
    }
  }
  if (!best)
    throw ReductionError("no minimal reduction found in " +
                         std::to_string(trials) + " trials");
  best->trials_run = trials;
  best->min_over_trials = lo;
  best->max_over_trials = hi;
  return std::move(*best);
}

// Reduction number of the power filtration K = I^n, sharing the base
// power cache.
inline ReductionCertificate reduction_of_power(FiltrationCache& F, unsigned n,
                                               unsigned trials,
                                               std::uint64_t seed) {
  FiltParams p = F.params();
  p.seed = seed;
  FiltrationCache Fn(F.base(), p, F.mods(), F.stride() * n);
  return minimal_reduction(Fn, trials, seed);
}

// Whether the Ratliff-Rush filtration has minimal multiplicity with respect
// to J, i.e. closure(j+1) = J·closure(j) for every j ≥ 1. Past the
// stabilization bound the condition reduces to the certified reduction
// property, so only finitely many indices need checking.
inline bool tilde_minimal_multiplicity(FiltrationCache& F,
                                       const ReductionCertificate& cert) {
  IdealPtr Jideal = make_ideal(F.ring(), cert.J);
  unsigned upto =
      std::max(F.stabilization_bound(), cert.reduction_number) + 1;
  for (unsigned j = 1; j <= upto; ++j) {
    IdealPtr rhs = detail::plus_mods(F, ideal_product(Jideal, F.closure(j)));
    if (!ideal_equal(F.closure(j + 1), rhs)) return false;
  }
  return true;
}

}  // namespace rrfilt
