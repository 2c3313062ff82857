#pragma once

#include "rrfilt/kernel.hpp"

namespace rrfilt {

// (I : g) = { f : f·g ∈ I }.
//
// For m-primary I this is the kernel of multiplication by g on A/I. The
// general case falls back to intersect-and-divide: generators of I ∩ (g)
// are exactly divisible by g.
inline IdealPtr colon(const IdealPtr& I, const Polynomial& g) {
  if (g.is_zero()) throw std::domain_error("colon by the zero polynomial");
  const RingPtr& ring = I->ring();
  if (g.is_monomial() && I->monomial_generated()) {
    const auto& [gm, gc] = *g.terms().begin();
    std::vector<Monomial> cands;
    for (auto& f : I->gens()) {
      const Monomial& m = f.terms().begin()->first;
      cands.push_back(m / gcd(m, gm));
    }
    std::vector<Polynomial> gens;
    for (auto& m : detail::minimize_monomials(std::move(cands)))
      gens.push_back(Polynomial::term(ring, m, Scalar(ring->field(), 1)));
    return make_ideal(ring, std::move(gens));
  }
  if (is_mprimary(*I)) return colon_kernel(I, {g}).materialize();
  auto meet = intersection(I, make_ideal(ring, {g}));
  std::vector<Polynomial> gens;
  for (auto& f : meet->gens()) {
    auto q = exact_div(f, g, ring->order());
    if (!q) throw std::logic_error("intersection generator not divisible");
    gens.push_back(std::move(*q));
  }
  return make_ideal(ring, std::move(gens));
}

// (I : J) = ∩ over generators g of J of (I : g).
inline IdealPtr colon(const IdealPtr& I, const IdealPtr& J) {
  check_same_ring(*I, *J);
  if (J->is_zero_ideal()) throw std::domain_error("colon by the zero ideal");
  if (is_mprimary(*I)) return colon_kernel(I, J->gens()).materialize();
  IdealPtr acc;
  for (auto& g : J->gens()) {
    IdealPtr c = colon(I, g);
    acc = acc ? intersection(acc, c) : c;
  }
  return acc;
}

}  // namespace rrfilt
