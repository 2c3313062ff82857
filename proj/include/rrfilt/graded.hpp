#pragma once

#include "rrfilt/hilbert.hpp"

namespace rrfilt {

// Depth of the associated graded ring G_I, computed by superficial descent:
//  - r_I != 0 means closure(n) != I^n somewhere, so H^0(G) != 0 and the
//    depth is zero; the witness records the offending power.
//  - r_I == 0 forces depth >= 1; then any superficial x has b(x;z) = 0
//    (sandwich I^n ⊆ (I^{n+1}:x) ⊆ closure(n)), x* is G-regular, and
//    G mod x* is the associated graded ring of the quotient filtration.
struct DepthReport {
  unsigned depth = 0;
  std::vector<Polynomial> descent_chain;        // certified superficial xs
  std::optional<unsigned> positivity_witness;   // least n with closure != power
};

namespace detail {

inline void depth_descend(FiltrationCache& F, DepthReport& rep) {
  if (F.dim() == 0) return;
  ZPoly r = F.r_polynomial();
  if (!r.is_zero()) {
    for (unsigned j = 0;; ++j)
      if (r.coeff(j) != 0) {
        rep.positivity_witness = j + 1;
        return;
      }
  }
  SuperficialCertificate cert = F.superficial();
  if (!F.b_polynomial(cert).is_zero())
    throw std::logic_error(
        "trivial Ratliff-Rush filtration with nonzero b-polynomial");
  rep.descent_chain.push_back(cert.element);
  ++rep.depth;
  FiltrationCache next = F.quotient({cert.element});
  depth_descend(next, rep);
}

}  // namespace detail

inline DepthReport depth_assoc_graded(FiltrationCache& F) {
  DepthReport rep;
  detail::depth_descend(F, rep);
  return rep;
}

// Asymptotic depth ξ_I = depth G_{I^n} for n >> 0. The limit exists, but
// depth G_{I^n} can be constant below it for many powers (it typically
// jumps at the reduction number), so the agreement window only counts from
// n >= red(I). Values that never stabilize within max_power are flagged as
// estimates.
struct XiReport {
  unsigned xi = 0;
  bool stabilized = false;
  unsigned window_from = 1;      // first power the window may start at
  std::vector<unsigned> depths;  // depth G_{I^n} for n = 1, 2, ...
};

inline XiReport xi_estimate(FiltrationCache& F, unsigned max_power,
                            unsigned window) {
  if (max_power == 0 || window == 0)
    throw std::invalid_argument("xi estimate needs positive caps");
  XiReport rep;
  rep.window_from = std::max(
      1u, minimal_reduction(F, F.params().trials, F.params().seed ^ 0xa5a5)
              .reduction_number);
  unsigned run = 0;
  for (unsigned n = 1; n <= max_power; ++n) {
    FiltParams p = F.params();
    p.seed = F.params().seed + 0x517cc1b727220a95ull * n;
    FiltrationCache Fn(F.base(), p, F.mods(), F.stride() * n);
    DepthReport d = depth_assoc_graded(Fn);
    rep.depths.push_back(d.depth);
    run = n > rep.window_from &&
                  rep.depths[rep.depths.size() - 2] == d.depth
              ? run + 1
              : (n >= rep.window_from ? 1 : 0);
    if (run >= window) {
      rep.xi = d.depth;
      rep.stabilized = true;
      return rep;
    }
  }
  rep.xi = rep.depths.back();
  return rep;
}

}  // namespace rrfilt
