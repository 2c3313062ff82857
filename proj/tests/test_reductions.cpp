#include <catch_amalgamated.hpp>

#include "rrfilt/reductions.hpp"
#include "rrfilt/parse.hpp"

using namespace rrfilt;

namespace {

FiltrationCache make_cache(const char* ring, const char* gens,
                           std::uint64_t seed = 1) {
  auto R = parse_ring(ring);
  FiltParams p;
  p.seed = seed;
  return FiltrationCache(make_ideal(R, parse_poly_list(R, gens)), p);
}

}  // namespace

TEST_CASE("a parameter ideal is its own reduction") {
  FiltrationCache F = make_cache("QQ[x,y]", "x^2, y^2");
  ReductionCertificate red = minimal_reduction(F, 24, 1);
  CHECK(red.reduction_number == 0);
  CHECK(red.e0 == 4);
  CHECK(red.minimal);
  CHECK(red.J.size() == 2);
  CHECK(red.min_over_trials == 0);
  CHECK(red.max_over_trials == 0);
}

TEST_CASE("minimal reductions of the worked examples") {
  SECTION("dim-3 ideal between m^2 and m^3") {
    FiltrationCache F =
        make_cache("QQ[x,y,z]", "x^2-y^2, y^2-z^2, x*y, x*z, y*z");
    ReductionCertificate red = minimal_reduction(F, 24, 1);
    CHECK(red.reduction_number == 2);
    CHECK(red.e0 == 8);
    CHECK(red.J.size() == 3);
    // e_0 = λ(A/J): the multiplicity certificate
    CHECK(colength(*make_ideal(F.ring(), red.J)) == 8);
  }
  SECTION("marley dim-2") {
    FiltrationCache F = make_cache("QQ[x,y]", "x^7, x^6*y, x*y^6, y^7");
    ReductionCertificate red = minimal_reduction(F, 24, 1);
    CHECK(red.reduction_number == 5);
    CHECK(red.e0 == 49);
  }
}

TEST_CASE("explicit reduction verification") {
  FiltrationCache F =
      make_cache("QQ[x,y,z]", "x^3, y^3, z^3, x^2*y, x*y^2, y*z^2, x*y*z");
  ReductionCertificate red = verify_reduction(
      F, parse_poly_list(F.ring(), "x^3, y^3, z^3"));
  CHECK(red.reduction_number == 2);
  CHECK(red.e0 == 27);
  CHECK(red.minimal);
  CHECK(red.explicit_generators);

  // a generator outside the ideal is rejected outright
  CHECK_THROWS_AS(verify_reduction(F, parse_poly_list(F.ring(), "x^2")),
                  ReductionError);
  // a sub-m-primary candidate never reaches J I^n = I^{n+1}
  CHECK_THROWS_AS(verify_reduction(F, parse_poly_list(F.ring(), "x^3, y^3")),
                  ReductionError);
}

TEST_CASE("reduction numbers of power filtrations") {
  // red(I^n) = 2 for every n on this ideal, not just for n = 1; a handful
  // of draws keeps the large-power Groebner work in check
  FiltrationCache F =
      make_cache("QQ[x,y,z]", "x^2-y^2, y^2-z^2, x*y, x*z, y*z");
  ReductionCertificate red = reduction_of_power(F, 2, 3, 1);
  CHECK(red.reduction_number == 2);
  // e_0(I^n) = n^dim e_0(I)
  CHECK(red.e0 == 8 * 8);
}

TEST_CASE("tilde minimal multiplicity") {
  SECTION("holds when sigma_j vanishes for j >= 1") {
    FiltrationCache F = make_cache("QQ[x,y]", "x^7, x^6*y, x*y^6, y^7");
    ReductionCertificate red = minimal_reduction(F, 24, 1);
    CHECK(tilde_minimal_multiplicity(F, red));
  }
  SECTION("holds for the dim-3 ideal with vanishing e_2, e_3") {
    FiltrationCache F =
        make_cache("QQ[x,y,z]", "x^2-y^2, y^2-z^2, x*y, x*z, y*z");
    ReductionCertificate red = minimal_reduction(F, 24, 1);
    CHECK(tilde_minimal_multiplicity(F, red));
  }
  SECTION("fails when e_2 does not vanish") {
    FiltrationCache F =
        make_cache("QQ[x,y,z]", "x^3, y^3, z^3, x^2*y, x*y^2, y*z^2, x*y*z");
    ReductionCertificate red = minimal_reduction(F, 24, 1);
    CHECK_FALSE(tilde_minimal_multiplicity(F, red));
  }
}

TEST_CASE("reductions inside a quotient cache") {
  FiltrationCache F = make_cache("QQ[x,y,z]", "x^2, y^2, z^2");
  FiltrationCache Q = F.quotient({parse_polynomial(F.ring(), "z")});
  ReductionCertificate red = minimal_reduction(Q, 24, 1);
  CHECK(red.J.size() == 2);  // dim dropped with the quotient
  CHECK(red.reduction_number == 0);
  CHECK(red.e0 == 4);
}
