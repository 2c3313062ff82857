#include <catch_amalgamated.hpp>

#include "rrfilt/filtration.hpp"
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

TEST_CASE("powers, lengths, and the m-primary guard") {
  FiltrationCache F = make_cache("QQ[x,y]", "x^2, y^2");
  CHECK(F.dim() == 2);
  CHECK(F.length(1) == 4);
  CHECK(F.length(2) == 12);  // λ(A/I^n) = 4 * C(n+1, 2) for a regular pair
  CHECK(F.length(3) == 24);
  CHECK(ideal_equal(F.power(2),
                    ideal_power(make_ideal(F.ring(),
                                           parse_poly_list(F.ring(), "x^2, y^2")),
                                2)));

  auto R = parse_ring("QQ[x,y]");
  CHECK_THROWS_AS(
      FiltrationCache(make_ideal(R, parse_poly_list(R, "x^2, x*y"))),
      std::domain_error);
}

TEST_CASE("Ratliff-Rush closure of the Rossi-style quartic ideal") {
  // I = (x^4, x^3 y, x y^3, y^4): the closure picks up x^2 y^2.
  FiltrationCache F = make_cache("QQ[x,y]", "x^4, x^3*y, x*y^3, y^4");
  CHECK(F.length(1) == 11);

  IdealPtr cl = F.closure(1);
  Polynomial w = parse_polynomial(F.ring(), "x^2*y^2");
  CHECK(ideal_membership(cl, w));
  CHECK_FALSE(ideal_membership(F.power(1), w));
  CHECK(F.closure_length(1) == 10);

  // closures of higher powers are already trivial here
  CHECK(F.r_polynomial() == ZPoly({1}));
  CHECK(F.stabilization_bound() == 2);
  for (unsigned n = 2; n <= 4; ++n)
    CHECK(ideal_equal(F.closure(n), F.power(n)));

  // every closure contains its power and closures are nested correctly:
  // I^{n+1} ⊆ I·closure(n) ⊆ closure(n+1) at the nontrivial index
  for (auto& g : F.power(1)->gens()) CHECK(ideal_membership(cl, g));
  IdealPtr Icl = ideal_product(F.power(1), cl);
  for (auto& g : Icl->gens()) CHECK(ideal_membership(F.closure(2), g));
}

TEST_CASE("marley dim-2 closure chain and r-polynomial") {
  FiltrationCache F = make_cache("QQ[x,y]", "x^7, x^6*y, x*y^6, y^7");
  CHECK(F.r_polynomial() == ZPoly({10, 12, 9, 4}));
  CHECK(F.stabilization_bound() == 5);

  // the first closure strictly contains I; x^5 y^2 is the witness
  Polynomial w = parse_polynomial(F.ring(), "x^5*y^2");
  CHECK(ideal_membership(F.closure(1), w));
  CHECK_FALSE(ideal_membership(F.power(1), w));
  // and by the x<->y symmetry of the ideal so is x^2 y^5
  CHECK(ideal_membership(F.closure(1), parse_polynomial(F.ring(), "x^2*y^5")));
  CHECK(F.length(1) - F.closure_length(1) == 10);
}

TEST_CASE("superficial certificates") {
  FiltrationCache F = make_cache("QQ[x,y]", "x^4, x^3*y, x*y^3, y^4");
  const SuperficialCertificate& cert = F.superficial();
  CHECK(cert.window_length == F.params().W);
  CHECK(ideal_membership(F.power(1), cert.element));
  CHECK_FALSE(ideal_membership(F.power(2), cert.element));

  // the pure-power sum is superficial here and its b-series is exactly z:
  // (I^2 : x) overshoots I by one dimension (the closure gap), nothing else
  Polynomial x = parse_polynomial(F.ring(), "x^4 + y^4");
  auto by_hand = F.certify(x, 3);
  REQUIRE(by_hand.has_value());
  CHECK(by_hand->window_start == 2);
  CHECK(F.b_polynomial(*by_hand) == ZPoly({0, 1}));

  // certify rejects non-candidates
  CHECK_FALSE(F.certify(Polynomial(F.ring()), 2).has_value());
  CHECK_FALSE(F.certify(parse_polynomial(F.ring(), "x^8"), 2).has_value());
  CHECK_FALSE(F.certify(parse_polynomial(F.ring(), "x"), 2).has_value());
}

TEST_CASE("quotient caches track dimension and mods") {
  FiltrationCache F = make_cache("QQ[x,y,z]", "x^2, y^2, z^2");
  FiltrationCache Q = F.quotient({parse_polynomial(F.ring(), "z")});
  CHECK(Q.dim() == 2);
  CHECK(Q.mods().size() == 1);
  // powers upstairs contain the mods
  CHECK(ideal_membership(Q.power(3), parse_polynomial(F.ring(), "z")));
  // λ(A/(I^n + z)) matches the honest 2-variable computation
  FiltrationCache plain = make_cache("QQ[x,y]", "x^2, y^2");
  for (unsigned n = 1; n <= 3; ++n) CHECK(Q.length(n) == plain.length(n));

  CHECK_THROWS_AS(F.quotient({parse_polynomial(F.ring(), "x"),
                              parse_polynomial(F.ring(), "y"),
                              parse_polynomial(F.ring(), "z"),
                              parse_polynomial(F.ring(), "x + y")}),
                  std::invalid_argument);
}

TEST_CASE("stride caches analyze the power filtration") {
  FiltrationCache F = make_cache("QQ[x,y]", "x^2, y^2");
  FiltrationCache F2(F.base(), F.params(), {}, 2);
  CHECK(ideal_equal(F2.power(1), F.power(2)));
  CHECK(ideal_equal(F2.power(3), F.power(6)));
  CHECK(F2.length(2) == F.length(4));
  CHECK(F2.ideal_gens().size() == ideal_power(F.base(), 2)->gens().size());
  // the closure machinery works at stride > 1 too (trivial here)
  CHECK(F2.r_polynomial().is_zero());
}

TEST_CASE("behaves_well_mod agrees across distinct superficial elements") {
  FiltrationCache F = make_cache("QQ[x,y]", "x^7, x^6*y, x*y^6, y^7");
  Polynomial a = parse_polynomial(F.ring(), "x^7 + y^7");
  Polynomial b = parse_polynomial(F.ring(), "x^7 + x^6*y + x*y^6 + y^7");
  auto ca = F.certify(a, 2);
  auto cb = F.certify(b, 2);
  REQUIRE(ca.has_value());
  REQUIRE(cb.has_value());
  BehaveVerdict va = F.behaves_well_mod({a}, 10);
  BehaveVerdict vb = F.behaves_well_mod({b}, 10);
  CHECK(va.ok == vb.ok);
  CHECK(va.checked_up_to >= F.stabilization_bound());
}

TEST_CASE("superficial sequence descends one dimension at a time") {
  FiltrationCache F = make_cache("QQ[x,y,z]", "x^2, y^2, z^2");
  auto certs = F.find_superficial_sequence(2, 7);
  REQUIRE(certs.size() == 2);
  CHECK(certs[0].window_length == F.params().W);
  // the second element is certified in the quotient, not upstairs
  FiltrationCache down = F.quotient({certs[0].element});
  CHECK(down.certify(certs[1].element, 1).has_value());
  CHECK_THROWS_AS(F.find_superficial_sequence(3, 7), std::invalid_argument);
}
