#include "doctest.h"

#include <map>

#include "cmf/groebner.hpp"
#include "oracles.hpp"

using namespace cmf;
using namespace cmf::oracle;

TEST_CASE("groebner_basis examples") {
  PolyRing R(PrimeField(), 4);
  auto f = parse_poly(R, "3*x0^2+x1*x3-x2^2");
  auto G = groebner_basis(Ideal(R, {f}));
  REQUIRE(G.basis().size() == 1);
  CHECK(G.basis()[0] == f.make_monic());

  PolyRing R2(PrimeField(), 2);
  auto G2 = groebner_basis(ideal(R2, {"x0", "x1"}));
  CHECK(G2.basis().size() == 2);

  // 2x2 minors of [[x0,x1,x2],[x1,x2,x3]] are already a Groebner basis.
  auto tc = ideal(R, {"x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"});
  auto G3 = groebner_basis(tc);
  CHECK(G3.basis().size() == 3);
  for (const auto& g : tc.gens()) {
    bool found = false;
    for (const auto& b : G3.basis())
      if (b == g.make_monic()) found = true;
    CHECK(found);
  }
  CHECK(buchberger_fixpoint(G3));
}

TEST_CASE("Buchberger fixpoint and ideal equality on random ideals") {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    PolyRing R(PrimeField(), 4 + static_cast<int>(rng.below(2)));
    auto I = random_homogeneous_ideal(R, rng, 3 + static_cast<int>(rng.below(2)), 2, 3, 4);
    auto G = groebner_basis(I);
    CHECK(buchberger_fixpoint(G));
    for (const auto& g : I.gens()) CHECK(G.normal_form(g).is_zero());
    // reducedness
    for (std::size_t i = 0; i < G.basis().size(); ++i) {
      CHECK(G.basis()[i].lead_coeff() == 1);
      for (std::size_t j = 0; j < G.basis().size(); ++j)
        if (i != j)
          for (const auto& tm : G.basis()[i].terms())
            CHECK_FALSE(mono::divides(G.basis()[j].lead_monomial(), tm.m));
    }
  }
}

TEST_CASE("GB under lex and elimination orders") {
  PolyRing R(PrimeField(), 4);
  Rng rng(8);
  auto I = random_homogeneous_ideal(R, rng, 3, 2, 2, 3);
  for (auto o : {MonomialOrder::lex(), MonomialOrder::elimination(2), MonomialOrder::grevlex()}) {
    auto G = groebner_basis(I, o);
    CHECK(buchberger_fixpoint(G));
    for (const auto& g : I.gens()) CHECK(G.normal_form(g).is_zero());
  }
}

TEST_CASE("inhomogeneous input") {
  PolyRing R(PrimeField(), 2);
  auto G = groebner_basis(ideal(R, {"x0-1", "x1-x0"}));
  REQUIRE(G.basis().size() == 2);
  CHECK(G.contains(parse_poly(R, "x1-1")));
  CHECK_FALSE(G.contains(parse_poly(R, "x1")));
  auto U = groebner_basis(ideal(R, {"x0-1", "x0"}));
  CHECK(U.is_unit_ideal());
  CHECK(buchberger_fixpoint(G));
}

TEST_CASE("degree cap") {
  PolyRing R(PrimeField(), 3);
  GBOptions opt;
  opt.degree_cap = 3;
  auto I = ideal(R, {"x0^2-x1*x2", "x1^2-x0*x2", "x2^3+x0^3"});
  CHECK_THROWS_AS(groebner_basis(I, opt), DegreeCapExceeded);
}

TEST_CASE("normal_form basics and Macaulay-matrix oracle on 100 instances") {
  PolyRing R(PrimeField(), 4);
  auto I = ideal(R, {"x0*x1-x2^2", "x3^2"});
  auto G = groebner_basis(I);
  CHECK(normal_form(parse_poly(R, "x0*x1*x3-x2^2*x3"), G).is_zero());
  auto irr = parse_poly(R, "x0*x2+x1*x3");
  CHECK(normal_form(irr, G) == irr);

  Rng rng(100);
  for (int t = 0; t < 100; ++t) {
    auto J = random_homogeneous_ideal(R, rng, 3, 2, 3, 3);
    auto GJ = groebner_basis(J);
    int d = 3 + static_cast<int>(rng.below(3));
    auto f = random_form(R, d, rng);
    auto nf = normal_form(f, GJ);
    CHECK(nf == macaulay_normal_form(f, GJ));
    for (const auto& tm : nf.terms())
      for (const auto& m : GJ.lead_monomials()) CHECK_FALSE(mono::divides(m, tm.m));
  }
}

TEST_CASE("ideal_quotient") {
  PolyRing R(PrimeField(), 3);
  auto I = ideal(R, {"x0*x1"});
  CHECK(ideals_equal(ideal_quotient(I, ideal(R, {"1"})), I));
  auto q = ideal_quotient(I, parse_poly(R, "x0"));
  CHECK(ideals_equal(q, ideal(R, {"x1"})));

  Rng rng(4);
  PolyRing S(PrimeField(), 4);
  for (int t = 0; t < 5; ++t) {
    auto A = random_homogeneous_ideal(S, rng, 3, 2, 3, 3);
    auto J = random_homogeneous_ideal(S, rng, 2, 1, 2, 2);
    auto Q = ideal_quotient(A, J);
    auto GA = groebner_basis(A);
    for (int k = 0; k < 10; ++k) {
      // random element of (A:J) of a fixed degree
      Polynomial f(S);
      for (const auto& q : Q.gens()) f += q * random_form(S, 4 - q.degree() < 0 ? 0 : 4 - q.degree(), rng);
      f = f.part(4);
      for (const auto& g : J.gens()) CHECK(GA.normal_form(f * g).is_zero());
    }
    CHECK(ideal_contains(Q, A));
  }
}

TEST_CASE("intersection: syzygy route equals the t-trick route") {
  PolyRing R(PrimeField(), 4);
  Rng rng(12);
  for (int t = 0; t < 5; ++t) {
    auto A = random_homogeneous_ideal(R, rng, 2, 1, 2, 3);
    auto B = random_homogeneous_ideal(R, rng, 2, 1, 2, 3);
    auto I1 = intersect(A, B);
    auto I2 = intersect_by_elimination(A, B);
    CHECK(ideals_equal(I1, I2));
    CHECK(ideal_contains(A, I1));
    CHECK(ideal_contains(B, I1));
  }
  CHECK(ideals_equal(intersect(ideal(R, {"x0"}), ideal(R, {"x1"})), ideal(R, {"x0*x1"})));
}

TEST_CASE("saturation") {
  PolyRing R(PrimeField(), 3);
  auto m = ideal(R, {"x0", "x1", "x2"});
  auto sat = saturation(ideal(R, {"x0^2"}), ideal(R, {"x0"}));
  CHECK(groebner_basis(sat).is_unit_ideal());
  auto tc = ideal(R, {"x0*x1"});
  CHECK(ideals_equal(saturation(tc, m), tc));
  // point ideals squared, intersected: already saturated
  auto p1 = ideal(R, {"x0^2", "x0*x1", "x1^2"});
  auto p2 = ideal(R, {"x1^2", "x1*x2", "x2^2"});
  auto fat = intersect(p1, p2);
  auto s1 = saturate(fat);
  CHECK(ideals_equal(s1, fat));
  // irrelevant component removed
  auto I = intersect(ideal(R, {"x0"}), ideal(R, {"x0^3", "x1^3", "x2^3"}));
  CHECK(ideals_equal(saturate(I), ideal(R, {"x0"})));
  auto twice = saturate(saturate(I));
  CHECK(ideals_equal(twice, saturate(I)));
  CHECK(ideal_contains(saturate(I), I));
}

TEST_CASE("eliminate") {
  PolyRing R(PrimeField(), 3);
  auto I = ideal(R, {"x0*x1-x2^2", "x1^3-x0*x2^2"});
  CHECK(ideals_equal(eliminate(I, 0), I));
  PolyRing R2(PrimeField(), 2);
  CHECK(eliminate(ideal(R2, {"x0-x1"}), 1).gens().empty());
  // Incidence of (s:t) with points of the conic; the conic equation only
  // appears after removing the component s = t = 0.
  PolyRing S(PrimeField(), {"s", "t", "y0", "y1", "y2"});
  auto K0 = ideal(S, {"y0*t-y1*s", "y1*t-y2*s"});
  auto K = saturation(K0, ideal(S, {"s", "t"}));
  auto E = eliminate(K, 2);
  CHECK_FALSE(groebner_basis(eliminate(K0, 2)).contains(parse_poly(S, "y0*y2-y1^2")));
  CHECK(groebner_basis(E).contains(parse_poly(S, "y0*y2-y1^2")));
  // monotonicity
  auto K2 = K + ideal(S, {"y0-y2"});
  auto E2 = eliminate(K2, 2);
  CHECK(ideal_contains(E2, E));
}

TEST_CASE("kernel_of_map") {
  PolyRing P1(PrimeField(), 2), P2(PrimeField(), {"y0", "y1", "y2"});
  CHECK(kernel_of_map(RingMap::identity(P1)).gens().empty());
  RingMap conic(P2, P1, {parse_poly(P1, "x0^2"), parse_poly(P1, "x0*x1"), parse_poly(P1, "x1^2")});
  auto K = kernel_of_map(conic);
  REQUIRE(K.gens().size() == 1);
  CHECK(K.gens()[0].make_monic() == parse_poly(P2, "y0*y2-y1^2").make_monic());

  // Cubics through (1:0:0),(0:1:0),(0:0:1),(1:1:1): the quintic del Pezzo.
  PolyRing P(PrimeField(), 3), Y(PrimeField(), 6);
  std::vector<Polynomial> cubics = {
      parse_poly(P, "x0^2*x1-x0*x1*x2"), parse_poly(P, "x0^2*x2-x0*x1*x2"),
      parse_poly(P, "x0*x1^2-x0*x1*x2"), parse_poly(P, "x1^2*x2-x0*x1*x2"),
      parse_poly(P, "x0*x2^2-x0*x1*x2"), parse_poly(P, "x1*x2^2-x0*x1*x2")};
  auto D = kernel_of_map(RingMap(Y, P, cubics));
  CHECK(D.gens().size() == 5);
  for (const auto& g : D.gens()) CHECK(g.degree() == 2);
}
