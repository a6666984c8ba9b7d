#include "doctest.h"

#include "cmf/ulrich.hpp"
#include "oracles.hpp"

using namespace cmf;
using namespace cmf::oracle;

namespace {

long long binom(long long n, long long k) {
  if (k < 0 || n < k || n < 0) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Hilbert function of a general hyperplane section in P^4 from the Betti
// numbers of R/I in P^5: sum (-1)^i b_ij binom(m - j + 4, 4).
long long section_hilbert(const BettiTable& t, long long m) {
  long long s = 0;
  for (const auto& [ij, b] : t.entries()) s += (ij.first % 2 ? -1 : 1) * b * binom(m - ij.second + 4, 4);
  return s;
}

SurfaceModel delpezzo_model(const PrimeField& F, std::uint64_t seed) {
  PolyRing plane(F, 3);
  std::vector<int> m(4, 1);
  auto cfg = random_general_points(F, 4, m, seed, {3});
  auto S = RationalSurface::from_linear_system(plane, cfg, 3, blowup_meta(3, m, "delpezzo", seed));
  return to_model(S);
}

}  // namespace

TEST_CASE("closed forms for the Bourbaki surfaces") {
  auto e2 = expected_ulrich_invariants(2);
  auto e3 = expected_ulrich_invariants(3);
  auto e4 = expected_ulrich_invariants(4);
  CHECK(e2.degree == 5);
  CHECK(e2.genus == 1);
  CHECK(e3.degree == 12);
  CHECK(e3.genus == 10);
  CHECK(e4.degree == 22);
  CHECK(e4.genus == 33);
  CHECK(e3.shape.at(1, 3) == 8);  // 2r+1 forms of degree r plus the cubic
  CHECK(e4.shape.at(1, 3) == 1);
  CHECK(e4.shape.at(1, 4) == 9);
  CHECK(e4.shape.at(3, 7) == 3);
}

TEST_CASE("property: the shape's Hilbert polynomial gives degree and genus") {
  // Oracle: for m large, the section's Hilbert function is d*m + 1 - g.
  for (int r = 2; r <= 8; ++r) {
    auto e = expected_ulrich_invariants(r);
    CAPTURE(r);
    for (long long m = 3 * r + 6; m <= 3 * r + 9; ++m)
      CHECK(section_hilbert(e.shape, m) == e.degree * m + 1 - e.genus);
    CHECK(e.shape.at(0, 0) == 1);
  }
}

TEST_CASE("Hassett invariants, rho and extension counts") {
  SurfaceMeta dp{5, -5, 5, 7, "dp", 1};
  auto h = hassett(dp, 5);
  CHECK(h.Y2 == 13);
  CHECK(h.delta == 14);
  CHECK(h.special);
  SurfaceMeta c18{12, 6, 0, 36, "c18", 1};
  auto h18 = hassett(c18, 12);
  CHECK(h18.Y2 == 54);
  CHECK(h18.delta == 18);
  SurfaceMeta plane{1, -3, 9, 3, "plane", 1};
  CHECK(hassett(plane, 1).delta == 8);

  CHECK(brill_noether_rho(10, 4, 12) == 0);
  CHECK(brill_noether_rho(1, 4, 5) == 1);
  auto x4 = extension_dimension(4);
  CHECK(x4.ext_dim == 4);
  CHECK(x4.family_dim == 13);
  CHECK(x4.moduli_dim == 17);
  CHECK(x4.smaller);
  // The family stays below the moduli count for every rank.
  for (int r = 4; r <= 20; ++r) CHECK(extension_dimension(r).smaller);
  CHECK_THROWS_AS(extension_dimension(3), InvalidArgument);
}

TEST_CASE("property: delta classes") {
  // delta = 3 Y^2 - d^2 and special means delta > 6 with delta = 0, 2 mod 6.
  Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    SurfaceMeta m{static_cast<int>(rng.below(40)), static_cast<int>(rng.below(40)) - 20,
                  static_cast<int>(rng.below(40)) - 20, static_cast<int>(rng.below(60)), "x", 0};
    long long d = 1 + static_cast<long long>(rng.below(30));
    auto h = hassett(m, d);
    CHECK(h.delta == 3 * h.Y2 - d * d);
    long long r = ((h.delta % 6) + 6) % 6;
    CHECK(h.special == (h.delta > 6 && (r == 0 || r == 2)));
  }
}

TEST_CASE("intrinsic invariants of the quintic del Pezzo") {
  PrimeField F;
  auto model = delpezzo_model(F, 1);
  auto m = intrinsic_meta(model.ideal, "dp", 1);
  CHECK(m.H2 == 5);
  CHECK(m.HK == -5);
  CHECK(m.K2 == 5);
  CHECK(m.chi_top == 7);
}

TEST_CASE("normal module dimensions") {
  PrimeField F;
  PolyRing P3(F, 4);
  SUBCASE("line on a smooth cubic surface") {
    auto L = ideal(P3, {"x0", "x1"});
    auto f = parse_poly(P3, "x0*x2^2+x1*x3^2+x0^3+x1^3");
    auto n = normal_module_dims(L, f, true);
    CHECK(n.h0_NYP == 4);  // O(1)^2 on P^1
    REQUIRE(n.h1_NYP);
    CHECK(*n.h1_NYP == 0);
    CHECK(n.h0_NYX == 0);  // O(-1)
  }
  SUBCASE("elliptic quartic") {
    auto C = ideal(P3, {"x0^2+x1*x2-x3^2", "x0*x3+x1^2-x2^2"});
    auto n = normal_module_dims(C, parse_poly(P3, "x0^3+x0*x1*x2-x0*x3^2"), false);
    CHECK(n.h0_NYP == 16);
    CHECK_FALSE(n.h1_NYP);
  }
  SUBCASE("quintic del Pezzo in a cubic fourfold") {
    auto model = delpezzo_model(F, 1);
    auto X = choose_cubic(model.ideal, 1);
    auto n = normal_module_dims(model.ideal, X.f, false);
    CHECK(n.h0_NYP == 35);
    CHECK(n.h0_NYX == 5);
  }
}

TEST_CASE("rank 2 pipeline on the del Pezzo") {
  PrimeField F;
  auto model = delpezzo_model(F, 1);
  auto X = choose_cubic(model.ideal, 1);
  CHECK(X.cubic_space_dim == 25);
  auto cert = surface_to_ulrich(model, X);
  CHECK(cert.rank == 2);
  CHECK(cert.size == 6);
  CHECK(cert.initialized);
  CHECK(cert.annihilated);
  CHECK(cert.h0_init == 6);
  REQUIRE(cert.periodic_from);

  // Oracle for the factorization: multiply out A*B and B*A.
  const auto& A = cert.mf.A;
  const auto& B = cert.mf.B;
  auto AB = A * B, BA = B * A;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(AB.at(i, j) == (i == j ? X.f : Polynomial(X.f.ring())));
      CHECK(BA.at(i, j) == (i == j ? X.f : Polynomial(X.f.ring())));
    }
  auto again = certify_factorization(cert.mf);
  CHECK(again.rank == 2);

  SUBCASE("Bourbaki round trip") {
    auto Bk = bourbaki_surface(cert, 1);
    CHECK(Bk.invariants.degree == 5);
    CHECK(Bk.invariants.sectional_genus == 1);
    // The shape is stated before the (1,3)/(2,3) cancellation.
    CHECK(numerator_from_betti(Bk.betti) == numerator_from_betti(expected_ulrich_invariants(2).shape));
    CHECK(Bk.betti.at(1, 2) == 5);
    CHECK(Bk.betti.at(2, 3) == 5);
    CHECK(Bk.betti.at(3, 5) == 1);
    auto flag = distinguished_flag(Bk.model, &cert);
    CHECK(flag.distinguished);
    CHECK_THROWS_AS(distinguished_flag(model, &cert), NotApplicable);
    CHECK_THROWS_AS(distinguished_flag(Bk.model, nullptr), NotApplicable);
    auto back = surface_to_ulrich(Bk.model, choose_cubic(Bk.model.ideal, 2));
    CHECK(back.rank == 2);
    CHECK(back.betti_R == cert.betti_R);
  }

  SUBCASE("endomorphism cohomology") {
    auto e = endo_cohomology(cert, 1);
    REQUIRE(e.complete);
    std::array<long long, 5> want{1, 0, 1, 0, 0};
    for (int i = 0; i < 5; ++i) {
      REQUIRE(e.h[i]);
      CHECK(*e.h[i] == want[i]);
    }
    std::array<long long, 4> section{1, 5, 0, 0};
    for (int i = 0; i < 4; ++i) {
      REQUIRE(e.h_section[i]);
      CHECK(*e.h_section[i] == section[i]);
    }
  }
}

TEST_CASE("certificate errors") {
  PrimeField F;
  PolyRing P5(F, 6);
  CHECK_THROWS_AS(choose_cubic(ideal(P5, {"x0^4", "x1^4"}), 1), NoCubic);
  auto f = parse_poly(P5, "x0^3");
  auto one = parse_poly(P5, "1");
  {
    MatrixFactorization mf{f, GradedMatrix(P5, {0}, {3}, {f}), GradedMatrix(P5, {3}, {3}, {one})};
    CHECK_THROWS_AS(certify_factorization(mf), NotLinearMF);
  }
  {
    auto x = parse_poly(P5, "x0");
    MatrixFactorization mf{f, GradedMatrix(P5, {0}, {1}, {x}), GradedMatrix(P5, {1}, {3}, {parse_poly(P5, "x0^2")})};
    CHECK_THROWS_AS(certify_factorization(mf), NotUlrich);
  }
}
