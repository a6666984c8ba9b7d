#include "doctest.h"

#include <sstream>
#include <unordered_map>

#include "cmf/resolve.hpp"

using namespace cmf;

namespace {

Ideal ideal(const PolyRing& R, std::initializer_list<const char*> gens) {
  Ideal I(R);
  for (auto g : gens) I.add(parse_poly(R, g));
  return I;
}

// 4x4 Pfaffians of a generic 5x5 skew matrix of linear forms: a quintic
// del Pezzo surface in P^5.
Ideal pfaffian_surface(const PolyRing& R, Rng& rng) {
  std::vector<std::vector<Polynomial>> m(5, std::vector<Polynomial>(5, Polynomial(R)));
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      m[i][j] = random_linear_form(R, rng);
      m[j][i] = -m[i][j];
    }
  Ideal I(R);
  for (int skip = 0; skip < 5; ++skip) {
    int a[4], k = 0;
    for (int i = 0; i < 5; ++i)
      if (i != skip) a[k++] = i;
    I.add(m[a[0]][a[1]] * m[a[2]][a[3]] - m[a[0]][a[2]] * m[a[1]][a[3]] +
          m[a[0]][a[3]] * m[a[1]][a[2]]);
  }
  return I;
}

// dim of the degree-d part of the submodule spanned by the columns of M,
// by spreading each column over monomials of the right degree.
std::size_t span_dim(const GradedMatrix& M, int d) {
  const PolyRing& R = M.ring();
  std::vector<std::size_t> off;
  std::vector<std::unordered_map<Monomial, std::size_t, MonoHash>> idx;
  std::size_t n = 0;
  for (int t : M.target()) {
    off.push_back(n);
    std::unordered_map<Monomial, std::size_t, MonoHash> h;
    if (d - t >= 0) {
      auto ms = monomials_of_degree(R, d - t);
      for (std::size_t i = 0; i < ms.size(); ++i) h[ms[i]] = i;
      n += ms.size();
    }
    idx.push_back(std::move(h));
  }
  DenseMatrix A(0, n);
  if (n == 0) return 0;
  for (std::size_t j = 0; j < M.cols(); ++j) {
    int e = d - M.source()[j];
    if (e < 0) continue;
    for (const auto& m : monomials_of_degree(R, e)) {
      std::vector<Residue> row(n, 0);
      for (std::size_t i = 0; i < M.rows(); ++i)
        for (const auto& t : M.at(i, j).terms())
          row[off[i] + idx[i].at(mono::mul(t.m, m))] =
              R.field().add(row[off[i] + idx[i].at(mono::mul(t.m, m))], t.c);
      A.append_row(row);
    }
  }
  return A.rows() ? rank(A, R.field()) : 0;
}

// dim of {v in source_d : M v = 0} by dense linear algebra.
std::size_t kernel_dim(const GradedMatrix& M, int d) {
  const PolyRing& R = M.ring();
  std::size_t total = 0;
  for (int s : M.source())
    if (d - s >= 0) total += monomials_of_degree(R, d - s).size();
  return total - span_dim(M, d);
}

}  // namespace

TEST_CASE("koszul complex of the maximal ideal") {
  PolyRing R(PrimeField(), 4);
  auto F = minimal_free_resolution(cyclic_module(ideal(R, {"x0", "x1", "x2", "x3"})));
  auto B = betti_table(F);
  CHECK(F.is_complex());
  CHECK(F.minimal());
  for (int i = 0; i <= 4; ++i) CHECK(B.at(i, i) == static_cast<long long>(binomial(4, i)));
  CHECK(B.ranks() == std::vector<long long>{1, 4, 6, 4, 1});
}

TEST_CASE("quintic del Pezzo has Betti table 1, 5, 5, 1") {
  PolyRing R(PrimeField(), 6);
  Rng rng(11);
  Ideal I = pfaffian_surface(R, rng);
  auto F = minimal_free_resolution(cyclic_module(I));
  auto B = betti_table(F);
  BettiTable want;
  want.add(0, 0, 1);
  want.add(1, 2, 5);
  want.add(2, 3, 5);
  want.add(3, 5, 1);
  CHECK(B == want);
  CHECK(F.is_complex());
  CHECK(B.render() ==
        "       0 1 2 3\n"
        "total: 1 5 5 1\n"
        "    0: 1 . . .\n"
        "    1: . 5 5 .\n"
        "    2: . . . 1\n");

  HilbertCounter C(cyclic_module(I));
  auto H = C.series();
  CHECK(H.numerator == numerator_from_betti(B));
  CHECK(H.codim() == 3);
  CHECK(H.degree() == 5);
  for (int d = 0; d <= 6; ++d) {
    CHECK(C.value(d) == H.series_value(d));
    CHECK(C.value(d) == 5 * d * (d + 1) / 2 + 1);  // h0(O(dH)) on a quintic del Pezzo
    CHECK(H.polynomial_value(d) == 5 * d * (d + 1) / 2 + 1);
  }
}

TEST_CASE("syzygies match degreewise kernels") {
  PolyRing R(PrimeField(), 4);
  Rng rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<int> tgt = {0, 0, 1};
    std::vector<int> src;
    int nc = 3 + static_cast<int>(rng.below(3));
    for (int j = 0; j < nc; ++j) src.push_back(2 + static_cast<int>(rng.below(2)));
    GradedMatrix M(R, tgt, src);
    for (std::size_t i = 0; i < tgt.size(); ++i)
      for (std::size_t j = 0; j < src.size(); ++j)
        M.set(i, j, random_form(R, src[j] - tgt[i], rng));
    GradedMatrix K = syzygy_module(M);
    CHECK((M * K).is_zero());
    CHECK(K.is_homogeneous());
    for (int d = 2; d <= 6; ++d) CHECK(span_dim(K, d) == kernel_dim(M, d));
  }
}

TEST_CASE("resolutions are complexes and Hilbert routes agree on random ideals") {
  PolyRing R(PrimeField(), 4);
  Rng rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    Ideal I(R);
    int ng = 2 + static_cast<int>(rng.below(3));
    for (int g = 0; g < ng; ++g) I.add(random_form(R, 2 + static_cast<int>(rng.below(2)), rng));
    auto P = cyclic_module(I);
    auto F = minimal_free_resolution(P);
    CHECK(F.is_complex());
    CHECK(F.minimal());
    CHECK(F.length() <= 4);
    HilbertCounter C(P);
    auto H = C.series();
    CHECK(H.numerator == numerator_from_betti(betti_table(F)));
    for (int d = 0; d <= 7; ++d) CHECK(C.value(d) == H.series_value(d));
  }
}

TEST_CASE("minimize cancels units of a padded resolution") {
  PolyRing R(PrimeField(), 3);
  auto F = minimal_free_resolution(cyclic_module(ideal(R, {"x0", "x1^2"})));
  // Append a trivial summand R(-2) -> R(-2) to F_1, F_2.
  FreeResolution G(R);
  G.twists = {{0}, {1, 2, 2}, {3, 2}};
  GradedMatrix d1(R, {0}, {1, 2, 2});
  d1.set(0, 0, F.maps[0].at(0, 0));
  d1.set(0, 1, F.maps[0].at(0, 1));
  GradedMatrix d2(R, {1, 2, 2}, {3, 2});
  d2.set(0, 0, F.maps[1].at(0, 0));
  d2.set(1, 0, F.maps[1].at(1, 0));
  d2.set(2, 1, Polynomial::constant(R, 7));
  d2.set(2, 0, parse_poly(R, "x2"));
  G.maps = {d1, d2};
  CHECK(G.is_complex());
  CHECK_FALSE(G.minimal());
  auto M = minimize(G);
  CHECK(M.minimal());
  CHECK(betti_table(M) == betti_table(F));
  CHECK(M.is_complex());
}

TEST_CASE("prune removes unit relations") {
  PolyRing R(PrimeField(), 3);
  GradedMatrix M(R, {0, 1}, {1, 2});
  M.set(0, 0, parse_poly(R, "x0"));
  M.set(1, 0, parse_poly(R, "1"));
  M.set(1, 1, parse_poly(R, "x1"));
  auto P = prune(GradedModulePresentation(M));
  CHECK(P.generators() == std::vector<int>{0});
  CHECK(P.presentation.cols() == 1);
  CHECK(P.presentation.at(0, 0).make_monic() == parse_poly(R, "x0*x1"));
}

TEST_CASE("line bundles on P^5") {
  PolyRing R(PrimeField(), 6);
  for (int d = -9; d <= 6; ++d) {
    SheafCohomology S(free_module(R, {-d}));
    long long h0 = d >= 0 ? static_cast<long long>(binomial(d + 5, 5)) : 0;
    long long h5 = d <= -6 ? static_cast<long long>(binomial(-d - 1, 5)) : 0;
    CHECK(S.h(0, 0) == h0);
    CHECK(S.h(5, 0) == h5);
    for (int i = 1; i <= 4; ++i) CHECK(S.h(i, 0) == 0);
  }
}

TEST_CASE("ext of the residue field") {
  PolyRing R(PrimeField(), 3);
  auto k = cyclic_module(ideal(R, {"x0", "x1", "x2"}));
  for (int j = 0; j < 3; ++j) CHECK(ext_module(k, j).generators().empty());
  auto E = ext_module(k, 3);
  CHECK(E.generators() == std::vector<int>{-3});
  HilbertCounter C(E);
  CHECK(C.value(-3) == 1);
  CHECK(C.value(-2) == 0);
  DualComplex D(minimal_free_resolution(k));
  for (int e = -6; e <= 2; ++e) {
    CHECK(D.ext_dim(3, e) == (e == -3 ? 1 : 0));
    CHECK(D.ext_dim(1, e) == 0);
  }
}

TEST_CASE("hom modules") {
  PolyRing R(PrimeField(), 3);
  auto A = cyclic_module(ideal(R, {"x0^2", "x1"}));
  auto H = hom_module(A, A);
  HilbertCounter CH(H), CA(A);
  for (int d = 0; d <= 5; ++d) CHECK(CH.value(d) == CA.value(d));
  auto k = cyclic_module(ideal(R, {"x0", "x1", "x2"}));
  CHECK(hom_module(k, free_module(R, {0})).generators().empty());
  // Hom(R(-1)^2, R) = R(1)^2
  auto D = hom_module(free_module(R, {1, 1}), free_module(R, {0}));
  CHECK(D.generators() == std::vector<int>{-1, -1});
  CHECK(D.presentation.cols() == 0);
}

TEST_CASE("tensor product of cyclic modules") {
  PolyRing R(PrimeField(), 3);
  auto T = tensor_module(cyclic_module(ideal(R, {"x0"})), cyclic_module(ideal(R, {"x1"})));
  HilbertCounter C(T);
  for (int d = 0; d <= 5; ++d) CHECK(C.value(d) == 1);
}

TEST_CASE("annihilators") {
  PolyRing R(PrimeField(), 3);
  GradedMatrix M(R, {0, 0}, {1, 1});
  M.set(0, 0, parse_poly(R, "x0"));
  M.set(1, 1, parse_poly(R, "x1"));
  Ideal A = annihilator(GradedModulePresentation(M));
  CHECK(ideals_equal(A, ideal(R, {"x0*x1"})));
  Ideal I = ideal(R, {"x0^2", "x1*x2", "x2^3"});
  CHECK(ideals_equal(annihilator(cyclic_module(I)), I));
}

TEST_CASE("section module of a module with finite-length torsion") {
  PolyRing R(PrimeField(), 3);
  // (x0, x1) ∩ (x0^2, x1, x2^2) has the sheaf of a reduced point.
  Ideal I = ideal(R, {"x0^2", "x0*x1", "x1^2", "x0*x2^2", "x1*x2^2"});
  auto P = cyclic_module(I);
  auto S = saturate_module(P, 0, 4);
  HilbertCounter C(S);
  for (int d = 0; d <= 4; ++d) CHECK(C.value(d) == 1);
  SheafCohomology H(P);
  for (int d = 0; d <= 4; ++d) CHECK(H.h(0, d) == 1);
}

TEST_CASE("rank two matrix factorization from the quintic del Pezzo") {
  PolyRing R(PrimeField(), 6);
  Rng rng(11);
  Ideal I = pfaffian_surface(R, rng);
  Polynomial f(R);
  for (const auto& g : I.gens()) f += random_linear_form(R, rng) * g;
  auto F = quotient_resolution(cyclic_module(I), f, 6);
  CHECK(F.is_complex());
  CHECK(F.minimal());
  auto mf = extract_matrix_factorization(F);
  REQUIRE(F.periodic_from.has_value());
  CHECK(*F.periodic_from == 3);
  CHECK(mf.A.rows() == 6);
  CHECK(mf.A.cols() == 6);
  CHECK(mf.A.entry_degree_range() == std::pair<int, int>{1, 1});
  CHECK(mf.B.entry_degree_range() == std::pair<int, int>{2, 2});
  CHECK(mf.A.target() == std::vector<int>(6, 0));
  CHECK(mf.verify());

  std::ostringstream out;
  write_matrix(out, mf.A);
  std::istringstream in(out.str());
  CHECK(read_matrix(in, R) == mf.A);
}

TEST_CASE("quotient resolution rejects modules not killed by the form") {
  PolyRing R(PrimeField(), 3);
  CHECK_THROWS_AS(quotient_resolution(cyclic_module(ideal(R, {"x0"})), parse_poly(R, "x1^2"), 4),
                  NotAnnihilated);
}

TEST_CASE("matrix text format errors carry positions") {
  PolyRing R(PrimeField(), 2);
  std::istringstream in("matrix 1 1\ntarget 0\nsource 1\nx0 +* x1\n");
  try {
    read_matrix(in, R);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 4);
  }
}
