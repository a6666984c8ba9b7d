#include "doctest.h"

#include <vector>

#include "cmf/ffield.hpp"
#include "cmf/polyring.hpp"

using namespace cmf;

namespace {

// Independent inverse by the extended Euclidean algorithm on signed
// integers, written out separately from the library routine.
std::int64_t euclid_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t old_r = a, r = p, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return ((old_s % p) + p) % p;
}

// Determinant by cofactor expansion (small sizes only).
Residue det(const std::vector<std::vector<Residue>>& A, const PrimeField& F) {
  std::size_t n = A.size();
  if (n == 1) return A[0][0];
  Residue sum = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Residue>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Residue> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(A[r][k]);
      sub.push_back(row);
    }
    Residue term = F.mul(A[0][c], det(sub, F));
    sum = (c % 2 == 0) ? F.add(sum, term) : F.sub(sum, term);
  }
  return sum;
}

// Rank as the largest size of a nonzero minor.
std::size_t minor_rank(const DenseMatrix& M, const PrimeField& F) {
  std::size_t best = 0;
  std::size_t R = M.rows(), C = M.cols();
  for (std::size_t k = 1; k <= std::min(R, C); ++k) {
    bool found = false;
    std::vector<std::size_t> rows(k), cols(k);
    // Enumerate k-subsets of rows and columns.
    std::vector<bool> rsel(R, false), csel(C, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        std::vector<std::vector<Residue>> sub;
        for (std::size_t r = 0; r < R; ++r) {
          if (!rsel[r]) continue;
          std::vector<Residue> row;
          for (std::size_t c = 0; c < C; ++c)
            if (csel[c]) row.push_back(M.at(r, c));
          sub.push_back(row);
        }
        if (det(sub, F) != 0) found = true;
      } while (!found && std::prev_permutation(csel.begin(), csel.end()));
    } while (!found && std::prev_permutation(rsel.begin(), rsel.end()));
    if (found) best = k;
    else break;
  }
  return best;
}

DenseMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng, const PrimeField& F) {
  DenseMatrix M(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M.at(i, j) = rng.residue(F);
  return M;
}

}  // namespace

TEST_CASE("field_inverse examples") {
  PrimeField F7(7);
  CHECK(field_inverse(1, F7) == 1);
  CHECK(field_inverse(3, F7) == 5);
  CHECK_THROWS_AS(field_inverse(0, F7), ZeroInverse);
  CHECK_THROWS_AS(field_inverse(14, F7), ZeroInverse);
}

TEST_CASE("field_inverse agrees with extended Euclid on 100 random residues") {
  PrimeField F;
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    Residue a = rng.nonzero(F);
    Residue inv = field_inverse(a, F);
    CHECK(F.mul(a, inv) == 1);
    CHECK(static_cast<std::int64_t>(inv) == euclid_inverse(a, F.p()));
  }
}

TEST_CASE("prime validation") {
  CHECK_THROWS_AS(PrimeField(4), NotPrime);
  CHECK_THROWS_AS(PrimeField(2), NotPrime);
  CHECK_THROWS_AS(PrimeField(1), NotPrime);
  CHECK_THROWS_AS(PrimeField(32001), NotPrime);
  CHECK_NOTHROW(PrimeField(3));
  CHECK_NOTHROW(PrimeField(2147483647u));
  CHECK(PrimeField().p() == 32003);
}

TEST_CASE("field axioms on random triples") {
  for (std::uint32_t p : {7u, 101u, 32003u, 2147483647u}) {
    PrimeField F(p);
    Rng rng(p);
    for (int i = 0; i < 500; ++i) {
      Residue a = rng.residue(F), b = rng.residue(F), c = rng.residue(F);
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == 0);
      CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
      CHECK(a < p);
    }
  }
}

TEST_CASE("rref on identity and zero") {
  PrimeField F;
  auto I = DenseMatrix::identity(3);
  auto r = rref(I, F);
  CHECK(r.rank == 3);
  CHECK(r.matrix == I);
  DenseMatrix Z(2, 4);
  auto z = rref(Z, F);
  CHECK(z.rank == 0);
  CHECK(z.matrix == Z);
}

TEST_CASE("rref structure and idempotence") {
  PrimeField F;
  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    std::size_t rows = 1 + rng.below(12), cols = 1 + rng.below(12);
    std::size_t k = rng.below(std::min(rows, cols) + 1);
    DenseMatrix A = random_matrix(rows, k, rng, F), B = random_matrix(k, cols, rng, F);
    DenseMatrix M = k ? A.multiply(B, F) : DenseMatrix(rows, cols);
    auto r = rref(M, F);
    for (std::size_t i = 1; i < r.pivots.size(); ++i) CHECK(r.pivots[i] > r.pivots[i - 1]);
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      for (std::size_t j = 0; j < rows; ++j)
        CHECK(r.matrix.at(j, r.pivots[i]) == (i == j ? 1u : 0u));
    auto r2 = rref(r.matrix, F);
    CHECK(r2.matrix == r.matrix);
    // Row space preserved: every row of M lies in the span of the RREF rows.
    EchelonBasis E(cols, F);
    for (std::size_t i = 0; i < r.rank; ++i)
      E.insert(std::vector<Residue>(r.matrix.row(i), r.matrix.row(i) + cols));
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<Residue> v(M.row(i), M.row(i) + cols);
      CHECK(E.reduce(v));
    }
  }
}

TEST_CASE("rank agrees with the minor-expansion oracle") {
  PrimeField F;
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    std::size_t k = rng.below(6);
    DenseMatrix A = random_matrix(5, k, rng, F), B = random_matrix(k, 5, rng, F);
    DenseMatrix M = k ? A.multiply(B, F) : DenseMatrix(5, 5);
    CHECK(rank(M, F) == minor_rank(M, F));
  }
  // 20x30 of constructed rank 5; the oracle certifies a nonzero 5x5 minor
  // on the first pivot block and vanishing of all 6x6 minors on a sample.
  DenseMatrix A = random_matrix(20, 5, rng, F), B = random_matrix(5, 30, rng, F);
  DenseMatrix M = A.multiply(B, F);
  CHECK(rank(M, F) == 5);
  DenseMatrix sub(6, 6);
  for (int s = 0; s < 10; ++s) {
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) sub.at(i, j) = M.at(3 * i + s % 2, 4 * j + s % 3);
    CHECK(minor_rank(sub, F) <= 5);
  }
  DenseMatrix lead(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) lead.at(i, j) = M.at(i, j);
  CHECK(minor_rank(lead, F) == rank(lead, F));
}

TEST_CASE("kernel_basis examples") {
  PrimeField F;
  CHECK(kernel_basis(DenseMatrix::identity(4), F).empty());
  CHECK(kernel_basis(DenseMatrix(2, 3), F).size() == 3);
  PrimeField F7(7);
  DenseMatrix M(2, 2);
  M.at(0, 0) = 1, M.at(0, 1) = 2, M.at(1, 0) = 2, M.at(1, 1) = 4;
  auto K = kernel_basis(M, F7);
  REQUIRE(K.size() == 1);
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(F7.add(F7.mul(M.at(i, 0), K[0][0]), F7.mul(M.at(i, 1), K[0][1])) == 0);
}

TEST_CASE("rank-nullity and kernel correctness on random matrices") {
  PrimeField F(101);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    std::size_t rows = rng.below(10), cols = 1 + rng.below(10);
    DenseMatrix M = random_matrix(rows, cols, rng, F);
    // force some dependencies
    if (rows > 2)
      for (std::size_t j = 0; j < cols; ++j) M.at(rows - 1, j) = F.add(M.at(0, j), M.at(1, j));
    auto K = kernel_basis(M, F);
    CHECK(rank(M, F) + K.size() == cols);
    for (const auto& v : K)
      for (std::size_t i = 0; i < rows; ++i) {
        Residue s = 0;
        for (std::size_t j = 0; j < cols; ++j) s = F.add(s, F.mul(M.at(i, j), v[j]));
        CHECK(s == 0);
      }
  }
}

TEST_CASE("solve") {
  PrimeField F;
  Rng rng(9);
  DenseMatrix M = random_matrix(6, 8, rng, F);
  std::vector<Residue> x0(8);
  for (auto& v : x0) v = rng.residue(F);
  std::vector<Residue> b(6, 0);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 8; ++j) b[i] = F.add(b[i], F.mul(M.at(i, j), x0[j]));
  std::vector<Residue> x;
  REQUIRE(solve(M, b, F, x));
  for (std::size_t i = 0; i < 6; ++i) {
    Residue s = 0;
    for (std::size_t j = 0; j < 8; ++j) s = F.add(s, F.mul(M.at(i, j), x[j]));
    CHECK(s == b[i]);
  }
  DenseMatrix Z(2, 2);
  CHECK_FALSE(solve(Z, {1, 0}, F, x));
}
