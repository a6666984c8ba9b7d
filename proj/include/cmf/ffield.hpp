#ifndef CMF_FFIELD_HPP
#define CMF_FFIELD_HPP

#include <cstdint>
#include <vector>

#include "cmf/errors.hpp"

namespace cmf {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

// Integers modulo an odd prime 3 <= p < 2^31.
class PrimeField {
 public:
  static constexpr std::uint32_t kDefaultPrime = 32003;

  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t p() const { return p_; }

  Residue reduce(std::int64_t a) const {
    std::int64_t r = a % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  // a - b*c
  Residue sub_mul(Residue a, Residue b, Residue c) const {
    return sub(a, mul(b, c));
  }
  Residue inv(Residue a) const;
  Residue pow(Residue a, std::uint64_t e) const;
  Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }

  // Signed representative in (-p/2, p/2].
  std::int64_t lift(Residue a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

 private:
  std::uint32_t p_;
};

Residue field_inverse(Residue a, const PrimeField& F);

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Residue* row(std::size_t r) { return data_.data() + r * cols_; }
  const Residue* row(std::size_t r) const { return data_.data() + r * cols_; }
  const std::vector<Residue>& entries() const { return data_; }

  void append_row(const std::vector<Residue>& r);
  DenseMatrix transpose() const;
  DenseMatrix multiply(const DenseMatrix& o, const PrimeField& F) const;
  bool is_zero() const;

  bool operator==(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

struct RrefResult {
  DenseMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form. Zero rows are kept at the bottom.
RrefResult rref(const DenseMatrix& M, const PrimeField& F);
// In-place variant; returns pivot columns.
std::vector<std::size_t> rref_inplace(DenseMatrix& M, const PrimeField& F);

std::size_t rank(const DenseMatrix& M, const PrimeField& F);

// Basis of {v : Mv = 0}; each vector has length M.cols().
std::vector<std::vector<Residue>> kernel_basis(const DenseMatrix& M,
                                               const PrimeField& F);

// Some x with Mx = b, or nothing if the system is inconsistent.
bool solve(const DenseMatrix& M, const std::vector<Residue>& b,
           const PrimeField& F, std::vector<Residue>& x);

// Incremental row-echelon basis: rows are inserted one at a time and
// reduced against what is already there. Used for span membership and
// rank counting when rows arrive in a stream.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t cols, const PrimeField& F) : cols_(cols), F_(F) {}

  // Reduces v in place against the basis. Returns true if v became zero.
  bool reduce(std::vector<Residue>& v) const;
  // Inserts v (after reduction) if independent. Returns true if added.
  bool insert(std::vector<Residue> v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<std::vector<Residue>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }

 private:
  std::size_t cols_;
  PrimeField F_;
  std::vector<std::vector<Residue>> rows_;  // monic at pivot
  std::vector<std::size_t> piv_;
  std::vector<int> pivot_row_;  // column -> row index or -1
};

}  // namespace cmf

#endif  // CMF_FFIELD_HPP
