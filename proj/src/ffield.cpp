#include "cmf/ffield.hpp"

#include <string>

namespace cmf {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 3 || p >= (1u << 31) || !is_prime(p))
    throw NotPrime("modulus " + std::to_string(p) +
                   " is not an odd prime below 2^31");
}

Residue PrimeField::inv(Residue a) const {
  a %= p_;
  if (a == 0) throw ZeroInverse("inverse of 0 mod " + std::to_string(p_));
  std::int64_t t = 0, nt = 1, r = p_, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return reduce(t);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const {
  Residue r = 1 % p_;
  Residue b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Residue field_inverse(Residue a, const PrimeField& F) { return F.inv(a); }

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i) M.at(i, i) = 1;
  return M;
}

void DenseMatrix::append_row(const std::vector<Residue>& r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw InvalidArgument("append_row: width mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) T.at(j, i) = at(i, j);
  return T;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& o,
                                  const PrimeField& F) const {
  if (cols_ != o.rows_) throw InvalidArgument("multiply: shape mismatch");
  DenseMatrix R(rows_, o.cols_);
  std::vector<std::uint64_t> acc(o.cols_);
  const std::uint64_t p = F.p();
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t a = at(i, k);
      if (!a) continue;
      const Residue* orow = o.row(k);
      for (std::size_t j = 0; j < o.cols_; ++j)
        acc[j] = (acc[j] + a * orow[j]) % p;
    }
    for (std::size_t j = 0; j < o.cols_; ++j)
      R.at(i, j) = static_cast<Residue>(acc[j]);
  }
  return R;
}

bool DenseMatrix::is_zero() const {
  for (Residue v : data_)
    if (v) return false;
  return true;
}

std::vector<std::size_t> rref_inplace(DenseMatrix& M, const PrimeField& F) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = M.rows(), cols = M.cols();
  const std::uint64_t p = F.p();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && M.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(M.at(r, j), M.at(piv, j));
    Residue* prow = M.row(r);
    Residue s = F.inv(prow[c]);
    for (std::size_t j = c; j < cols; ++j) prow[j] = F.mul(prow[j], s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Residue* irow = M.row(i);
      Residue f = irow[c];
      if (!f) continue;
      std::uint64_t nf = p - f;
      for (std::size_t j = c; j < cols; ++j)
        if (prow[j]) irow[j] = static_cast<Residue>((irow[j] + nf * prow[j]) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

RrefResult rref(const DenseMatrix& M, const PrimeField& F) {
  RrefResult res;
  res.matrix = M;
  res.pivots = rref_inplace(res.matrix, F);
  res.rank = res.pivots.size();
  return res;
}

std::size_t rank(const DenseMatrix& M, const PrimeField& F) {
  DenseMatrix C = M;
  return rref_inplace(C, F).size();
}

std::vector<std::vector<Residue>> kernel_basis(const DenseMatrix& M,
                                               const PrimeField& F) {
  DenseMatrix R = M;
  auto pivots = rref_inplace(R, F);
  std::vector<char> is_pivot(M.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<Residue>> out;
  for (std::size_t free = 0; free < M.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Residue> v(M.cols(), 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      v[pivots[k]] = F.neg(R.at(k, free));
    out.push_back(std::move(v));
  }
  return out;
}

bool solve(const DenseMatrix& M, const std::vector<Residue>& b,
           const PrimeField& F, std::vector<Residue>& x) {
  if (b.size() != M.rows()) throw InvalidArgument("solve: shape mismatch");
  DenseMatrix A(M.rows(), M.cols() + 1);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) A.at(i, j) = M.at(i, j);
    A.at(i, M.cols()) = b[i];
  }
  auto pivots = rref_inplace(A, F);
  x.assign(M.cols(), 0);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    if (pivots[k] == M.cols()) return false;
    x[pivots[k]] = A.at(k, M.cols());
  }
  return true;
}

bool EchelonBasis::reduce(std::vector<Residue>& v) const {
  bool zero = true;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (!v[c]) continue;
    int r = pivot_row_.empty() ? -1 : pivot_row_[c];
    if (r < 0) {
      zero = false;
      continue;
    }
    Residue f = v[c];
    const auto& row = rows_[r];
    for (std::size_t j = c; j < cols_; ++j)
      if (row[j]) v[j] = F_.sub_mul(v[j], f, row[j]);
  }
  return zero;
}

bool EchelonBasis::insert(std::vector<Residue> v) {
  if (v.size() != cols_) throw InvalidArgument("EchelonBasis: width mismatch");
  if (reduce(v)) return false;
  std::size_t c = 0;
  while (!v[c]) ++c;
  Residue s = F_.inv(v[c]);
  for (std::size_t j = c; j < cols_; ++j) v[j] = F_.mul(v[j], s);
  if (pivot_row_.empty()) pivot_row_.assign(cols_, -1);
  pivot_row_[c] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  piv_.push_back(c);
  return true;
}

}  // namespace cmf
