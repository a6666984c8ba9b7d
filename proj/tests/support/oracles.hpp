#ifndef CMF_TEST_ORACLES_HPP
#define CMF_TEST_ORACLES_HPP

// Independent reference computations shared by the unit and acceptance
// tests. Slow on purpose: plain linear algebra in one degree.

#include <map>

#include "cmf/groebner.hpp"

namespace cmf::oracle {

inline Ideal ideal(const PolyRing& R, std::initializer_list<const char*> gens) {
  Ideal I(R);
  for (auto g : gens) I.add(parse_poly(R, g));
  return I;
}

// Fixed-degree linear algebra: the span of m*g (deg = d) for g in the GB,
// row reduced with columns in descending monomial order. The reduced
// vector of f against it is the normal form.
inline Polynomial macaulay_normal_form(const Polynomial& f, const GroebnerBasis& G) {
  const PolyRing& R = f.ring();
  const PrimeField& F = R.field();
  int d = f.degree();
  auto cols = monomials_of_degree(R, d);
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> col;
  for (std::size_t i = 0; i < cols.size(); ++i) col[{cols[i].w[0], cols[i].w[1]}] = i;
  DenseMatrix M(0, cols.size());
  for (const auto& g : G.basis()) {
    if (g.degree() > d) continue;
    for (const auto& m : monomials_of_degree(R, d - g.degree())) {
      std::vector<Residue> row(cols.size(), 0);
      for (const auto& t : g.terms()) row[col[{R.mul(t.m, m).w[0], R.mul(t.m, m).w[1]}]] = t.c;
      M.append_row(row);
    }
  }
  std::vector<Residue> v(cols.size(), 0);
  for (const auto& t : f.terms()) v[col[{t.m.w[0], t.m.w[1]}]] = t.c;
  if (M.rows() > 0) {
    auto r = rref(M, F);
    for (std::size_t k = 0; k < r.rank; ++k) {
      std::size_t c = r.pivots[k];
      Residue a = v[c];
      if (!a) continue;
      for (std::size_t j = 0; j < cols.size(); ++j)
        v[j] = F.sub(v[j], F.mul(a, r.matrix.at(k, j)));
    }
  }
  std::vector<Term> ts;
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (v[j]) ts.push_back({cols[j], v[j]});
  return Polynomial(R, ts);
}

inline Ideal random_homogeneous_ideal(const PolyRing& R, Rng& rng, int ngens, int mindeg,
                               int maxdeg, int sparsity) {
  Ideal I(R);
  for (int i = 0; i < ngens; ++i) {
    int d = mindeg + static_cast<int>(rng.below(maxdeg - mindeg + 1));
    auto ms = monomials_of_degree(R, d);
    std::vector<Term> ts;
    for (int k = 0; k < sparsity; ++k) ts.push_back({ms[rng.below(ms.size())], rng.nonzero(R.field())});
    I.add(Polynomial(R, ts));
  }
  return I;
}

}  // namespace cmf::oracle

#endif  // CMF_TEST_ORACLES_HPP
