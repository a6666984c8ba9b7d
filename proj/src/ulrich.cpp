#include "cmf/ulrich.hpp"

#include <algorithm>

#include "cmf/budget.hpp"

namespace cmf {

namespace {

std::vector<Residue> coeffs(const Polynomial& f, const std::vector<Monomial>& mons,
                            const std::unordered_map<Monomial, std::size_t, MonoHash>& at) {
  std::vector<Residue> v(mons.size(), 0);
  for (const auto& t : f.terms()) v[at.at(t.m)] = t.c;
  return v;
}

std::unordered_map<Monomial, std::size_t, MonoHash> index_of(const std::vector<Monomial>& mons) {
  std::unordered_map<Monomial, std::size_t, MonoHash> at;
  for (std::size_t i = 0; i < mons.size(); ++i) at[mons[i]] = i;
  return at;
}

// Standard monomials of degree d for a Groebner basis.
std::vector<Monomial> standard_monomials(const GroebnerBasis& G, int d) {
  auto leads = G.lead_monomials();
  std::vector<Monomial> out;
  for (const auto& m : monomials_of_degree(G.ring(), d)) {
    bool hit = false;
    for (const auto& l : leads)
      if (mono::divides(l, m)) {
        hit = true;
        break;
      }
    if (!hit) out.push_back(m);
  }
  return out;
}

bool betti_below(const BettiTable& actual, const BettiTable& bound) {
  for (const auto& [ij, b] : actual.entries())
    if (b > bound.at(ij.first, ij.second)) return false;
  return true;
}

}  // namespace

std::vector<Polynomial> degree_piece(const Ideal& I, int d) {
  const PolyRing& R = I.ring();
  const PrimeField& F = R.field();
  auto mons = monomials_of_degree(R, d);
  auto at = index_of(mons);
  EchelonBasis E(mons.size(), F);
  std::vector<std::vector<Residue>> rows;
  for (const auto& g : I.gens()) {
    int e = d - g.degree();
    if (e < 0) continue;
    for (const auto& m : monomials_of_degree(R, e)) {
      auto v = coeffs(g.mul_term(m, 1), mons, at);
      if (E.insert(v)) rows.push_back(std::move(v));
    }
  }
  DenseMatrix M(rows.size(), mons.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < mons.size(); ++j) M.at(i, j) = rows[i][j];
  auto red = rref(M, F);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    std::vector<Term> ts;
    for (std::size_t j = 0; j < mons.size(); ++j)
      if (red.matrix.at(i, j)) ts.push_back({mons[j], red.matrix.at(i, j)});
    out.push_back(Polynomial(R, std::move(ts)));
  }
  return out;
}

FourfoldContext choose_cubic(const Ideal& I, std::uint64_t seed) {
  auto basis = degree_piece(I, 3);
  if (basis.empty()) throw NoCubic("the ideal has no cubics");
  const PrimeField& F = I.ring().field();
  Rng rng(seed);
  Polynomial f(I.ring());
  for (const auto& b : basis) f += b.scale(rng.nonzero(F));
  if (f.is_zero()) f = basis.front();
  FourfoldContext X{f, static_cast<long long>(basis.size()), seed, std::nullopt};
  return X;
}

// ---------------------------------------------------------------- certificates

UlrichCertificate certify_factorization(const MatrixFactorization& mf) {
  const GradedMatrix& A = mf.A;
  if (A.rows() != A.cols()) throw NotLinearMF("A is not square");
  auto [lo, hi] = A.entry_degree_range();
  bool twists_ok = std::all_of(A.target().begin(), A.target().end(), [](int t) { return t == 0; }) &&
                   std::all_of(A.source().begin(), A.source().end(), [](int t) { return t == 1; });
  if (lo != 1 || hi != 1 || !twists_ok) throw NotLinearMF("A has entries that are not linear forms");
  UlrichCertificate c(mf);
  c.size = static_cast<int>(A.rows());
  if (c.size % 3 != 0) throw NotUlrich("size " + std::to_string(c.size) + " is not a multiple of 3");
  c.rank = c.size / 3;
  GradedModulePresentation M(A);
  c.betti_R = betti_table(minimal_free_resolution(M));
  HilbertCounter H(M);
  c.h0_init = H.value(0);
  c.initialized = H.value(-1) == 0;
  c.annihilated = mf.verify();
  BettiTable expect;
  expect.add(0, 0, c.size);
  expect.add(1, 1, c.size);
  if (!(c.betti_R == expect)) throw NotUlrich("coker(A) is not linearly presented by 3r x 3r");
  if (c.h0_init != c.size || !c.initialized || !c.annihilated)
    throw NotUlrich("initialized twist does not have h0 = 3r");
  return c;
}

UlrichCertificate surface_to_ulrich(const SurfaceModel& S, const FourfoldContext& X, int steps) {
  GradedModulePresentation M =
      S.sections ? *S.sections : saturate_module(cyclic_module(S.ideal));
  FreeResolution Q = quotient_resolution(M, X.f, steps);
  MatrixFactorization mf = extract_matrix_factorization(Q);
  UlrichCertificate c = certify_factorization(mf);
  c.quotient_betti = betti_table(Q);
  c.quotient_ranks = c.quotient_betti.ranks();
  c.periodic_from = Q.periodic_from;
  return c;
}

ExpectedUlrich expected_ulrich_invariants(int r) {
  if (r < 2) throw InvalidArgument("rank must be at least 2");
  ExpectedUlrich e;
  e.rank = r;
  long long R = r;
  e.degree = (3 * R * R - R) / 2;
  e.genus = R * R * R - 2 * R * R + 1;
  e.shape.add(0, 0, 1);
  e.shape.add(1, r, 2 * r + 1);
  e.shape.add(1, 3, 1);
  e.shape.add(2, r + 1, 3 * r);
  e.shape.add(3, r + 3, r - 1);
  return e;
}

// ---------------------------------------------------------------- Bourbaki

SurfaceMeta intrinsic_meta(const Ideal& I, std::string tag, std::uint64_t seed) {
  SurfaceInvariants inv = surface_invariants(I, seed);
  SurfaceMeta m;
  m.tag = std::move(tag);
  m.seed = seed;
  m.H2 = static_cast<int>(inv.degree);
  m.HK = static_cast<int>(2 * inv.sectional_genus - 2 - inv.degree);
  long long chi = inv.chi;
  auto P = cyclic_module(I);
  auto E = ext_module(P, inv.codim);
  long long chi_w2 = hilbert(tensor_module(E, E)).polynomial_value(-2 * I.ring().nvars());
  m.K2 = static_cast<int>(chi_w2 - chi);
  m.chi_top = static_cast<int>(12 * chi - m.K2);
  return m;
}

BourbakiSurface bourbaki_surface(const UlrichCertificate& cert, std::uint64_t seed,
                                 int max_attempts) {
  int r = cert.rank;
  if (r < 2) throw InvalidArgument("Bourbaki construction needs rank at least 2");
  const GradedMatrix& B = cert.mf.B;
  const Polynomial& f = cert.mf.f;
  const PolyRing& R = B.ring();
  const PrimeField& F = R.field();
  ExpectedUlrich ex = expected_ulrich_invariants(r);
  std::size_t m = B.rows();
  Rng rng(seed);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    check_budget();
    std::vector<std::vector<Residue>> c(r - 1, std::vector<Residue>(m));
    for (auto& v : c)
      for (auto& x : v) x = rng.residue(F);
    // Row k, column j: phi_j(s_k) with phi_j = column j of B^T.
    std::vector<Polynomial> entries;
    std::vector<int> src;
    for (std::size_t j = 0; j < m; ++j) src.push_back(2);
    for (int k = 0; k < r - 1; ++k) src.push_back(3);
    for (int k = 0; k < r - 1; ++k) {
      for (std::size_t j = 0; j < m; ++j) {
        Polynomial s(R);
        for (std::size_t i = 0; i < m; ++i)
          if (c[k][i]) s += B.at(j, i).scale(c[k][i]);
        entries.push_back(s);
      }
      for (int l = 0; l < r - 1; ++l) entries.push_back(l == k ? f : Polynomial(R));
    }
    GradedMatrix P(R, std::vector<int>(r - 1, 0), src, entries);
    Ideal I = saturate(annihilator(GradedModulePresentation(P)));
    SurfaceInvariants inv = surface_invariants(I, seed);
    if (inv.dim != 2) continue;
    if (inv.degree != ex.degree || inv.sectional_genus != ex.genus || !inv.acm)
      throw ShapeMismatch("Bourbaki surface has degree " + std::to_string(inv.degree) +
                          ", genus " + std::to_string(inv.sectional_genus) +
                          (inv.acm ? "" : ", not ACM"));
    BettiTable bt = betti_table(minimal_free_resolution(cyclic_module(I)));
    if (!betti_below(bt, ex.shape) || numerator_from_betti(bt) != numerator_from_betti(ex.shape))
      throw ShapeMismatch("resolution does not come from the Bourbaki shape:\n" + bt.render() +
                          "expected at most\n" + ex.shape.render());
    BourbakiSurface out{SurfaceModel{I, intrinsic_meta(I, "bourbaki-r" + std::to_string(r), seed),
                                     std::nullopt},
                        inv, bt, seed, attempt};
    return out;
  }
  throw DegenerateSections("no sections with a surface zero locus after " +
                           std::to_string(max_attempts) + " attempts");
}

// ---------------------------------------------------------------- arithmetic

Hassett hassett(const SurfaceMeta& m, long long d) {
  Hassett h;
  h.Y2 = 6LL * m.H2 + 3LL * m.HK + m.K2 - m.chi_top;
  h.delta = 3 * h.Y2 - d * d;
  long long r = ((h.delta % 6) + 6) % 6;
  h.special = h.delta > 6 && (r == 0 || r == 2);
  return h;
}

long long brill_noether_rho(long long g, long long r, long long d) {
  return g - (r + 1) * (g + r - d);
}

ExtensionCount extension_dimension(int r) {
  if (r < 4) throw InvalidArgument("extension count needs rank at least 4");
  ExtensionCount e;
  long long R = r;
  e.ext_dim = 2 * (R - 2);
  // dim E + dim F + ext - 1 with dim E = 5 and dim F = (r-2)^2 + 1.
  e.family_dim = 5 + ((R - 2) * (R - 2) + 1) + e.ext_dim - 1;
  e.moduli_dim = R * R + 1;
  e.smaller = e.family_dim < e.moduli_dim;
  return e;
}

DistinguishedReport distinguished_flag(const SurfaceModel& S, const UlrichCertificate* cert) {
  const std::string prefix = "bourbaki-r";
  if (!cert || S.meta.tag.rfind(prefix, 0) != 0)
    throw NotApplicable("surface does not come from an Ulrich certificate");
  if (S.meta.tag != prefix + std::to_string(cert->rank))
    throw NotApplicable("surface tag does not match the certificate rank");
  DistinguishedReport d;
  d.distinguished = true;
  d.reason = "zero locus of " + std::to_string(cert->rank - 1) + " sections of a rank-" +
             std::to_string(cert->rank) + " Ulrich bundle (" + std::to_string(cert->size) +
             "x" + std::to_string(cert->size) + " linear factorization, mf_ok=" +
             (cert->annihilated ? "true" : "false") + ")";
  return d;
}

// ---------------------------------------------------------------- normal modules

NormalModuleDims normal_module_dims(const Ideal& I0, const Polynomial& f, bool with_h1) {
  Ideal I = minimalize(I0);
  const PolyRing& R = I.ring();
  const PrimeField& F = R.field();
  GroebnerBasis G = groebner_basis(I);
  const auto& g = I.gens();
  std::vector<int> deg;
  for (const auto& p : g) deg.push_back(p.degree());

  std::map<int, std::vector<Monomial>> stdm;
  auto std_of = [&](int d) -> const std::vector<Monomial>& {
    auto it = stdm.find(d);
    if (it == stdm.end()) it = stdm.emplace(d, standard_monomials(G, d)).first;
    return it->second;
  };
  std::vector<std::size_t> offset;
  std::size_t ncols = 0;
  for (int d : deg) {
    offset.push_back(ncols);
    ncols += std_of(d).size();
  }
  // Rows: for each relation, the reduced image in (R/I)_e.
  std::vector<std::vector<Residue>> rows;
  auto add_relation = [&](const std::vector<Polynomial>& a, int e) {
    const auto& target = std_of(e);
    auto at = index_of(target);
    std::vector<std::vector<Residue>> block(target.size(), std::vector<Residue>(ncols, 0));
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (a[i].is_zero()) continue;
      const auto& src = std_of(deg[i]);
      for (std::size_t k = 0; k < src.size(); ++k) {
        Polynomial nf = G.normal_form(a[i].mul_term(src[k], 1));
        for (const auto& t : nf.terms()) block[at.at(t.m)][offset[i] + k] = t.c;
      }
    }
    for (auto& row : block) rows.push_back(std::move(row));
  };
  GradedMatrix gensrow(R, {0}, deg, g);
  GradedMatrix syz = syzygy_module(gensrow);
  for (std::size_t j = 0; j < syz.cols(); ++j) {
    check_budget();
    std::vector<Polynomial> a;
    for (std::size_t i = 0; i < g.size(); ++i) a.push_back(syz.at(i, j));
    add_relation(a, syz.source()[j]);
  }
  auto to_matrix = [&](const std::vector<std::vector<Residue>>& rs) {
    DenseMatrix M(rs.size(), ncols);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < ncols; ++j) M.at(i, j) = rs[i][j];
    return M;
  };
  NormalModuleDims out;
  out.h0_NYP = static_cast<long long>(ncols - rank(to_matrix(rows), F));

  // f = sum c_i g_i with c_i of degree 3 - deg g_i.
  int df = f.degree();
  auto mons = monomials_of_degree(R, df);
  auto at = index_of(mons);
  std::vector<std::pair<std::size_t, Monomial>> unk;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (deg[i] <= df)
      for (const auto& m : monomials_of_degree(R, df - deg[i])) unk.push_back({i, m});
  DenseMatrix L(mons.size(), unk.size());
  for (std::size_t c = 0; c < unk.size(); ++c) {
    Polynomial p = g[unk[c].first].mul_term(unk[c].second, 1);
    for (const auto& t : p.terms()) L.at(at.at(t.m), c) = t.c;
  }
  std::vector<Residue> rhs = coeffs(f, mons, at), x;
  if (!solve(L, rhs, F, x)) throw InvalidArgument("f is not in the ideal");
  std::vector<Polynomial> a(g.size(), Polynomial(R));
  for (std::size_t c = 0; c < unk.size(); ++c)
    if (x[c]) a[unk[c].first] += Polynomial::monomial(R, unk[c].second, x[c]);
  add_relation(a, df);
  out.h0_NYX = static_cast<long long>(ncols - rank(to_matrix(rows), F));

  if (with_h1) {
    GradedModulePresentation Ipres(syz);
    auto H = hom_module(Ipres, cyclic_module(I));
    SheafCohomology S(H);
    out.h1_NYP = S.h(1, 0);
  }
  return out;
}

// ---------------------------------------------------------------- End(F)

EndoCohomology endo_cohomology(const UlrichCertificate& cert, std::uint64_t seed) {
  EndoCohomology out;
  const Polynomial& f = cert.mf.f;
  const PolyRing& R = f.ring();
  try {
    GradedModulePresentation M = GradedModulePresentation(cert.mf.A, f).over_ambient();
    Ideal If(R);
    If.add(f);
    auto dual = hom_module(M, cyclic_module(If));
    auto E = tensor_module(M, dual);
    SheafCohomology S(E);
    for (int i = 0; i <= 4; ++i) out.h[i] = S.h(i, 0);
    Rng rng(seed);
    Ideal H(R);
    H.add(random_linear_form(R, rng));
    SheafCohomology SH(tensor_module(E, cyclic_module(H)));
    for (int i = 0; i <= 3; ++i) out.h_section[i] = SH.h(i, 0);
    out.complete = true;
  } catch (const TimeBudgetExceeded& e) {
    out.note = e.what();
  }
  return out;
}

}  // namespace cmf
