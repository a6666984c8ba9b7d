#include "cmf/geom.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "json.hpp"

#include "cmf/budget.hpp"

namespace cmf {

namespace {

struct MonoIndex {
  std::vector<Monomial> mons;
  std::unordered_map<Monomial, std::size_t, MonoHash> at;
  MonoIndex(const PolyRing& R, int d) {
    if (d >= 0) mons = monomials_of_degree(R, d);
    for (std::size_t i = 0; i < mons.size(); ++i) at[mons[i]] = i;
  }
};

std::vector<Residue> coords(const Polynomial& f, const MonoIndex& B) {
  std::vector<Residue> v(B.mons.size(), 0);
  for (const auto& t : f.terms()) v[B.at.at(t.m)] = t.c;
  return v;
}

Polynomial from_coords(const PolyRing& R, const std::vector<Residue>& v, const MonoIndex& B) {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) ts.push_back({B.mons[i], v[i]});
  return Polynomial(R, std::move(ts));
}

// Exponent tuples of 3 variables with total < m.
std::vector<std::array<int, 3>> orders_below(int m) {
  std::vector<std::array<int, 3>> out;
  for (int k = 0; k < m; ++k)
    for (int a = k; a >= 0; --a)
      for (int b = k - a; b >= 0; --b) out.push_back({a, b, k - a - b});
  return out;
}

Residue binom_mod(int n, int k, const PrimeField& F) {
  if (k < 0 || k > n) return 0;
  return F.reduce(static_cast<std::int64_t>(binomial(n, k) % F.p()));
}

Polynomial derivative(const Polynomial& f, int v) {
  const PolyRing& R = f.ring();
  const PrimeField& F = R.field();
  std::vector<Term> ts;
  Monomial xv = R.var(v);
  for (const auto& t : f.terms()) {
    int e = t.m.exp(v);
    if (!e) continue;
    ts.push_back({mono::quo(t.m, xv), F.mul(t.c, F.reduce(e))});
  }
  return Polynomial(R, std::move(ts));
}

Polynomial det(const std::vector<std::vector<Polynomial>>& M, const PolyRing& R) {
  std::size_t n = M.size();
  if (n == 1) return M[0][0];
  Polynomial s(R);
  for (std::size_t j = 0; j < n; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(M[i][k]);
      sub.push_back(std::move(row));
    }
    Polynomial t = M[0][j] * det(sub, R);
    s = j % 2 ? s - t : s + t;
  }
  return s;
}

void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

bool distinct_points(const std::vector<Point>& pts, const PrimeField& F) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto &a = pts[i], &b = pts[j];
      bool prop = true;
      for (int x = 0; x < 3 && prop; ++x)
        for (int y = x + 1; y < 3 && prop; ++y)
          if (F.sub(F.mul(a[x], b[y]), F.mul(a[y], b[x]))) prop = false;
      if (prop) return false;
    }
  return true;
}

}  // namespace

long long expected_fat_dim(const std::vector<int>& mults, int d) {
  long long e = static_cast<long long>(binomial(d + 2, 2));
  for (int m : mults) e -= static_cast<long long>(m) * (m + 1) / 2;
  return std::max(0LL, e);
}

std::vector<Polynomial> fat_forms(const PolyRing& plane, const PointConfig& cfg, int d,
                                  int scale) {
  const PrimeField& F = plane.field();
  MonoIndex B(plane, d);
  DenseMatrix M(0, B.mons.size());
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    const Point& p = cfg.points[i];
    for (const auto& beta : orders_below(scale * cfg.mults[i])) {
      std::vector<Residue> row(B.mons.size(), 0);
      for (std::size_t c = 0; c < B.mons.size(); ++c) {
        Residue v = 1;
        for (int x = 0; x < 3 && v; ++x) {
          int a = B.mons[c].exp(x);
          if (a < beta[x]) {
            v = 0;
            break;
          }
          v = F.mul(v, F.mul(binom_mod(a, beta[x], F), F.pow(p[x], a - beta[x])));
        }
        row[c] = v;
      }
      M.append_row(row);
    }
  }
  std::vector<Polynomial> out;
  if (M.rows() == 0) {
    for (const auto& m : B.mons) out.push_back(Polynomial::monomial(plane, m));
    return out;
  }
  for (const auto& v : kernel_basis(M, F)) out.push_back(from_coords(plane, v, B));
  return out;
}

void certify_points(PointConfig& cfg, const PrimeField& F, const std::vector<int>& degrees) {
  PolyRing plane(F, 3);
  if (!distinct_points(cfg.points, F)) throw GenericityFailure("points are not distinct");
  cfg.certificate.clear();
  for (int d : degrees) {
    long long got = static_cast<long long>(fat_forms(plane, cfg, d).size());
    long long want = expected_fat_dim(cfg.mults, d);
    if (got != want)
      throw GenericityFailure("degree " + std::to_string(d) + " system has dimension " +
                              std::to_string(got) + ", expected " + std::to_string(want));
    cfg.certificate.push_back({d, got});
  }
}

PointConfig random_general_points(const PrimeField& F, int n, std::vector<int> mults,
                                  std::uint64_t seed, const std::vector<int>& degrees) {
  if (n < 0 || n > 20) throw InvalidArgument("at most 20 points");
  if (mults.empty()) mults.assign(n, 1);
  if (static_cast<int>(mults.size()) != n) throw InvalidArgument("one multiplicity per point");
  Rng rng(seed);
  for (int attempt = 1; attempt <= 32; ++attempt) {
    PointConfig cfg;
    cfg.mults = mults;
    cfg.seed = seed;
    cfg.attempts = attempt;
    for (int i = 0; i < n; ++i) cfg.points.push_back(random_point(F, 3, rng));
    try {
      certify_points(cfg, F, degrees);
      return cfg;
    } catch (const GenericityFailure&) {
    }
  }
  throw GenericityFailure("no general configuration after 32 attempts");
}

Point random_point(const PrimeField& F, int n, Rng& rng) {
  while (true) {
    Point p(n);
    bool nz = false;
    for (auto& x : p) {
      x = rng.residue(F);
      nz = nz || x;
    }
    if (nz) return p;
  }
}

Ideal fat_point_ideal(const PolyRing& plane, const PointConfig& cfg) {
  const PrimeField& F = plane.field();
  std::optional<Ideal> acc;
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    DenseMatrix M(1, 3);
    for (int x = 0; x < 3; ++x) M.at(0, x) = cfg.points[i][x];
    std::vector<Polynomial> lin;
    for (const auto& v : kernel_basis(M, F)) {
      std::vector<Term> ts;
      for (int x = 0; x < 3; ++x)
        if (v[x]) ts.push_back({plane.var(x), v[x]});
      lin.push_back(Polynomial(plane, ts));
    }
    // (l0, l1)^m
    Ideal P(plane);
    int m = cfg.mults[i];
    for (int a = 0; a <= m; ++a) P.add(power(lin[0], a) * power(lin[1], m - a));
    acc = acc ? intersect(*acc, P) : P;
  }
  return acc ? *acc : Ideal(plane);
}

RingMap linear_system_map(const PolyRing& plane, const PointConfig& cfg, int d) {
  auto forms = fat_forms(plane, cfg, d);
  if (forms.empty()) throw EmptySystem("no forms of degree " + std::to_string(d));
  PolyRing R(plane.field(), static_cast<int>(forms.size()));
  return RingMap(R, plane, forms);
}

SurfaceMeta blowup_meta(int d, const std::vector<int>& mults, std::string tag,
                        std::uint64_t seed) {
  SurfaceMeta m;
  m.H2 = d * d;
  m.HK = -3 * d;
  for (int x : mults) {
    m.H2 -= x * x;
    m.HK += x;
  }
  m.K2 = 9 - static_cast<int>(mults.size());
  m.chi_top = 3 + static_cast<int>(mults.size());
  m.tag = std::move(tag);
  m.seed = seed;
  return m;
}

Point secant_point(const RationalSurface& S, Rng& rng) {
  const PrimeField& F = S.ring().field();
  auto sample = [&] {
    for (;;) {
      Point p = S.image_of(random_point(F, 3, rng));
      if (std::any_of(p.begin(), p.end(), [](Residue x) { return x != 0; })) return p;
    }
  };
  Point a = sample(), b = sample();
  Residue c = rng.nonzero(F);
  Point q(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) q[j] = F.add(a[j], F.mul(c, b[j]));
  return q;
}

// ---------------------------------------------------------------- parametric modules

ParametricModule parametric_module(const PolyRing& R, const std::vector<Polynomial>& forms,
                                   int d,
                                   const std::function<std::vector<Polynomial>(int)>& sections,
                                   int kmin, int kmax) {
  const PrimeField& F = R.field();
  const PolyRing& plane = forms.front().ring();
  int nv = R.nvars();
  // Products mu(forms) by degree.
  std::map<int, std::unordered_map<Monomial, Polynomial, MonoHash>> prod;
  prod[0].emplace(R.one(), Polynomial::constant(plane, 1));
  auto product = [&](const Monomial& mu) -> const Polynomial& {
    int k = mu.deg;
    for (int e = 1; e <= k; ++e) {
      if (prod.count(e)) continue;
      auto& cur = prod[e];
      for (const auto& m : monomials_of_degree(R, e)) {
        int v = 0;
        while (!m.exp(v)) ++v;
        cur.emplace(m, prod[e - 1].at(mono::quo(m, R.var(v))) * forms[v]);
      }
    }
    return prod[k].at(mu);
  };

  std::vector<int> gdeg;
  std::vector<Polynomial> gens;
  std::vector<Vec> relations;  // minimal, over target twists gdeg
  std::vector<long long> dims;
  // Kernel in the previous degree as module vectors.
  std::vector<Vec> prev_kernel;
  int quiet = 0;
  bool closing = false;
  for (int k = 0; k <= kmax; ++k) {
    check_budget();
    MonoIndex P(plane, d * k);
    // Unknowns (generator i, monomial mu of degree k - deg_i).
    std::vector<std::pair<std::size_t, Monomial>> unk;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (k - gdeg[i] >= 0)
        for (const auto& mu : monomials_of_degree(R, k - gdeg[i])) unk.push_back({i, mu});
    EchelonBasis img(P.mons.size(), F);
    std::vector<std::vector<Residue>> cols;
    for (const auto& [i, mu] : unk) {
      auto v = coords(product(mu) * gens[i], P);
      img.insert(v);
      cols.push_back(std::move(v));
    }
    // New generators from the target pieces.
    bool news = false;
    if (sections) {
      for (const auto& s : sections(k)) {
        auto v = coords(s, P);
        if (img.insert(v)) {
          gens.push_back(s);
          gdeg.push_back(k);
          news = true;
        }
      }
    } else if (k == 0 && gens.empty()) {
      gens.push_back(Polynomial::constant(plane, 1));
      gdeg.push_back(0);
      img.insert(coords(gens.back(), P));
      news = true;
    }
    dims.push_back(static_cast<long long>(img.rank()));
    // Relations in degree k among the unknowns that existed before the
    // new generators (new generators are independent of the image).
    std::vector<Vec> kernel;
    bool new_rel = false;
    if (!unk.empty()) {
      DenseMatrix M(P.mons.size(), unk.size());
      for (std::size_t c = 0; c < unk.size(); ++c)
        for (std::size_t r = 0; r < P.mons.size(); ++r) M.at(r, c) = cols[c][r];
      auto ker = kernel_basis(M, F);
      std::map<std::pair<std::size_t, Monomial>, std::size_t,
               std::function<bool(const std::pair<std::size_t, Monomial>&,
                                  const std::pair<std::size_t, Monomial>&)>>
          pos([](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second.w[0] != b.second.w[0] ? a.second.w[0] < b.second.w[0]
                                                  : a.second.w[1] < b.second.w[1];
          });
      for (std::size_t c = 0; c < unk.size(); ++c) pos[unk[c]] = c;
      EchelonBasis lower(unk.size(), F);
      for (const auto& v : prev_kernel)
        for (int x = 0; x < nv; ++x) {
          std::vector<Residue> row(unk.size(), 0);
          for (const auto& t : v) row[pos.at({t.comp, mono::mul(t.m, R.var(x))})] = t.c;
          lower.insert(std::move(row));
        }
      ModuleSpace S(R, gdeg);
      for (const auto& kv : ker) {
        Vec vec;
        for (std::size_t c = 0; c < unk.size(); ++c)
          if (kv[c]) vec.push_back({unk[c].second, static_cast<std::uint32_t>(unk[c].first), kv[c]});
        vec = S.canonical(std::move(vec));
        if (lower.insert(kv)) {
          relations.push_back(vec);
          new_rel = true;
        }
        kernel.push_back(std::move(vec));
      }
    }
    prev_kernel = std::move(kernel);
    quiet = (news || new_rel) ? 0 : quiet + 1;
    if (k >= kmin && quiet >= 2 && !closing) {
      // Confirm against the presentation two degrees further.
      GradedModulePresentation Pm(GradedMatrix::from_columns(R, gdeg, relations));
      HilbertCounter C(Pm);
      bool ok = true;
      for (int e = 0; e <= k && ok; ++e) ok = C.value(e) == dims[e];
      if (ok) {
        closing = true;
        kmax = std::min(kmax, k + 2);
      }
    }
  }
  if (!closing) throw NoStabilization("parametric module did not settle by degree " + std::to_string(kmax));
  ParametricModule out{GradedModulePresentation(GradedMatrix::from_columns(R, gdeg, relations)),
                       gens, dims};
  HilbertCounter C(out.module);
  for (std::size_t e = 0; e < dims.size(); ++e)
    if (C.value(static_cast<int>(e)) != dims[e])
      throw NoStabilization("parametric module misses relations in degree " + std::to_string(e));
  return out;
}

// ---------------------------------------------------------------- surfaces

RationalSurface::RationalSurface(PolyRing plane, PointConfig cfg, int d,
                                 std::vector<Polynomial> forms, SurfaceMeta meta)
    : plane_(std::move(plane)),
      R_(plane_.field(), static_cast<int>(forms.size())),
      cfg_(std::move(cfg)),
      d_(d),
      forms_(std::move(forms)),
      meta_(std::move(meta)) {}

RationalSurface RationalSurface::from_linear_system(const PolyRing& plane, const PointConfig& cfg,
                                                    int d, SurfaceMeta meta) {
  auto forms = fat_forms(plane, cfg, d);
  if (forms.empty()) throw EmptySystem("no forms of degree " + std::to_string(d));
  return RationalSurface(plane, cfg, d, forms, std::move(meta));
}

const Ideal& RationalSurface::ideal() {
  if (!ideal_) {
    auto pm = parametric_module(R_, forms_, d_, nullptr);
    Ideal I(R_);
    for (std::size_t j = 0; j < pm.module.presentation.cols(); ++j)
      I.add(pm.module.presentation.at(0, j));
    ideal_ = I;
  }
  return *ideal_;
}

const GradedModulePresentation& RationalSurface::section_module() {
  if (!sections_) {
    auto pm = parametric_module(R_, forms_, d_, [&](int k) {
      return fat_forms(plane_, cfg_, d_ * k, k);
    });
    sections_ = pm.module;
  }
  return *sections_;
}

Point RationalSurface::image_of(const Point& q) const {
  Point out;
  for (const auto& f : forms_) out.push_back(f.evaluate(q));
  return out;
}

RationalSurface RationalSurface::project(const std::vector<Point>& center,
                                         bool allow_special_center) {
  const PrimeField& F = R_.field();
  DenseMatrix M(0, R_.nvars());
  for (const auto& p : center) M.append_row(p);
  if (rank(M, F) != center.size()) throw InvalidArgument("center points are dependent");
  if (!allow_special_center && span_meets(ideal(), center))
    throw CenterOnSurface("projection center meets the surface");
  std::vector<Polynomial> nf;
  for (const auto& l : kernel_basis(M, F)) {
    Polynomial s(plane_);
    for (std::size_t j = 0; j < l.size(); ++j)
      if (l[j]) s += forms_[j].scale(l[j]);
    nf.push_back(s);
  }
  SurfaceMeta m = meta_;
  return RationalSurface(plane_, cfg_, d_, nf, m);
}

bool span_meets(const Ideal& I, const std::vector<Point>& pts) {
  const PolyRing& R = I.ring();
  PolyRing U(R.field(), static_cast<int>(pts.size()));
  std::vector<Polynomial> img;
  for (int j = 0; j < R.nvars(); ++j) {
    std::vector<Term> ts;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (pts[k][j]) ts.push_back({U.var(static_cast<int>(k)), pts[k][j]});
    img.push_back(Polynomial(U, ts));
  }
  RingMap phi(R, U, img);
  Ideal J(U);
  for (const auto& g : I.gens()) {
    Polynomial h = apply_map(phi, g);
    if (!h.is_zero()) J.add(h);
  }
  if (J.size() == 0) return true;
  return hilbert(cyclic_module(J)).codim() < U.nvars();
}

SurfaceModel to_model(RationalSurface& S) {
  return SurfaceModel{S.ideal(), S.meta(), S.section_module()};
}

// ---------------------------------------------------------------- invariants

SurfaceInvariants surface_invariants(const Ideal& I, std::uint64_t seed, int window) {
  const PolyRing& R = I.ring();
  SurfaceInvariants inv;
  auto P = cyclic_module(I);
  HilbertData H = hilbert(P);
  inv.codim = H.codim();
  inv.dim = R.nvars() - 1 - inv.codim;
  inv.chi = H.polynomial_value(0);
  Ideal J = I;
  J.add(random_linear_form(R, seed));
  HilbertData HJ = hilbert(cyclic_module(J));
  if (inv.dim >= 2) {
    long long a0 = HJ.polynomial_value(0), a1 = HJ.polynomial_value(1);
    inv.degree = a1 - a0;
    inv.sectional_genus = 1 - a0;
  } else {
    inv.degree = HJ.polynomial_value(0);
    inv.sectional_genus = 1 - H.polynomial_value(0);
  }
  inv.acm = static_cast<int>(minimal_free_resolution(P).length()) == inv.codim;
  inv.maximal_rank = maximal_rank(I, 0, window);
  return inv;
}

std::vector<long long> rao_module(const Ideal& I, int lo, int hi) {
  SheafCohomology S(cyclic_module(I));
  std::vector<long long> out;
  for (int m = lo; m <= hi; ++m) out.push_back(S.local(1, m));
  return out;
}

bool maximal_rank(const Ideal& I, int lo, int hi) {
  const PolyRing& R = I.ring();
  SheafCohomology S(cyclic_module(I));
  int n = R.nvars() - 1;
  for (int m = lo; m <= hi; ++m) {
    long long all = m >= 0 ? static_cast<long long>(binomial(m + n, n)) : 0;
    long long h0 = all - (S.module_dim(m) - S.local(0, m));
    long long h1 = S.local(1, m);
    if (h0 != 0 && h1 != 0) return false;
  }
  return true;
}

GradedMatrix scroll_matrix(const std::vector<int>& partition, const PolyRing& R) {
  int total = 0;
  for (int n : partition) {
    if (n < 1) throw BadPartition("scroll blocks must be positive");
    total += n + 1;
  }
  if (partition.empty() || total != R.nvars())
    throw BadPartition("partition needs sum(n_i + 1) = " + std::to_string(R.nvars()));
  std::vector<Polynomial> e0, e1;
  int a = 0;
  for (int n : partition) {
    for (int c = 0; c < n; ++c) {
      e0.push_back(Polynomial::variable(R, a + c));
      e1.push_back(Polynomial::variable(R, a + c + 1));
    }
    a += n + 1;
  }
  std::vector<Polynomial> entries = e0;
  entries.insert(entries.end(), e1.begin(), e1.end());
  return GradedMatrix(R, {0, 0}, std::vector<int>(e0.size(), 1), entries);
}

Ideal minors2(const GradedMatrix& M) {
  Ideal I(M.ring());
  for (std::size_t i = 0; i < M.cols(); ++i)
    for (std::size_t j = i + 1; j < M.cols(); ++j) {
      Polynomial m = M.at(0, i) * M.at(1, j) - M.at(0, j) * M.at(1, i);
      if (!m.is_zero()) I.add(m);
    }
  return I;
}

Ideal scroll_ideal(const std::vector<int>& partition, const PolyRing& R) {
  return minors2(scroll_matrix(partition, R));
}

Ideal linkage(const Ideal& total, const Ideal& part) {
  if (!ideal_contains(part, total)) throw InvalidArgument("linkage needs total ⊆ part");
  return saturate(ideal_quotient(total, part));
}

// ---------------------------------------------------------------- rational curves

namespace {

using Uni = std::vector<Residue>;  // coefficient of t0^i, t1 = 1

void trim(Uni& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Uni dehomogenize(const Polynomial& f) {
  const PolyRing& R = f.ring();
  if (R.nvars() != 2) throw RingMismatch("binary forms need two variables");
  if (!f.is_homogeneous()) throw NotHomogeneous("binary form");
  Uni a(std::max(f.degree(), 0) + 1, 0);
  for (const auto& t : f.terms()) a[R.exponents(t.m)[0]] = t.c;
  trim(a);
  return a;
}

Polynomial homogenize(const PolyRing& R, const Uni& a, int n) {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) ts.push_back({R.make_monomial({static_cast<int>(i), n - static_cast<int>(i)}), a[i]});
  return Polynomial(R, std::move(ts));
}

// a = q*b + r
void divmod(Uni a, const Uni& b, const PrimeField& F, Uni& q, Uni& r) {
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  Residue li = F.inv(b.back());
  for (std::size_t k = q.size(); k-- > 0;) {
    Residue c = F.mul(a[k + b.size() - 1], li);
    q[k] = c;
    if (c)
      for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = F.sub_mul(a[k + j], c, b[j]);
  }
  trim(a);
  r = a;
}

}  // namespace

Polynomial binary_gcd(const Polynomial& f, const Polynomial& g) {
  const PolyRing& R = f.ring();
  const PrimeField& F = R.field();
  if (f.is_zero()) return g.is_zero() ? g : g.make_monic();
  if (g.is_zero()) return f.make_monic();
  Uni a = dehomogenize(f), b = dehomogenize(g);
  int ord = std::min(f.degree() - static_cast<int>(a.size()) + 1,
                     g.degree() - static_cast<int>(b.size()) + 1);
  while (!b.empty()) {
    Uni q, r;
    divmod(a, b, F, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  Residue li = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, li);
  return homogenize(R, a, static_cast<int>(a.size()) - 1 + ord);
}

Polynomial binary_divide(const Polynomial& f, const Polynomial& g) {
  const PolyRing& R = f.ring();
  if (g.is_zero()) throw InvalidArgument("division by zero form");
  if (f.is_zero()) return f;
  Uni q, r;
  divmod(dehomogenize(f), dehomogenize(g), R.field(), q, r);
  Polynomial h = homogenize(R, q, f.degree() - g.degree());
  if (!r.empty() || h * g != f) throw InvalidArgument("binary form does not divide");
  return h;
}

std::vector<Polynomial> compose_curve(const std::vector<Polynomial>& forms,
                                      const std::vector<Polynomial>& curve) {
  const PolyRing& plane = forms.front().ring();
  const PolyRing& T = curve.front().ring();
  RingMap phi(plane, T, curve);
  std::vector<Polynomial> out;
  Polynomial g(T);
  for (const auto& f : forms) {
    out.push_back(apply_map(phi, f));
    g = binary_gcd(g, out.back());
  }
  if (g.is_zero()) throw EmptySystem("curve lies in the base locus");
  for (auto& p : out) p = binary_divide(p, g);
  return out;
}

Ideal rational_curve_ideal(const PolyRing& R, const std::vector<Polynomial>& param) {
  auto pm = parametric_module(R, param, param.front().degree(), nullptr);
  Ideal I(R);
  for (std::size_t j = 0; j < pm.module.presentation.cols(); ++j)
    I.add(pm.module.presentation.at(0, j));
  return I;
}

GradedMatrix curve_scroll_matrix(const PolyRing& R, const std::vector<Polynomial>& param) {
  const PolyRing& T = param.front().ring();
  const PrimeField& F = R.field();
  int e = param.front().degree();
  std::size_t N = param.size();
  if (static_cast<int>(N) != R.nvars()) throw ShapeMismatch("one coordinate per variable");
  // Unknowns: g (e coefficients of degree e-1), a (N), b (N) with
  // t0 g - sum a_j p_j = 0 and t1 g - sum b_j p_j = 0 in degree e.
  MonoIndex E(T, e), G(T, e - 1);
  std::size_t nu = G.mons.size() + 2 * N;
  DenseMatrix M(2 * E.mons.size(), nu);
  for (int half = 0; half < 2; ++half) {
    std::size_t r0 = half * E.mons.size();
    for (std::size_t c = 0; c < G.mons.size(); ++c) {
      Monomial m = mono::mul(G.mons[c], T.var(half));
      M.at(r0 + E.at.at(m), c) = 1;
    }
    for (std::size_t j = 0; j < N; ++j)
      for (const auto& t : param[j].terms())
        M.at(r0 + E.at.at(t.m), G.mons.size() + half * N + j) = F.neg(t.c);
  }
  auto ker = kernel_basis(M, F);
  std::vector<Polynomial> top, bottom;
  for (const auto& v : ker) {
    Polynomial l0(R), l1(R);
    for (std::size_t j = 0; j < N; ++j) {
      Residue a = v[G.mons.size() + j], b = v[G.mons.size() + N + j];
      if (a) l0 += Polynomial::variable(R, static_cast<int>(j)).scale(a);
      if (b) l1 += Polynomial::variable(R, static_cast<int>(j)).scale(b);
    }
    top.push_back(l0);
    bottom.push_back(l1);
  }
  std::vector<Polynomial> entries = top;
  entries.insert(entries.end(), bottom.begin(), bottom.end());
  return GradedMatrix(R, {0, 0}, std::vector<int>(top.size(), 1), entries);
}

Ideal restrict_to_hyperplane(const Ideal& I, const Polynomial& h, const PolyRing& target) {
  const PolyRing& R = I.ring();
  const PrimeField& F = R.field();
  if (target.nvars() != R.nvars() - 1) throw ShapeMismatch("target needs one variable less");
  int v = -1;
  for (int j = R.nvars() - 1; j >= 0 && v < 0; --j)
    if (h.coefficient(R.var(j))) v = j;
  if (v < 0 || h.degree() != 1) throw InvalidArgument("hyperplane must be a linear form");
  Residue cinv = F.inv(h.coefficient(R.var(v)));
  std::vector<Polynomial> img;
  Polynomial sub(target);
  for (int j = 0, k = 0; j < R.nvars(); ++j) {
    if (j == v) continue;
    img.push_back(Polynomial::variable(target, k));
    Residue c = h.coefficient(R.var(j));
    if (c) sub -= Polynomial::variable(target, k).scale(F.mul(c, cinv));
    ++k;
  }
  img.insert(img.begin() + v, sub);
  RingMap phi(R, target, img);
  Ideal J(target);
  for (const auto& g : I.gens()) {
    Polynomial r = apply_map(phi, g);
    if (!r.is_zero()) J.add(r);
  }
  return J;
}

bool is_smooth(const Ideal& I, int codim) {
  const PolyRing& R = I.ring();
  int n = R.nvars();
  const auto& g = I.gens();
  std::vector<std::vector<Polynomial>> jac;
  for (const auto& f : g) {
    std::vector<Polynomial> row;
    for (int v = 0; v < n; ++v) row.push_back(derivative(f, v));
    jac.push_back(std::move(row));
  }
  std::vector<std::vector<std::size_t>> rs, cs;
  std::vector<std::size_t> cur;
  choose(g.size(), codim, 0, cur, rs);
  choose(n, codim, 0, cur, cs);
  Ideal J = I;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      check_budget();
      std::vector<std::vector<Polynomial>> sub;
      for (auto i : r) {
        std::vector<Polynomial> row;
        for (auto j : c) row.push_back(jac[i][j]);
        sub.push_back(std::move(row));
      }
      Polynomial m = det(sub, R);
      if (!m.is_zero()) J.add(m);
    }
  return hilbert(cyclic_module(J)).codim() == n;
}

void export_surface(const std::string& stem, const SurfaceModel& S, const SurfaceInvariants& inv,
                    std::uint32_t prime) {
  {
    std::ofstream out(stem + ".ideal");
    write_ideal_file(out, S.ideal);
  }
  nlohmann::ordered_json j;
  j["degree"] = inv.degree;
  j["genus"] = inv.sectional_genus;
  j["K2"] = S.meta.K2;
  j["chi_top"] = S.meta.chi_top;
  j["tag"] = S.meta.tag;
  j["seed"] = S.meta.seed;
  j["prime"] = prime;
  std::ofstream out(stem + ".json");
  out << j.dump(2) << "\n";
}

}  // namespace cmf
