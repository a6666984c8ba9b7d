#include "cmf/groebner.hpp"

#include <algorithm>
#include <map>

#include "cmf/budget.hpp"

namespace cmf {

Vec to_vec(const Polynomial& f, std::uint32_t comp) {
  Vec v;
  v.reserve(f.size());
  for (const auto& t : f.terms()) v.push_back({t.m, comp, t.c});
  return v;
}

Polynomial from_vec(const PolyRing& R, const Vec& v, std::uint32_t comp) {
  std::vector<Term> ts;
  for (const auto& t : v)
    if (t.comp == comp) ts.push_back({t.m, t.c});
  return Polynomial(R, std::move(ts));
}

namespace {

bool all_homogeneous(const std::vector<Polynomial>& fs) {
  for (const auto& f : fs)
    if (!f.is_homogeneous()) return false;
  return true;
}

// Polynomial-level reduction for bases that are not homogeneous.
Polynomial reduce_poly(const Polynomial& f, const std::vector<Polynomial>& G) {
  const PolyRing& R = f.ring();
  const PrimeField& F = R.field();
  Polynomial p = f;
  std::vector<Term> rem;
  while (!p.is_zero()) {
    check_budget();
    Term t = p.lead();
    const Polynomial* red = nullptr;
    for (const auto& g : G)
      if (mono::divides(g.lead_monomial(), t.m)) {
        red = &g;
        break;
      }
    if (!red) {
      rem.push_back(t);
      p = p - Polynomial::monomial(R, t.m, t.c);
      continue;
    }
    Monomial q = mono::quo(t.m, red->lead_monomial());
    Residue c = F.div(t.c, red->lead_coeff());
    p = p - red->mul_term(q, c);
  }
  return Polynomial(R, std::move(rem), true);
}

// Buchberger with the sugar selection strategy and the product criterion,
// for inputs that are not homogeneous.
std::vector<Polynomial> sugar_buchberger(std::vector<Polynomial> G) {
  const PolyRing T = G.front().ring();
  std::vector<int> sugar;
  for (auto& g : G) {
    g = g.make_monic();
    sugar.push_back(g.degree());
  }
  struct P {
    std::size_t i, j;
    Monomial l;
    int sugar;
  };
  std::vector<P> pairs;
  auto add_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      const Monomial& a = G[i].lead_monomial();
      const Monomial& b = G[k].lead_monomial();
      if (mono::coprime(a, b)) continue;
      Monomial l = T.lcm(a, b);
      int s = std::max(sugar[i] + l.deg - a.deg, sugar[k] + l.deg - b.deg);
      pairs.push_back({i, k, l, s});
    }
  };
  for (std::size_t k = 0; k < G.size(); ++k) add_pairs(k);
  while (!pairs.empty()) {
    check_budget();
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const P& x, const P& y) {
      if (x.sugar != y.sugar) return x.sugar < y.sugar;
      return T.cmp(x.l, y.l) < 0;
    });
    P pr = *best;
    pairs.erase(best);
    Polynomial sp = G[pr.i].mul_term(mono::quo(pr.l, G[pr.i].lead_monomial()), 1) -
                    G[pr.j].mul_term(mono::quo(pr.l, G[pr.j].lead_monomial()), 1);
    Polynomial r = reduce_poly(sp, G);
    if (r.is_zero()) continue;
    G.push_back(r.make_monic());
    sugar.push_back(pr.sugar);
    add_pairs(G.size() - 1);
  }
  return G;
}

// Reduced Groebner basis from an arbitrary (possibly non-reduced) one.
std::vector<Polynomial> reduce_basis(std::vector<Polynomial> G) {
  std::vector<Polynomial> keep;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& a = G[j].lead_monomial();
      const Monomial& b = G[i].lead_monomial();
      if (mono::divides(a, b) && (a != b || j < i)) redundant = true;
    }
    if (!redundant) keep.push_back(G[i].make_monic());
  }
  for (std::size_t i = 0; i < keep.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (j != i) others.push_back(keep[j]);
    Polynomial lead = Polynomial::monomial(keep[i].ring(), keep[i].lead_monomial(), 1);
    keep[i] = lead + reduce_poly(keep[i] - lead, others);
  }
  std::sort(keep.begin(), keep.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.ring().cmp(a.lead_monomial(), b.lead_monomial()) < 0;
  });
  return keep;
}

}  // namespace

GroebnerBasis::GroebnerBasis(const Ideal& ideal, const PolyRing& ring,
                             std::vector<Polynomial> basis)
    : ideal_(ideal), ring_(ring), basis_(std::move(basis)) {}

std::vector<Monomial> GroebnerBasis::lead_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : basis_) out.push_back(g.lead_monomial());
  return out;
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  if (f.ring().nvars() != ring_.nvars() || f.ring().field() != ring_.field() ||
      f.ring().var_names() != ring_.var_names())
    throw RingMismatch("normal_form: polynomial is not in the basis ring");
  Polynomial g = f.ring() == ring_ ? f : f.in_ring(ring_);
  Polynomial r(ring_);
  if (all_homogeneous(basis_)) {
    std::lock_guard<std::mutex> lock(*mu_);
    if (!engine_) {
      engine_ = std::make_shared<ModuleGB>(ModuleSpace(ring_, {0}));
      std::vector<Vec> b;
      for (const auto& p : basis_) b.push_back(to_vec(p));
      engine_->adopt_basis(b);
    }
    r = from_vec(ring_, engine_->normal_form(to_vec(g)));
  } else {
    r = reduce_poly(g, basis_);
  }
  return f.ring() == ring_ ? r : r.in_ring(f.ring());
}

bool GroebnerBasis::contains(const Ideal& J) const {
  for (const auto& g : J.gens())
    if (!contains(g)) return false;
  return true;
}

bool GroebnerBasis::is_unit_ideal() const {
  for (const auto& g : basis_)
    if (g.is_constant() && !g.is_zero()) return true;
  return false;
}

bool GroebnerBasis::operator==(const GroebnerBasis& o) const {
  if (basis_.size() != o.basis_.size()) return false;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (!(basis_[i] == o.basis_[i])) return false;
  return true;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  return G.normal_form(f);
}

static std::vector<Polynomial> homogeneous_gb(const PolyRing& R,
                                              const std::vector<Polynomial>& gens,
                                              const GBOptions& opt) {
  ModuleGB eng(ModuleSpace(R, {0}), opt);
  for (const auto& g : gens) eng.add_ambient(to_vec(g));
  eng.run();
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < eng.size(); ++i) out.push_back(from_vec(R, eng.element(i)));
  std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    return R.cmp(a.lead_monomial(), b.lead_monomial()) < 0;
  });
  return out;
}

GroebnerBasis groebner_basis(const Ideal& I, const MonomialOrder& order,
                             const GBOptions& opt) {
  PolyRing R = I.ring().order() == order ? I.ring() : I.ring().with_order(order);
  std::vector<Polynomial> gens;
  for (const auto& g : I.gens()) gens.push_back(g.ring() == R ? g : g.in_ring(R));
  if (all_homogeneous(gens)) return GroebnerBasis(I, R, homogeneous_gb(R, gens, opt));

  // Inhomogeneous input: homogenize with a trailing variable, which is the
  // smallest variable under grevlex, so dehomogenized leads are the leads of
  // the dehomogenized elements.
  if (order.kind() != MonomialOrder::Kind::Grevlex || !R.standard_grading() ||
      R.nvars() >= kMaxVars)
    throw NotHomogeneous(
        "inhomogeneous ideals are supported only under grevlex with a spare variable");
  std::vector<std::string> names = R.var_names();
  std::string h = "h_";
  while (R.var_index(h) >= 0) h += "_";
  names.push_back(h);
  PolyRing Rh(R.field(), names);
  int n = R.nvars();
  std::vector<Polynomial> hg;
  for (const auto& g : gens) {
    int d = g.degree();
    std::vector<Term> ts;
    for (const auto& t : g.terms()) {
      auto e = R.exponents(t.m);
      e.push_back(d - t.m.deg);
      ts.push_back({Rh.make_monomial(e), t.c});
    }
    hg.emplace_back(Rh, std::move(ts));
  }
  auto G = homogeneous_gb(Rh, hg, opt);
  std::vector<Polynomial> deh;
  for (const auto& g : G) {
    std::vector<Term> ts;
    for (const auto& t : g.terms()) {
      auto e = Rh.exponents(t.m);
      e.resize(n);
      ts.push_back({R.make_monomial(e), t.c});
    }
    Polynomial p(R, std::move(ts));
    if (!p.is_zero()) deh.push_back(p);
  }
  bool unit = false;
  for (const auto& p : deh)
    if (p.is_constant()) unit = true;
  if (unit) return GroebnerBasis(I, R, {Polynomial::constant(R, 1)});
  return GroebnerBasis(I, R, reduce_basis(deh));
}

GroebnerBasis groebner_basis(const Ideal& I, const GBOptions& opt) {
  return groebner_basis(I, I.ring().order(), opt);
}

bool buchberger_fixpoint(const GroebnerBasis& G) {
  const auto& B = G.basis();
  const PolyRing& R = G.ring();
  const PrimeField& F = R.field();
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j) {
      Monomial l = R.lcm(B[i].lead_monomial(), B[j].lead_monomial());
      Polynomial s =
          B[i].mul_term(mono::quo(l, B[i].lead_monomial()), F.inv(B[i].lead_coeff())) -
          B[j].mul_term(mono::quo(l, B[j].lead_monomial()), F.inv(B[j].lead_coeff()));
      if (!G.normal_form(s).is_zero()) return false;
    }
  return true;
}

std::vector<Polynomial> minimal_generators(const PolyRing& R,
                                           const std::vector<Polynomial>& gens) {
  std::vector<Polynomial> hs;
  for (const auto& g : gens)
    if (!g.is_zero()) hs.push_back(g);
  if (!all_homogeneous(hs)) return hs;
  int maxd = 0;
  for (const auto& g : hs) maxd = std::max(maxd, g.degree());
  GBOptions opt;
  opt.max_degree = maxd;
  opt.degree_cap = std::max(opt.degree_cap, maxd);
  ModuleGB eng(ModuleSpace(R, {0}), opt);
  for (const auto& g : hs) eng.add_generator(to_vec(g));
  eng.run();
  std::vector<Polynomial> out;
  auto idx = eng.minimal_generators();
  std::sort(idx.begin(), idx.end());
  for (auto k : idx) out.push_back(hs[k]);
  return out;
}

Ideal minimalize(const Ideal& I) {
  return Ideal(I.ring(), minimal_generators(I.ring(), I.gens()));
}

namespace {

// Generators of {a : a*g in I} for homogeneous data.
std::vector<Polynomial> colon_element(const Ideal& I, const Polynomial& g) {
  const PolyRing& R = I.ring();
  ModuleSpace S(R, {0, g.degree()}, {0, 1});
  GBOptions opt;
  opt.skip_pair_block = 1;
  opt.interreduce = false;
  ModuleGB eng(S, opt);
  Vec v = to_vec(g, 0);
  v.push_back({R.one(), 1, 1});
  eng.add_ambient(v);
  for (const auto& f : I.gens()) eng.add_ambient(to_vec(f, 0));
  eng.run();
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < eng.size(); ++i) {
    const Vec& e = eng.element(i);
    if (e.front().comp == 1) out.push_back(from_vec(R, e, 1));
  }
  return out;
}

}  // namespace

Ideal ideal_quotient(const Ideal& I, const Polynomial& g) {
  const PolyRing& R = I.ring();
  if (!(g.ring() == R)) throw RingMismatch("ideal_quotient: ring mismatch");
  if (g.is_zero()) return Ideal(R, {Polynomial::constant(R, 1)});
  if (!I.is_homogeneous() || !g.is_homogeneous()) {
    // (I : g) = (I ∩ <g>) / g, intersection by elimination.
    Ideal inter = intersect(I, Ideal(R, {g}));
    std::vector<Polynomial> out;
    for (const auto& h : inter.gens()) {
      // exact division: h = q*g
      Polynomial q(R), rem = h;
      const PrimeField& F = R.field();
      while (!rem.is_zero()) {
        Monomial m = mono::quo(rem.lead_monomial(), g.lead_monomial());
        Residue c = F.div(rem.lead_coeff(), g.lead_coeff());
        q += Polynomial::monomial(R, m, c);
        rem -= g.mul_term(m, c);
      }
      out.push_back(q);
    }
    return Ideal(R, out);
  }
  return Ideal(R, minimal_generators(R, colon_element(I, g)));
}

Ideal ideal_quotient(const Ideal& I, const Ideal& J) {
  const PolyRing& R = I.ring();
  if (J.gens().empty()) return Ideal(R, {Polynomial::constant(R, 1)});
  Ideal acc(R);
  bool first = true;
  for (const auto& g : J.gens()) {
    Ideal q = ideal_quotient(I, g);
    acc = first ? q : intersect(acc, q);
    first = false;
  }
  return acc;
}

Ideal intersect(const Ideal& I, const Ideal& J) {
  const PolyRing& R = I.ring();
  if (!(J.ring() == R)) throw RingMismatch("intersect: ring mismatch");
  if (I.gens().empty() || J.gens().empty()) return Ideal(R);
  if (I.is_homogeneous() && J.is_homogeneous()) {
    // Kernel of R -> R/I ⊕ R/J, 1 -> (1,1).
    ModuleSpace S(R, {0, 0, 0}, {0, 0, 1});
    GBOptions opt;
    opt.skip_pair_block = 1;
    opt.interreduce = false;
    ModuleGB eng(S, opt);
    eng.add_ambient({{R.one(), 0, 1}, {R.one(), 1, 1}, {R.one(), 2, 1}});
    for (const auto& f : I.gens()) eng.add_ambient(to_vec(f, 0));
    for (const auto& f : J.gens()) eng.add_ambient(to_vec(f, 1));
    eng.run();
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < eng.size(); ++i) {
      const Vec& e = eng.element(i);
      if (e.front().comp == 2) out.push_back(from_vec(R, e, 2));
    }
    return Ideal(R, minimal_generators(R, out));
  }
  return intersect_by_elimination(I, J);
}

Ideal intersect_by_elimination(const Ideal& I, const Ideal& J) {
  const PolyRing& R = I.ring();
  if (!(J.ring() == R)) throw RingMismatch("intersect: ring mismatch");
  if (I.gens().empty() || J.gens().empty()) return Ideal(R);
  // I*t + J*(1-t), eliminate t.
  if (R.nvars() >= kMaxVars) throw InvalidArgument("intersect: no room for auxiliary variable");
  std::vector<std::string> names{"t_"};
  while (R.var_index(names[0]) >= 0) names[0] += "_";
  for (const auto& s : R.var_names()) names.push_back(s);
  PolyRing T(R.field(), names, MonomialOrder::elimination(1));
  auto lift = [&](const Polynomial& f) {
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
      auto e = R.exponents(t.m);
      e.insert(e.begin(), 0);
      ts.push_back({T.make_monomial(e), t.c});
    }
    return Polynomial(T, std::move(ts));
  };
  Polynomial t = Polynomial::variable(T, 0);
  Polynomial one_minus_t = Polynomial::constant(T, 1) - t;
  Ideal K(T);
  for (const auto& f : I.gens()) K.add(lift(f) * t);
  for (const auto& f : J.gens()) K.add(lift(f) * one_minus_t);
  // K is not homogeneous, so the degree-by-degree engine does not apply;
  // a plain polynomial Buchberger loop is enough for the small inputs that
  // take this path.
  std::vector<Polynomial> G = sugar_buchberger(K.gens());
  G = reduce_basis(G);
  std::vector<Polynomial> out;
  for (const auto& g : G) {
    bool free = true;
    for (const auto& tm : g.terms())
      if (tm.m.exp(0)) free = false;
    if (!free) continue;
    std::vector<Term> ts;
    for (const auto& tm : g.terms()) {
      auto e = T.exponents(tm.m);
      e.erase(e.begin());
      ts.push_back({R.make_monomial(e), tm.c});
    }
    out.emplace_back(R, std::move(ts));
  }
  if (I.is_homogeneous() && J.is_homogeneous()) return Ideal(R, minimal_generators(R, out));
  return Ideal(R, out);
}

Ideal saturation(const Ideal& I, const Ideal& J) {
  const PolyRing& R = I.ring();
  Ideal cur = I;
  GroebnerBasis gcur = groebner_basis(cur);
  for (int iter = 0; iter < 64; ++iter) {
    Ideal next = ideal_quotient(cur, J);
    GroebnerBasis gnext = groebner_basis(next);
    if (gnext == gcur) return Ideal(R, minimal_generators(R, gcur.basis()));
    cur = next;
    gcur = std::move(gnext);
  }
  throw NoStabilization("saturation did not stabilize");
}

Ideal saturate(const Ideal& I) {
  const PolyRing& R = I.ring();
  std::vector<Polynomial> vars;
  for (int i = 0; i < R.nvars(); ++i) vars.push_back(Polynomial::variable(R, i));
  return saturation(I, Ideal(R, vars));
}

Ideal eliminate(const Ideal& I, int k) {
  const PolyRing& R = I.ring();
  if (k == 0) return I;
  if (!I.is_homogeneous()) throw NotHomogeneous("eliminate needs homogeneous generators");
  GBOptions opt;
  GroebnerBasis G = groebner_basis(I, MonomialOrder::elimination(k), opt);
  std::vector<Polynomial> out;
  for (const auto& g : G.basis()) {
    bool free = true;
    for (const auto& t : g.terms())
      for (int i = 0; i < k && free; ++i)
        if (t.m.exp(i)) free = false;
    if (free) out.push_back(g.in_ring(R));
  }
  return Ideal(R, minimal_generators(R, out));
}

Ideal kernel_of_map(const RingMap& phi) {
  const PolyRing& S = phi.source();
  const PolyRing& T = phi.target();
  int d = phi.graded_degree();
  bool all_zero = true;
  for (const auto& g : phi.images())
    if (!g.is_zero()) all_zero = false;
  if (all_zero) {
    std::vector<Polynomial> v;
    for (int i = 0; i < S.nvars(); ++i) v.push_back(Polynomial::variable(S, i));
    return Ideal(S, v);
  }
  if (d == 0) throw InvalidArgument("kernel_of_map needs a graded map");
  int nt = T.nvars(), ns = S.nvars();
  if (nt + ns > kMaxVars) throw InvalidArgument("kernel_of_map: too many variables");
  std::vector<std::string> names;
  std::vector<int> w;
  for (int i = 0; i < nt; ++i) names.push_back("a" + std::to_string(i)), w.push_back(1);
  for (int i = 0; i < ns; ++i) names.push_back("b" + std::to_string(i)), w.push_back(d);
  PolyRing G(T.field(), names, MonomialOrder::elimination(nt), w);
  Ideal graph(G);
  for (int i = 0; i < ns; ++i) {
    std::vector<Term> ts;
    std::vector<int> e(nt + ns, 0);
    e[nt + i] = 1;
    ts.push_back({G.make_monomial(e), 1});
    for (const auto& t : phi.images()[i].terms()) {
      std::vector<int> ex(nt + ns, 0);
      for (int j = 0; j < nt; ++j) ex[j] = t.m.exp(j);
      ts.push_back({G.make_monomial(ex), T.field().neg(t.c)});
    }
    graph.add(Polynomial(G, std::move(ts)));
  }
  GBOptions opt;
  opt.degree_cap = 40 * d;
  GroebnerBasis gb = groebner_basis(graph, G.order(), opt);
  std::vector<Polynomial> out;
  for (const auto& g : gb.basis()) {
    bool free = true;
    for (const auto& t : g.terms())
      for (int j = 0; j < nt && free; ++j)
        if (t.m.exp(j)) free = false;
    if (!free) continue;
    std::vector<Term> ts;
    for (const auto& t : g.terms()) {
      std::vector<int> ex(ns);
      for (int j = 0; j < ns; ++j) ex[j] = t.m.exp(nt + j);
      ts.push_back({S.make_monomial(ex), t.c});
    }
    out.emplace_back(S, std::move(ts));
  }
  return Ideal(S, minimal_generators(S, out));
}

bool ideal_contains(const Ideal& I, const Ideal& J) {
  return groebner_basis(I).contains(J);
}

bool ideals_equal(const Ideal& I, const Ideal& J) {
  return ideal_contains(I, J) && ideal_contains(J, I);
}

}  // namespace cmf
