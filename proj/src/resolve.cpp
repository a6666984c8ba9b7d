#include "cmf/resolve.hpp"

#include <algorithm>
#include <climits>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "cmf/budget.hpp"
#include "cmf/selfcheck.hpp"

namespace cmf {

namespace {

Vec poly_times_vec(const Polynomial& p, const Vec& v, const PrimeField& F) {
  Vec out;
  out.reserve(p.size() * v.size());
  for (const auto& a : p.terms())
    for (const auto& t : v) out.push_back({mono::mul(a.m, t.m), t.comp, F.mul(a.c, t.c)});
  return out;
}

Vec concat(Vec a, const Vec& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

int vec_degree(const ModuleSpace& S, const Vec& v) { return S.degree(v.front()); }

std::vector<Vec> modulus_multiples(const PolyRing& R, const std::vector<int>& twists,
                                   const Polynomial& f) {
  std::vector<Vec> out;
  if (f.is_zero()) return out;
  for (std::uint32_t k = 0; k < twists.size(); ++k) out.push_back(to_vec(f, k));
  (void)R;
  return out;
}

// Monomial bases per degree with an index lookup.
class DegreeBasis {
 public:
  explicit DegreeBasis(const PolyRing& R) : R_(R) {}
  const std::vector<Monomial>& mons(int d) {
    auto it = cache_.find(d);
    if (it == cache_.end()) {
      Entry e;
      if (d >= 0) e.mons = monomials_of_degree(R_, d);
      for (std::size_t i = 0; i < e.mons.size(); ++i) e.index[e.mons[i]] = i;
      it = cache_.emplace(d, std::move(e)).first;
    }
    return it->second.mons;
  }
  std::size_t size(int d) { return mons(d).size(); }
  std::size_t index(int d, const Monomial& m) {
    mons(d);
    return cache_.at(d).index.at(m);
  }

 private:
  struct Entry {
    std::vector<Monomial> mons;
    std::unordered_map<Monomial, std::size_t, MonoHash> index;
  };
  PolyRing R_;
  std::map<int, Entry> cache_;
};

}  // namespace

// ---------------------------------------------------------------- matrices

GradedMatrix::GradedMatrix(const PolyRing& R, std::vector<int> target, std::vector<int> source)
    : R_(R), target_(std::move(target)), source_(std::move(source)) {
  e_.assign(target_.size() * source_.size(), Polynomial(R_));
}

GradedMatrix::GradedMatrix(const PolyRing& R, std::vector<int> target, std::vector<int> source,
                           std::vector<Polynomial> entries)
    : R_(R), target_(std::move(target)), source_(std::move(source)), e_(std::move(entries)) {
  if (e_.size() != target_.size() * source_.size())
    throw ShapeMismatch("matrix entry count does not match its shape");
  for (const auto& p : e_)
    if (p.ring() != R_) throw RingMismatch("matrix entry from another ring");
}

GradedMatrix GradedMatrix::from_columns(const PolyRing& R, std::vector<int> target,
                                        const std::vector<Vec>& cols) {
  ModuleSpace S(R, target);
  std::vector<int> source;
  std::vector<std::vector<std::vector<Term>>> bycol;
  for (const auto& v0 : cols) {
    Vec v = S.canonical(v0);
    if (v.empty()) continue;
    source.push_back(vec_degree(S, v));
    std::vector<std::vector<Term>> entries(target.size());
    for (const auto& t : v) entries[t.comp].push_back({t.m, t.c});
    bycol.push_back(std::move(entries));
  }
  GradedMatrix M(R, target, source);
  for (std::size_t j = 0; j < bycol.size(); ++j)
    for (std::size_t i = 0; i < target.size(); ++i)
      if (!bycol[j][i].empty()) M.e_[i * source.size() + j] = Polynomial(R, std::move(bycol[j][i]), true);
  return M;
}

GradedMatrix GradedMatrix::identity(const PolyRing& R, std::vector<int> twists) {
  GradedMatrix M(R, twists, twists);
  for (std::size_t i = 0; i < twists.size(); ++i) M.set(i, i, Polynomial::constant(R, 1));
  return M;
}

void GradedMatrix::set(std::size_t i, std::size_t j, Polynomial p) {
  e_[i * cols() + j] = std::move(p);
}

Vec GradedMatrix::column(std::size_t j) const {
  Vec v;
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& t : at(i, j).terms())
      v.push_back({t.m, static_cast<std::uint32_t>(i), t.c});
  return ModuleSpace(R_, target_).canonical(std::move(v));
}

std::vector<Vec> GradedMatrix::columns() const {
  std::vector<Vec> out;
  ModuleSpace S(R_, target_);
  for (std::size_t j = 0; j < cols(); ++j) {
    Vec v;
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& t : at(i, j).terms())
        v.push_back({t.m, static_cast<std::uint32_t>(i), t.c});
    out.push_back(S.canonical(std::move(v)));
  }
  return out;
}

GradedMatrix GradedMatrix::operator*(const GradedMatrix& o) const {
  if (cols() != o.rows()) throw ShapeMismatch("matrix product shape mismatch");
  GradedMatrix P(R_, target_, o.source_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < o.cols(); ++j) {
      Polynomial s(R_);
      for (std::size_t k = 0; k < cols(); ++k)
        if (!at(i, k).is_zero() && !o.at(k, j).is_zero()) s += at(i, k) * o.at(k, j);
      P.set(i, j, std::move(s));
    }
  return P;
}

GradedMatrix GradedMatrix::transpose() const {
  std::vector<int> t, s;
  for (int a : source_) t.push_back(-a);
  for (int a : target_) s.push_back(-a);
  GradedMatrix T(R_, t, s);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) T.set(j, i, at(i, j));
  return T;
}

GradedMatrix GradedMatrix::shift(int a) const {
  GradedMatrix M = *this;
  for (auto& x : M.target_) x += a;
  for (auto& x : M.source_) x += a;
  return M;
}

GradedMatrix GradedMatrix::scaled(const Polynomial& f) const {
  GradedMatrix M = *this;
  for (auto& x : M.source_) x += f.degree();
  for (auto& p : M.e_) p = p * f;
  return M;
}

GradedMatrix GradedMatrix::select_columns(const std::vector<std::size_t>& js) const {
  std::vector<int> s;
  for (auto j : js) s.push_back(source_[j]);
  GradedMatrix M(R_, target_, s);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < js.size(); ++k) M.set(i, k, at(i, js[k]));
  return M;
}

GradedMatrix GradedMatrix::concat_columns(const GradedMatrix& o) const {
  if (target_ != o.target_) throw ShapeMismatch("column concatenation needs equal targets");
  std::vector<int> s = source_;
  s.insert(s.end(), o.source_.begin(), o.source_.end());
  GradedMatrix M(R_, target_, s);
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) M.set(i, j, at(i, j));
    for (std::size_t j = 0; j < o.cols(); ++j) M.set(i, cols() + j, o.at(i, j));
  }
  return M;
}

bool GradedMatrix::is_zero() const {
  for (const auto& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

bool GradedMatrix::is_homogeneous() const {
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) {
      const Polynomial& p = at(i, j);
      if (p.is_zero()) continue;
      if (!p.is_homogeneous() || p.degree() != source_[j] - target_[i]) return false;
    }
  return true;
}

bool GradedMatrix::has_unit_entry() const {
  for (const auto& p : e_)
    if (!p.is_zero() && p.is_constant()) return true;
  return false;
}

std::pair<int, int> GradedMatrix::entry_degree_range() const {
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& p : e_) {
    if (p.is_zero()) continue;
    int d = p.degree();
    if (!any) lo = hi = d;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    any = true;
  }
  return {lo, hi};
}

bool GradedMatrix::operator==(const GradedMatrix& o) const {
  return target_ == o.target_ && source_ == o.source_ && e_ == o.e_;
}

// ---------------------------------------------------------------- modules

GradedModulePresentation GradedModulePresentation::over_ambient() const {
  if (!over_quotient()) return *this;
  const PolyRing& R = ring();
  GradedMatrix fI = GradedMatrix::identity(R, generators()).scaled(modulus);
  return GradedModulePresentation(presentation.concat_columns(fI));
}

GradedModulePresentation cyclic_module(const Ideal& I) {
  const PolyRing& R = I.ring();
  std::vector<Vec> cols;
  for (const auto& g : I.gens()) cols.push_back(to_vec(g, 0));
  return GradedModulePresentation(GradedMatrix::from_columns(R, {0}, cols));
}

GradedModulePresentation free_module(const PolyRing& R, std::vector<int> twists) {
  return GradedModulePresentation(GradedMatrix(R, std::move(twists), {}));
}

// ---------------------------------------------------------------- kernels

std::vector<Vec> minimal_generators_mod(const ModuleSpace& S, const std::vector<Vec>& cols,
                                        const std::vector<Vec>& ambient,
                                        const GBOptions& opt) {
  std::vector<Vec> canon;
  int maxd = INT_MIN;
  for (const auto& v : cols) {
    Vec c = S.canonical(v);
    if (c.empty()) continue;
    maxd = std::max(maxd, vec_degree(S, c));
    canon.push_back(std::move(c));
  }
  if (canon.empty()) return {};
  GBOptions o = opt;
  o.max_degree = maxd;
  o.degree_cap = std::max(o.degree_cap, maxd);
  o.interreduce = false;
  o.skip_pair_block = -1;
  ModuleGB eng(S, o);
  for (const auto& a : ambient) eng.add_ambient(a);
  for (const auto& v : canon) eng.add_generator(v);
  eng.run();
  auto idx = eng.minimal_generators();
  std::sort(idx.begin(), idx.end());
  std::vector<Vec> out;
  for (auto k : idx) out.push_back(canon[k]);
  return out;
}

GradedMatrix kernel_mod(const GradedMatrix& M, const GradedMatrix& N,
                        const std::vector<Vec>& source_ambient, const GBOptions& opt) {
  const PolyRing& R = M.ring();
  std::size_t r = M.rows(), c = M.cols();
  if (N.cols() > 0 && N.target() != M.target())
    throw ShapeMismatch("kernel_mod: targets differ");
  std::vector<int> tw = M.target();
  tw.insert(tw.end(), M.source().begin(), M.source().end());
  std::vector<int> bl(r, 0);
  bl.resize(r + c, 1);
  ModuleSpace S(R, tw, bl);
  GBOptions o = opt;
  o.skip_pair_block = 1;
  o.interreduce = false;
  ModuleGB eng(S, o);
  auto cols = M.columns();
  for (std::size_t j = 0; j < c; ++j) {
    Vec v = cols[j];
    v.push_back({R.one(), static_cast<std::uint32_t>(r + j), 1});
    eng.add_ambient(v);
  }
  for (const auto& v : N.columns()) eng.add_ambient(v);
  eng.run();
  std::vector<Vec> ker;
  for (std::size_t i = 0; i < eng.size(); ++i) {
    const Vec& e = eng.element(i);
    if (e.front().comp < r) continue;
    Vec k;
    for (const auto& t : e) k.push_back({t.m, static_cast<std::uint32_t>(t.comp - r), t.c});
    ker.push_back(std::move(k));
  }
  ModuleSpace Src(R, M.source());
  auto gens = minimal_generators_mod(Src, ker, source_ambient, opt);
  return GradedMatrix::from_columns(R, M.source(), gens);
}

GradedMatrix syzygy_module(const GradedMatrix& M, const GBOptions& opt) {
  return kernel_mod(M, GradedMatrix(M.ring(), M.target(), {}), {}, opt);
}

GradedModulePresentation prune(const GradedModulePresentation& P) {
  const PolyRing& R = P.ring();
  const PrimeField& F = R.field();
  std::vector<int> tw = P.generators();
  std::vector<Vec> cols = P.presentation.columns();
  while (true) {
    // Lexicographic scan for a unit entry (row, then column).
    int pi = -1, pj = -1;
    Residue u = 0;
    std::vector<std::vector<std::pair<std::size_t, Residue>>> units(tw.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& t : cols[j])
        if (t.m.is_one()) units[t.comp].push_back({j, t.c});
    for (std::size_t i = 0; i < tw.size() && pi < 0; ++i)
      if (!units[i].empty()) {
        pi = static_cast<int>(i);
        pj = static_cast<int>(units[i].front().first);
        u = units[i].front().second;
      }
    if (pi < 0) break;
    ModuleSpace S(R, tw);
    const Vec pivot = cols[pj];
    Residue uinv = F.inv(u);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (static_cast<int>(k) == pj) continue;
      std::vector<Term> coef;
      for (const auto& t : cols[k])
        if (static_cast<int>(t.comp) == pi) coef.push_back({t.m, F.mul(t.c, uinv)});
      if (coef.empty()) continue;
      Polynomial q(R, coef);
      cols[k] = S.canonical(concat(cols[k], poly_times_vec(-q, pivot, F)));
    }
    cols.erase(cols.begin() + pj);
    tw.erase(tw.begin() + pi);
    for (auto& v : cols) {
      Vec w;
      for (const auto& t : v) {
        if (static_cast<int>(t.comp) == pi) continue;
        w.push_back({t.m, t.comp > static_cast<std::uint32_t>(pi) ? t.comp - 1 : t.comp, t.c});
      }
      v = std::move(w);
    }
  }
  ModuleSpace S(R, tw);
  auto gens = minimal_generators_mod(S, cols, modulus_multiples(R, tw, P.modulus));
  return GradedModulePresentation(GradedMatrix::from_columns(R, tw, gens), P.modulus);
}

// ---------------------------------------------------------------- resolutions

bool FreeResolution::minimal() const {
  for (const auto& d : maps)
    if (d.has_unit_entry()) return false;
  return true;
}

bool FreeResolution::is_complex() const {
  std::optional<GroebnerBasis> G;
  if (!modulus.is_zero()) G = groebner_basis(Ideal(ring, {modulus}));
  for (std::size_t k = 0; k + 1 < maps.size(); ++k) {
    GradedMatrix P = maps[k] * maps[k + 1];
    for (std::size_t i = 0; i < P.rows(); ++i)
      for (std::size_t j = 0; j < P.cols(); ++j) {
        const Polynomial& e = P.at(i, j);
        if (e.is_zero()) continue;
        if (!G || !G->contains(e)) return false;
      }
  }
  return true;
}

namespace {

// d^2 = 0, and the Hilbert function from the lead terms of the module
// equals the alternating Betti sum in each degree up to the check bound.
void verify_resolution(const GradedModulePresentation& P, const FreeResolution& F) {
  auto& counts = selfcheck_counts();
  selfcheck_require(F.is_complex(), "resolution is not a complex");
  ++counts.complexes;
  const PolyRing& R = F.ring;
  int n = R.nvars();
  BettiTable B = betti_table(F);
  HilbertCounter C(P);
  int lo = 0;
  for (const auto& [ij, b] : B.entries()) lo = std::min(lo, ij.second);
  for (int d = lo; d <= selfcheck_hilbert_degree(); ++d) {
    long long h = 0;
    for (const auto& [ij, b] : B.entries()) {
      if (d < ij.second) continue;
      long long sign = ij.first % 2 ? -1 : 1;
      h += sign * b * static_cast<long long>(binomial(d - ij.second + n - 1, n - 1));
    }
    selfcheck_require(h == C.value(d), "Hilbert function disagrees with the Betti numbers");
  }
  ++counts.hilbert;
}

}  // namespace

FreeResolution minimal_free_resolution(const GradedModulePresentation& P, int max_steps,
                                       const GBOptions& opt) {
  const PolyRing& R = P.ring();
  if (!P.presentation.is_homogeneous()) throw NotHomogeneous("presentation is not homogeneous");
  if (max_steps < 0) max_steps = R.nvars() + 1;
  auto Pm = prune(P.over_ambient());
  FreeResolution F(R);
  F.twists.push_back(Pm.generators());
  GradedMatrix d = Pm.presentation;
  while (d.cols() > 0) {
    check_budget();
    if (static_cast<int>(F.maps.size()) >= max_steps)
      throw StepCapExceeded("resolution longer than " + std::to_string(max_steps) + " steps");
    F.maps.push_back(d);
    F.twists.push_back(d.source());
    d = syzygy_module(d, opt);
  }
  if (selfcheck_active()) verify_resolution(Pm, F);
  return F;
}

FreeResolution quotient_resolution(const GradedModulePresentation& P, const Polynomial& f,
                                   int max_steps, const GBOptions& opt) {
  const PolyRing& R = P.ring();
  if (f.is_zero() || !f.is_homogeneous()) throw InvalidArgument("modulus must be a nonzero form");
  if (P.over_quotient() && P.modulus != f) throw RingMismatch("presentation over another quotient");
  {
    ModuleSpace S(R, P.generators());
    ModuleGB eng(S, opt);
    for (const auto& v : P.presentation.columns()) eng.add_ambient(v);
    eng.run();
    for (const auto& v : modulus_multiples(R, P.generators(), f))
      if (!eng.reduces_to_zero(v)) throw NotAnnihilated("the form does not annihilate the module");
  }
  auto Pm = prune(GradedModulePresentation(P.presentation, f));
  FreeResolution F(R);
  F.modulus = f;
  F.twists.push_back(Pm.generators());
  GradedMatrix d = Pm.presentation;
  while (d.cols() > 0 && static_cast<int>(F.maps.size()) < max_steps) {
    check_budget();
    F.maps.push_back(d);
    F.twists.push_back(d.source());
    GradedMatrix fI = GradedMatrix::identity(R, d.target()).scaled(f);
    d = kernel_mod(d, fI, modulus_multiples(R, d.source(), f), opt);
  }
  if (selfcheck_active()) {
    selfcheck_require(F.is_complex(), "quotient resolution is not a complex");
    ++selfcheck_counts().complexes;
  }
  return F;
}

FreeResolution minimize(const FreeResolution& F0) {
  FreeResolution F = F0;
  const PolyRing& R = F.ring;
  const PrimeField& Fp = R.field();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < F.maps.size() && !changed; ++k) {
      GradedMatrix& d = F.maps[k];
      for (std::size_t i = 0; i < d.rows() && !changed; ++i)
        for (std::size_t j = 0; j < d.cols() && !changed; ++j) {
          const Polynomial& e = d.at(i, j);
          if (e.is_zero() || !e.is_constant()) continue;
          Residue uinv = Fp.inv(e.lead_coeff());
          // d' = d - d[:,j] d[i,:] / u, then drop row i and column j.
          GradedMatrix nd(R, {}, {});
          std::vector<int> t, s;
          for (std::size_t a = 0; a < d.rows(); ++a)
            if (a != i) t.push_back(d.target()[a]);
          for (std::size_t b = 0; b < d.cols(); ++b)
            if (b != j) s.push_back(d.source()[b]);
          nd = GradedMatrix(R, t, s);
          std::size_t ra = 0;
          for (std::size_t a = 0; a < d.rows(); ++a) {
            if (a == i) continue;
            std::size_t cb = 0;
            for (std::size_t b = 0; b < d.cols(); ++b) {
              if (b == j) continue;
              Polynomial v = d.at(a, b);
              if (!d.at(a, j).is_zero() && !d.at(i, b).is_zero())
                v -= (d.at(a, j) * d.at(i, b)).scale(uinv);
              nd.set(ra, cb++, std::move(v));
            }
            ++ra;
          }
          if (k > 0) {  // previous map loses column i
            GradedMatrix& p = F.maps[k - 1];
            std::vector<std::size_t> keep;
            for (std::size_t b = 0; b < p.cols(); ++b)
              if (b != i) keep.push_back(b);
            p = p.select_columns(keep);
          }
          if (k + 1 < F.maps.size()) {  // next map loses row j
            GradedMatrix& n = F.maps[k + 1];
            std::vector<int> tt;
            for (std::size_t a = 0; a < n.rows(); ++a)
              if (a != j) tt.push_back(n.target()[a]);
            GradedMatrix nn(R, tt, n.source());
            std::size_t r2 = 0;
            for (std::size_t a = 0; a < n.rows(); ++a) {
              if (a == j) continue;
              for (std::size_t b = 0; b < n.cols(); ++b) nn.set(r2, b, n.at(a, b));
              ++r2;
            }
            n = nn;
          }
          d = nd;
          F.twists[k] = d.target();
          F.twists[k + 1] = d.source();
          changed = true;
        }
    }
  }
  while (!F.maps.empty() && F.maps.back().cols() == 0) {
    F.maps.pop_back();
    F.twists.pop_back();
  }
  return F;
}

// ---------------------------------------------------------------- Betti

void BettiTable::add(int i, int j, long long b) {
  if (b == 0) return;
  b_[{i, j}] += b;
  if (b_[{i, j}] == 0) b_.erase({i, j});
}

long long BettiTable::at(int i, int j) const {
  auto it = b_.find({i, j});
  return it == b_.end() ? 0 : it->second;
}

int BettiTable::max_index() const {
  int m = -1;
  for (const auto& [k, v] : b_) m = std::max(m, k.first);
  return m;
}

std::vector<long long> BettiTable::ranks() const {
  std::vector<long long> r(max_index() + 1, 0);
  for (const auto& [k, v] : b_) r[k.first] += v;
  return r;
}

std::vector<long long> BettiTable::row(int rr) const {
  std::vector<long long> out(max_index() + 1, 0);
  for (const auto& [k, v] : b_)
    if (k.second - k.first == rr) out[k.first] = v;
  return out;
}

std::string BettiTable::render() const {
  if (b_.empty()) return "(zero)\n";
  int imax = max_index();
  int rlo = INT_MAX, rhi = INT_MIN;
  for (const auto& [k, v] : b_) {
    rlo = std::min(rlo, k.second - k.first);
    rhi = std::max(rhi, k.second - k.first);
  }
  std::size_t w = 1;
  for (const auto& [k, v] : b_) w = std::max(w, std::to_string(v).size());
  for (auto v : ranks()) w = std::max(w, std::to_string(v).size());
  auto cell = [&](const std::string& s) { return std::string(w + 1 - s.size(), ' ') + s; };
  std::ostringstream out;
  out << "      ";
  for (int i = 0; i <= imax; ++i) out << cell(std::to_string(i));
  out << "\ntotal:";
  for (auto v : ranks()) out << cell(std::to_string(v));
  out << "\n";
  for (int r = rlo; r <= rhi; ++r) {
    std::string lab = std::to_string(r) + ":";
    out << std::string(6 - std::min<std::size_t>(6, lab.size()), ' ') << lab;
    for (int i = 0; i <= imax; ++i) {
      long long v = at(i, i + r);
      out << cell(v ? std::to_string(v) : ".");
    }
    out << "\n";
  }
  return out.str();
}

std::string BettiTable::to_json(const std::vector<std::vector<int>>& twists,
                                std::optional<int> periodic_from) const {
  nlohmann::ordered_json j;
  j["betti"] = nlohmann::ordered_json::array();
  for (const auto& [k, v] : b_)
    j["betti"].push_back({{"i", k.first}, {"j", k.second}, {"b", v}});
  j["twists"] = twists;
  if (periodic_from) j["periodic_from"] = *periodic_from;
  else j["periodic_from"] = nullptr;
  return j.dump();
}

BettiTable betti_table(const FreeResolution& F) {
  if (!F.minimal()) throw NotMinimal("resolution has nonzero constant entries");
  BettiTable B;
  for (std::size_t i = 0; i < F.twists.size(); ++i)
    for (int a : F.twists[i]) B.add(static_cast<int>(i), a, 1);
  return B;
}

std::string resolution_json(const FreeResolution& F) {
  return betti_table(F).to_json(F.twists, F.periodic_from);
}

// ---------------------------------------------------------------- Hilbert

namespace {

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) r[i + j] += x * y;
  for (auto it = r.begin(); it != r.end();)
    it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

void lp_add(LaurentPoly& a, const LaurentPoly& b, int shift, long long sign) {
  for (const auto& [i, x] : b) {
    a[i + shift] += sign * x;
    if (a[i + shift] == 0) a.erase(i + shift);
  }
}

// C(x + k - 1, k - 1) as a polynomial in x, k >= 1: number of monomials of
// degree x in k variables for x >= 0.
__int128 binom_shifted(long long x, int k) {
  __int128 num = 1;
  for (int i = 1; i < k; ++i) num = num * (x + i) / i;
  return num;
}

std::vector<Monomial> minimalize_monomials(std::vector<Monomial> g) {
  std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.w[0] != b.w[0] ? a.w[0] < b.w[0] : a.w[1] < b.w[1];
  });
  std::vector<Monomial> out;
  for (const auto& m : g) {
    bool red = false;
    for (const auto& o : out)
      if (mono::divides(o, m)) {
        red = true;
        break;
      }
    if (!red) out.push_back(m);
  }
  return out;
}

LaurentPoly numerator_rec(const PolyRing& R, std::vector<Monomial> g) {
  check_budget();
  g = minimalize_monomials(std::move(g));
  LaurentPoly one{{0, 1}};
  if (g.empty()) return one;
  bool coprime = true;
  for (std::size_t i = 0; i < g.size() && coprime; ++i)
    for (std::size_t j = i + 1; j < g.size() && coprime; ++j)
      if (!mono::coprime(g[i], g[j])) coprime = false;
  if (coprime) {
    LaurentPoly r = one;
    for (const auto& m : g) r = lp_mul(r, LaurentPoly{{0, 1}, {m.deg, -1}});
    return r;
  }
  int n = R.nvars();
  int best = -1, count = 0;
  for (int v = 0; v < n; ++v) {
    int c = 0;
    for (const auto& m : g)
      if (m.exp(v)) ++c;
    if (c > count) {
      count = c;
      best = v;
    }
  }
  int e = kMaxExponent;
  for (const auto& m : g)
    if (m.exp(best)) e = std::min(e, m.exp(best));
  Monomial p = R.var(best, e);
  std::vector<Monomial> plus, colon;
  for (const auto& m : g) {
    if (!mono::divides(p, m)) plus.push_back(m);
    if (m.exp(best) >= e) colon.push_back(mono::quo(m, p));
    else colon.push_back(m);
  }
  plus.push_back(p);
  LaurentPoly r = numerator_rec(R, plus);
  lp_add(r, numerator_rec(R, colon), p.deg, 1);
  return r;
}

}  // namespace

LaurentPoly monomial_numerator(const PolyRing& R, std::vector<Monomial> gens) {
  return numerator_rec(R, std::move(gens));
}

long long HilbertData::series_value(int d) const {
  __int128 s = 0;
  for (const auto& [j, c] : numerator)
    if (d - j >= 0) s += static_cast<__int128>(c) * binom_shifted(d - j, nvars);
  return static_cast<long long>(s);
}

long long HilbertData::polynomial_value(long long d) const {
  // sum_j c_j * C(d - j + n - 1, n - 1) as a polynomial in d
  __int128 s = 0;
  for (const auto& [j, c] : numerator) {
    __int128 num = 1, den = 1;
    for (int i = 1; i < nvars; ++i) {
      num *= (d - j + i);
      den *= i;
    }
    s += static_cast<__int128>(c) * (num / den);
  }
  return static_cast<long long>(s);
}

int HilbertData::codim() const {
  LaurentPoly q = numerator;
  int c = 0;
  while (!q.empty()) {
    long long at1 = 0;
    for (const auto& [j, x] : q) at1 += x;
    if (at1 != 0) break;
    // divide by (1 - t): q = (1 - t) * r, r_k = sum_{i <= k} q_i
    LaurentPoly r;
    long long acc = 0;
    int lo = q.begin()->first, hi = q.rbegin()->first;
    for (int k = lo; k < hi; ++k) {
      auto it = q.find(k);
      if (it != q.end()) acc += it->second;
      if (acc) r[k] = acc;
    }
    q = r;
    ++c;
  }
  return c;
}

LaurentPoly HilbertData::reduced_numerator() const {
  LaurentPoly q = numerator;
  for (int c = codim(); c > 0; --c) {
    LaurentPoly r;
    long long acc = 0;
    int lo = q.begin()->first, hi = q.rbegin()->first;
    for (int k = lo; k < hi; ++k) {
      auto it = q.find(k);
      if (it != q.end()) acc += it->second;
      if (acc) r[k] = acc;
    }
    q = r;
  }
  return q;
}

long long HilbertData::degree() const {
  long long s = 0;
  for (const auto& [j, x] : reduced_numerator()) s += x;
  return s;
}

HilbertCounter::HilbertCounter(const GradedModulePresentation& P, const GBOptions& opt)
    : R_(P.ring()), twists_(P.generators()) {
  ModuleSpace S(R_, twists_);
  ModuleGB eng(S, opt);
  for (const auto& v : P.presentation.columns()) eng.add_ambient(v);
  for (const auto& v : modulus_multiples(R_, twists_, P.modulus)) eng.add_ambient(v);
  eng.run();
  leads_.assign(twists_.size(), {});
  for (std::size_t i = 0; i < eng.size(); ++i) {
    const auto& t = eng.element(i).front();
    leads_[t.comp].push_back(t.m);
  }
  for (auto& L : leads_) L = minimalize_monomials(std::move(L));
}

long long HilbertCounter::value(int d) const {
  long long total = 0;
  for (std::size_t k = 0; k < twists_.size(); ++k) {
    int e = d - twists_[k];
    if (e < 0) continue;
    for (const auto& m : monomials_of_degree(R_, e)) {
      bool in = false;
      for (const auto& l : leads_[k])
        if (mono::divides(l, m)) {
          in = true;
          break;
        }
      if (!in) ++total;
    }
  }
  return total;
}

HilbertData HilbertCounter::series() const {
  HilbertData H;
  H.nvars = R_.nvars();
  for (std::size_t k = 0; k < twists_.size(); ++k)
    lp_add(H.numerator, monomial_numerator(R_, leads_[k]), twists_[k], 1);
  return H;
}

HilbertData hilbert(const GradedModulePresentation& P) { return HilbertCounter(P).series(); }

LaurentPoly numerator_from_betti(const BettiTable& B) {
  LaurentPoly r;
  for (const auto& [k, v] : B.entries()) {
    r[k.second] += (k.first % 2 ? -v : v);
    if (r[k.second] == 0) r.erase(k.second);
  }
  return r;
}

// ---------------------------------------------------------------- duality

DualComplex::DualComplex(FreeResolution F) : F_(std::move(F)) {
  if (!F_.modulus.is_zero()) throw InvalidArgument("duality needs a resolution over R");
}

long long DualComplex::cdim(int k, int e) const {
  if (k < 0 || k >= static_cast<int>(F_.twists.size())) return 0;
  long long s = 0;
  int n = F_.ring.nvars();
  for (int a : F_.twists[k])
    if (e + a >= 0) s += static_cast<long long>(binom_shifted(e + a, n));
  return s;
}

long long DualComplex::rank_of(int k, int e) {
  if (k < 0 || k >= static_cast<int>(F_.maps.size())) return 0;
  auto key = std::make_pair(k, e);
  if (auto it = ranks_.find(key); it != ranks_.end()) return it->second;
  const GradedMatrix& d = F_.maps[k];  // F_{k+1} -> F_k
  const PrimeField& Fp = F_.ring.field();
  DegreeBasis B(F_.ring);
  std::vector<std::size_t> roff, coff;
  std::size_t nr = 0, nc = 0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    roff.push_back(nr);
    nr += B.size(e + d.target()[i]);
  }
  for (std::size_t j = 0; j < d.cols(); ++j) {
    coff.push_back(nc);
    nc += B.size(e + d.source()[j]);
  }
  long long rk = 0;
  if (nr && nc) {
    DenseMatrix A(nr, nc);
    for (std::size_t i = 0; i < d.rows(); ++i) {
      int di = e + d.target()[i];
      if (di < 0) continue;
      const auto& mons = B.mons(di);
      for (std::size_t j = 0; j < d.cols(); ++j) {
        const Polynomial& p = d.at(i, j);
        if (p.is_zero()) continue;
        int dj = e + d.source()[j];
        for (std::size_t a = 0; a < mons.size(); ++a)
          for (const auto& t : p.terms()) {
            std::size_t col = coff[j] + B.index(dj, mono::mul(mons[a], t.m));
            Residue& x = A.at(roff[i] + a, col);
            x = Fp.add(x, t.c);
          }
      }
    }
    check_budget();
    rk = static_cast<long long>(rank(A, Fp));
  }
  ranks_[key] = rk;
  return rk;
}

long long DualComplex::ext_dim(int i, int e) {
  return cdim(i, e) - rank_of(i, e) - rank_of(i - 1, e);
}

SheafCohomology::SheafCohomology(const GradedModulePresentation& P, const GBOptions& opt)
    : n_(P.ring().nvars() - 1),
      counter_(P, opt),
      dual_(minimal_free_resolution(P.over_ambient(), -1, opt)) {}

long long SheafCohomology::local(int j, int d) {
  return dual_.ext_dim(n_ + 1 - j, -d - n_ - 1);
}

long long SheafCohomology::h(int i, int d) {
  if (i < 0 || i > n_) return 0;
  if (i >= 1) return local(i + 1, d);
  return module_dim(d) - local(0, d) + local(1, d);
}

int SheafCohomology::regularity() const {
  const auto& F = dual_.resolution();
  int r = INT_MIN;
  for (std::size_t k = 0; k < F.twists.size(); ++k)
    for (int a : F.twists[k]) r = std::max(r, a - static_cast<int>(k));
  return r == INT_MIN ? 0 : r;
}

long long sheaf_cohomology(const GradedModulePresentation& P, int i, int d) {
  SheafCohomology S(P);
  return S.h(i, d);
}

// ---------------------------------------------------------------- Hom, Ext

GradedModulePresentation hom_module(const GradedModulePresentation& P0,
                                    const GradedModulePresentation& Q0,
                                    const GBOptions& opt) {
  auto P = P0.over_ambient();
  auto Q = Q0.over_ambient();
  const PolyRing& R = P.ring();
  const auto& a = P.generators();
  const auto& c = P.presentation.source();
  const auto& b = Q.generators();
  std::size_t r0 = a.size(), r1 = c.size(), g0 = b.size();
  std::vector<int> tw0, tw1;
  for (std::size_t k = 0; k < r0; ++k)
    for (std::size_t i = 0; i < g0; ++i) tw0.push_back(b[i] - a[k]);
  for (std::size_t l = 0; l < r1; ++l)
    for (std::size_t i = 0; i < g0; ++i) tw1.push_back(b[i] - c[l]);
  GradedMatrix Phi(R, tw1, tw0);
  for (std::size_t l = 0; l < r1; ++l)
    for (std::size_t k = 0; k < r0; ++k) {
      const Polynomial& p = P.presentation.at(k, l);
      if (p.is_zero()) continue;
      for (std::size_t i = 0; i < g0; ++i) Phi.set(l * g0 + i, k * g0 + i, p);
    }
  auto qcols = Q.presentation.columns();
  auto spread = [&](std::size_t blocks) {
    std::vector<Vec> out;
    for (std::size_t k = 0; k < blocks; ++k)
      for (const auto& q : qcols) {
        Vec v;
        for (const auto& t : q) v.push_back({t.m, static_cast<std::uint32_t>(k * g0 + t.comp), t.c});
        out.push_back(std::move(v));
      }
    return out;
  };
  GradedMatrix N1 = GradedMatrix::from_columns(R, tw1, spread(r1));
  GradedMatrix K = kernel_mod(Phi, N1, {}, opt);
  GradedMatrix Q0m = GradedMatrix::from_columns(R, tw0, spread(r0));
  GradedMatrix rel = kernel_mod(K, Q0m, {}, opt);
  return prune(GradedModulePresentation(rel));
}

GradedModulePresentation tensor_module(const GradedModulePresentation& P,
                                       const GradedModulePresentation& Q) {
  const PolyRing& R = P.ring();
  Polynomial f = P.over_quotient() ? P.modulus : Q.modulus;
  const auto& a = P.generators();
  const auto& b = Q.generators();
  std::size_t r0 = a.size(), g0 = b.size();
  std::vector<int> tw;
  for (std::size_t k = 0; k < r0; ++k)
    for (std::size_t i = 0; i < g0; ++i) tw.push_back(a[k] + b[i]);
  std::vector<Vec> cols;
  for (const auto& p : P.presentation.columns())
    for (std::size_t i = 0; i < g0; ++i) {
      Vec v;
      for (const auto& t : p) v.push_back({t.m, static_cast<std::uint32_t>(t.comp * g0 + i), t.c});
      cols.push_back(std::move(v));
    }
  for (std::size_t k = 0; k < r0; ++k)
    for (const auto& q : Q.presentation.columns()) {
      Vec v;
      for (const auto& t : q) v.push_back({t.m, static_cast<std::uint32_t>(k * g0 + t.comp), t.c});
      cols.push_back(std::move(v));
    }
  return GradedModulePresentation(GradedMatrix::from_columns(R, tw, cols), f);
}

GradedModulePresentation ext_module(const GradedModulePresentation& P, int j,
                                    const GBOptions& opt) {
  const PolyRing& R = P.ring();
  FreeResolution F = minimal_free_resolution(P, -1, opt);
  if (j < 0 || j >= static_cast<int>(F.twists.size())) return free_module(R, {});
  std::vector<int> cj;
  for (int a : F.twists[j]) cj.push_back(-a);
  GradedMatrix Z = j < static_cast<int>(F.maps.size())
                       ? syzygy_module(F.maps[j].transpose(), opt)
                       : GradedMatrix::identity(R, cj);
  GradedMatrix B = j >= 1 ? F.maps[j - 1].transpose() : GradedMatrix(R, cj, {});
  GradedMatrix rel = kernel_mod(Z, B, {}, opt);
  return prune(GradedModulePresentation(rel));
}

namespace {

GradedModulePresentation power_ideal_module(const PolyRing& R, int t) {
  int n = R.nvars();
  std::vector<int> tw(n, t);
  std::vector<Vec> cols;
  const PrimeField& F = R.field();
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      cols.push_back({{R.var(k, t), static_cast<std::uint32_t>(i), 1},
                      {R.var(i, t), static_cast<std::uint32_t>(k), F.neg(1)}});
  return GradedModulePresentation(GradedMatrix::from_columns(R, tw, cols));
}

}  // namespace

GradedModulePresentation saturate_module(const GradedModulePresentation& P, int lo, int hi,
                                         int max_t, const GBOptions& opt) {
  const PolyRing& R = P.ring();
  std::vector<long long> prev;
  std::optional<GradedModulePresentation> last;
  for (int t = 1; t <= max_t; ++t) {
    auto H = hom_module(power_ideal_module(R, t), P, opt);
    HilbertCounter C(H, opt);
    std::vector<long long> vals;
    for (int d = lo; d <= hi; ++d) vals.push_back(C.value(d));
    if (last && vals == prev) return *last;
    prev = std::move(vals);
    last = std::move(H);
  }
  throw NoStabilization("section module did not stabilize by t = " + std::to_string(max_t));
}

GradedModulePresentation saturate_module(const GradedModulePresentation& P) {
  FreeResolution F = minimal_free_resolution(P);
  int reg = 0;
  for (std::size_t k = 0; k < F.twists.size(); ++k)
    for (int a : F.twists[k]) reg = std::max(reg, a - static_cast<int>(k));
  return saturate_module(P, -2 * reg, 2 * reg);
}

Ideal annihilator(const GradedModulePresentation& P0, const GBOptions& opt) {
  auto P = P0.over_ambient();
  const PolyRing& R = P.ring();
  const auto& a = P.generators();
  std::size_t m = a.size();
  if (m == 0) return Ideal(R, {Polynomial::constant(R, 1)});
  std::vector<int> tw;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) tw.push_back(a[i] - a[k]);
  Vec diag;
  for (std::size_t k = 0; k < m; ++k)
    diag.push_back({R.one(), static_cast<std::uint32_t>(k * m + k), 1});
  GradedMatrix M = GradedMatrix::from_columns(R, tw, {diag});
  std::vector<Vec> ncols;
  for (std::size_t k = 0; k < m; ++k)
    for (const auto& p : P.presentation.columns()) {
      Vec v;
      for (const auto& t : p) v.push_back({t.m, static_cast<std::uint32_t>(k * m + t.comp), t.c});
      ncols.push_back(std::move(v));
    }
  GradedMatrix N = GradedMatrix::from_columns(R, tw, ncols);
  GradedMatrix K = kernel_mod(M, N, {}, opt);
  Ideal I(R);
  for (std::size_t j = 0; j < K.cols(); ++j) I.add(K.at(0, j));
  return I;
}

// ---------------------------------------------------------------- factorizations

bool MatrixFactorization::verify() const {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows()) return false;
  auto check = [&](const GradedMatrix& P) {
    for (std::size_t i = 0; i < P.rows(); ++i)
      for (std::size_t j = 0; j < P.cols(); ++j)
        if (P.at(i, j) != (i == j ? f : Polynomial(f.ring()))) return false;
    return true;
  };
  return check(A * B) && check(B * A);
}

GradedMatrix complete_factorization(const GradedMatrix& A, const Polynomial& f) {
  const PolyRing& R = A.ring();
  const PrimeField& Fp = R.field();
  std::size_t m = A.rows();
  if (A.cols() != m) throw ShapeMismatch("matrix factorization needs a square matrix");
  int delta = f.degree();
  std::vector<int> src;
  for (int t : A.target()) src.push_back(t + delta);
  GradedMatrix B(R, A.source(), src);
  DegreeBasis DB(R);
  for (std::size_t j = 0; j < m; ++j) {
    int D = A.target()[j] + delta;  // degree of f e_j
    std::vector<std::size_t> uoff, eoff;
    std::size_t nu = 0, ne = 0;
    for (std::size_t k = 0; k < m; ++k) {
      uoff.push_back(nu);
      int dk = D - A.source()[k];
      nu += dk >= 0 ? DB.size(dk) : 0;
    }
    for (std::size_t i = 0; i < m; ++i) {
      eoff.push_back(ne);
      int di = D - A.target()[i];
      ne += di >= 0 ? DB.size(di) : 0;
    }
    DenseMatrix M(ne, nu);
    for (std::size_t k = 0; k < m; ++k) {
      int dk = D - A.source()[k];
      if (dk < 0) continue;
      const auto& mons = DB.mons(dk);
      for (std::size_t i = 0; i < m; ++i) {
        const Polynomial& p = A.at(i, k);
        if (p.is_zero()) continue;
        int di = D - A.target()[i];
        for (std::size_t u = 0; u < mons.size(); ++u)
          for (const auto& t : p.terms()) {
            Residue& x = M.at(eoff[i] + DB.index(di, mono::mul(mons[u], t.m)), uoff[k] + u);
            x = Fp.add(x, t.c);
          }
      }
    }
    std::vector<Residue> rhs(ne, 0);
    int dj = D - A.target()[j];
    for (const auto& t : f.terms()) rhs[eoff[j] + DB.index(dj, t.m)] = t.c;
    std::vector<Residue> x;
    if (!solve(M, rhs, Fp, x)) throw LiftFailure("no matrix B with A*B = f*I");
    for (std::size_t k = 0; k < m; ++k) {
      int dk = D - A.source()[k];
      if (dk < 0) continue;
      const auto& mons = DB.mons(dk);
      std::vector<Term> ts;
      for (std::size_t u = 0; u < mons.size(); ++u)
        if (x[uoff[k] + u]) ts.push_back({mons[u], x[uoff[k] + u]});
      B.set(k, j, Polynomial(R, std::move(ts), true));
    }
  }
  return B;
}

namespace {

std::pair<std::vector<int>, std::vector<int>> shape(const GradedMatrix& d, int shift) {
  std::vector<int> t = d.target(), s = d.source();
  for (auto& x : t) x += shift;
  for (auto& x : s) x += shift;
  std::sort(t.begin(), t.end());
  std::sort(s.begin(), s.end());
  return {t, s};
}

}  // namespace

MatrixFactorization extract_matrix_factorization(FreeResolution& F) {
  if (F.modulus.is_zero()) throw InvalidArgument("periodicity needs a quotient resolution");
  const Polynomial& f = F.modulus;
  int delta = f.degree();
  std::size_t L = F.maps.size();
  for (std::size_t s = 1; s + 3 <= L; ++s) {
    const GradedMatrix& d0 = F.maps[s - 1];
    const GradedMatrix& d1 = F.maps[s];
    if (d0.rows() != d0.cols() || d1.rows() != d1.cols() || d0.rows() != d1.rows()) continue;
    if (shape(d0, delta) != shape(F.maps[s + 1], 0)) continue;
    if (shape(d1, delta) != shape(F.maps[s + 2], 0)) continue;
    F.periodic_from = static_cast<int>(s);
    // The map with the lower maximal entry degree becomes A.
    const GradedMatrix& A0 = d0.entry_degree_range().second <= d1.entry_degree_range().second ? d0 : d1;
    int lo = *std::min_element(A0.target().begin(), A0.target().end());
    GradedMatrix A = A0.shift(-lo);
    GradedMatrix B = complete_factorization(A, f);
    MatrixFactorization mf{f, A, B};
    if (!mf.verify()) throw LiftFailure("lifted pair does not satisfy A*B = B*A = f*I");
    if (selfcheck_active()) ++selfcheck_counts().factorizations;
    return mf;
  }
  throw NotPeriodic("no periodic window within " + std::to_string(L) + " steps");
}

// ---------------------------------------------------------------- text I/O

void write_matrix(std::ostream& out, const GradedMatrix& M) {
  out << "matrix " << M.rows() << " " << M.cols() << "\n";
  out << "target";
  for (int a : M.target()) out << " " << a;
  out << "\nsource";
  for (int a : M.source()) out << " " << a;
  out << "\n";
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out << print_poly(M.at(i, j)) << "\n";
}

GradedMatrix read_matrix(std::istream& in, const PolyRing& R) {
  std::string line, word;
  int lineno = 1;
  std::getline(in, line);
  std::istringstream h(line);
  std::size_t r = 0, c = 0;
  if (!(h >> word >> r >> c) || word != "matrix") throw SyntaxError("expected 'matrix r c'", lineno, 1);
  auto read_twists = [&](const char* tag, std::size_t n) {
    ++lineno;
    std::getline(in, line);
    std::istringstream s(line);
    std::vector<int> tw;
    if (!(s >> word) || word != tag) throw SyntaxError(std::string("expected '") + tag + "'", lineno, 1);
    int a;
    while (s >> a) tw.push_back(a);
    if (tw.size() != n) throw SyntaxError("twist count mismatch", lineno, 1);
    return tw;
  };
  auto t = read_twists("target", r);
  auto s = read_twists("source", c);
  std::vector<Polynomial> e;
  for (std::size_t k = 0; k < r * c; ++k) {
    ++lineno;
    if (!std::getline(in, line)) throw SyntaxError("missing matrix entries", lineno, 1);
    e.push_back(parse_poly(R, line, lineno));
  }
  return GradedMatrix(R, t, s, std::move(e));
}

}  // namespace cmf
