#include "cmf/gbengine.hpp"

#include <algorithm>

#include "cmf/budget.hpp"
#include "cmf/selfcheck.hpp"

namespace cmf {

ModuleSpace::ModuleSpace(const PolyRing& ring, std::vector<int> tw,
                         std::vector<int> bl, bool pos_over_term)
    : R(ring), twists(std::move(tw)), block(std::move(bl)), pot(pos_over_term) {
  if (!block.empty() && block.size() != twists.size())
    throw InvalidArgument("block vector length mismatch");
}

int ModuleSpace::cmp(const Monomial& a, std::uint32_t ca, const Monomial& b,
                     std::uint32_t cb) const {
  int da = a.deg + twists[ca], db = b.deg + twists[cb];
  if (da != db) return da > db ? 1 : -1;
  int ba = block_of(ca), bb = block_of(cb);
  if (ba != bb) return ba < bb ? 1 : -1;
  if (pot) {
    if (ca != cb) return ca < cb ? 1 : -1;
    return R.cmp(a, b);
  }
  int c = R.cmp(a, b);
  if (c) return c;
  if (ca != cb) return ca < cb ? 1 : -1;
  return 0;
}

Vec ModuleSpace::canonical(Vec v) const {
  for (const auto& t : v)
    if (t.comp >= twists.size()) throw InvalidArgument("component out of range");
  std::sort(v.begin(), v.end(),
            [&](const ModTerm& a, const ModTerm& b) { return cmp(a, b) > 0; });
  const PrimeField& F = R.field();
  Vec out;
  out.reserve(v.size());
  for (const auto& t : v) {
    if (!out.empty() && out.back().m == t.m && out.back().comp == t.comp) {
      out.back().c = F.add(out.back().c, t.c);
      if (!out.back().c) out.pop_back();
      continue;
    }
    Residue c = t.c % F.p();
    if (c) out.push_back({t.m, t.comp, c});
  }
  return out;
}

bool ModuleSpace::homogeneous(const Vec& v) const {
  for (const auto& t : v)
    if (degree(t) != degree(v.front())) return false;
  return true;
}

ModuleGB::ModuleGB(ModuleSpace S, GBOptions opt)
    : S_(std::move(S)), opt_(opt), by_comp_(S_.rank()) {
  product_ok_ = opt_.product_criterion && S_.rank() == 1;
}

void ModuleGB::add_ambient(const Vec& v) {
  Vec c = S_.canonical(v);
  if (c.empty()) return;
  if (!S_.homogeneous(c)) throw NotHomogeneous("module element is not homogeneous");
  int d = S_.degree(c.front());
  inputs_[d].push_back({std::move(c), d, false, 0});
}

void ModuleGB::add_generator(const Vec& v) {
  std::size_t idx = n_generators_++;
  Vec c = S_.canonical(v);
  if (c.empty()) return;
  if (!S_.homogeneous(c)) throw NotHomogeneous("module element is not homogeneous");
  int d = S_.degree(c.front());
  inputs_[d].push_back({std::move(c), d, true, idx});
}

ModuleGB::Table& ModuleGB::table(int degree) { return tables_[degree]; }

std::uint32_t ModuleGB::lookup(Table& T, const Monomial& m, std::uint32_t comp) {
  Key k{m, comp};
  auto it = T.index.find(k);
  if (it != T.index.end()) return it->second;
  std::uint32_t idx = static_cast<std::uint32_t>(T.keys.size());
  T.index.emplace(k, idx);
  T.keys.push_back(k);
  T.reducer.push_back(-1);
  T.checked.push_back(0);
  T.acc.push_back(0);
  T.live.push_back(0);
  return idx;
}

int ModuleGB::find_reducer(Table& T, std::uint32_t idx) {
  int r = T.reducer[idx];
  if (r >= 0) return r;
  const Key& k = T.keys[idx];
  const auto& list = by_comp_[k.comp];
  std::uint32_t from = T.checked[idx];
  auto it = std::lower_bound(list.begin(), list.end(), from);
  for (; it != list.end(); ++it) {
    if (mono::divides(basis_[*it].v.front().m, k.m)) {
      T.reducer[idx] = static_cast<int>(*it);
      return static_cast<int>(*it);
    }
  }
  T.checked[idx] = static_cast<std::uint32_t>(basis_.size());
  return -1;
}

void ModuleGB::load(Table& T, std::vector<std::uint32_t>& heap, const Vec& v,
                    const Monomial& mult, Residue coef) {
  const PrimeField& F = S_.R.field();
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    return S_.cmp(T.keys[a].m, T.keys[a].comp, T.keys[b].m, T.keys[b].comp) < 0;
  };
  for (const auto& t : v) {
    std::uint32_t idx = lookup(T, mono::mul(t.m, mult), t.comp);
    T.acc[idx] = F.add(T.acc[idx], F.mul(coef, t.c));
    if (!T.live[idx]) {
      T.live[idx] = 1;
      heap.push_back(idx);
      std::push_heap(heap.begin(), heap.end(), less);
    }
  }
}

Vec ModuleGB::reduce_loaded(Table& T, std::vector<std::uint32_t>& heap) {
  const PrimeField& F = S_.R.field();
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    return S_.cmp(T.keys[a].m, T.keys[a].comp, T.keys[b].m, T.keys[b].comp) < 0;
  };
  Vec out;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), less);
    std::uint32_t idx = heap.back();
    heap.pop_back();
    T.live[idx] = 0;
    Residue c = T.acc[idx];
    T.acc[idx] = 0;
    if (!c) continue;
    int r = find_reducer(T, idx);
    if (r < 0) {
      out.push_back({T.keys[idx].m, T.keys[idx].comp, c});
      continue;
    }
    check_budget();
    const Vec& g = basis_[r].v;
    Monomial q = mono::quo(T.keys[idx].m, g.front().m);
    Residue coef = F.neg(c);
    for (std::size_t s = 1; s < g.size(); ++s) {
      std::uint32_t j = lookup(T, mono::mul(g[s].m, q), g[s].comp);
      T.acc[j] = F.add(T.acc[j], F.mul(coef, g[s].c));
      if (!T.live[j]) {
        T.live[j] = 1;
        heap.push_back(j);
        std::push_heap(heap.begin(), heap.end(), less);
      }
    }
  }
  return out;
}

static void make_monic(Vec& v, const PrimeField& F) {
  if (v.empty() || v.front().c == 1) return;
  Residue s = F.inv(v.front().c);
  for (auto& t : v) t.c = F.mul(t.c, s);
}

Vec ModuleGB::normal_form(const Vec& v0) {
  Vec v = S_.canonical(v0);
  if (v.empty()) return v;
  if (!S_.homogeneous(v)) {
    Vec out;
    std::map<int, Vec> parts;
    for (const auto& t : v) parts[S_.degree(t)].push_back(t);
    for (auto& [d, p] : parts) {
      Vec r = normal_form(p);
      out.insert(out.end(), r.begin(), r.end());
    }
    return S_.canonical(out);
  }
  Table& T = table(S_.degree(v.front()));
  std::vector<std::uint32_t> heap;
  load(T, heap, v, Monomial{}, 1);
  return reduce_loaded(T, heap);
}

Vec ModuleGB::s_vector(std::size_t i, std::size_t j) const {
  const Vec& a = basis_[i].v;
  const Vec& b = basis_[j].v;
  if (a.front().comp != b.front().comp) return {};
  const PrimeField& F = S_.R.field();
  Monomial l = mono::lcm(a.front().m, b.front().m, S_.R.weights());
  Monomial qa = mono::quo(l, a.front().m), qb = mono::quo(l, b.front().m);
  Residue ca = F.inv(a.front().c), cb = F.neg(F.inv(b.front().c));
  Vec out;
  for (const auto& t : a) out.push_back({mono::mul(t.m, qa), t.comp, F.mul(t.c, ca)});
  for (const auto& t : b) out.push_back({mono::mul(t.m, qb), t.comp, F.mul(t.c, cb)});
  return S_.canonical(out);
}

void ModuleGB::insert(Vec v, int degree) {
  make_monic(v, S_.R.field());
  std::uint32_t k = static_cast<std::uint32_t>(basis_.size());
  std::uint32_t comp = v.front().comp;
  basis_.push_back({std::move(v), degree});
  by_comp_[comp].push_back(k);
  update_pairs(k);
}

void ModuleGB::update_pairs(std::uint32_t k) {
  const Vec& h = basis_[k].v;
  std::uint32_t c = h.front().comp;
  if (S_.block_of(c) == opt_.skip_pair_block) return;
  const Monomial& hm = h.front().m;
  const auto& w = S_.R.weights();

  struct Cand {
    std::uint32_t j;
    Monomial l;
    bool coprime;
  };
  std::vector<Cand> C;
  for (std::uint32_t j : by_comp_[c]) {
    if (j == k) continue;
    const Monomial& gm = basis_[j].v.front().m;
    C.push_back({j, mono::lcm(hm, gm, w), product_ok_ && mono::coprime(hm, gm)});
  }
  std::vector<Cand> D;
  for (std::size_t a = 0; a < C.size(); ++a) {
    bool keep = C[a].coprime;
    if (!keep) {
      keep = true;
      for (std::size_t b = a + 1; b < C.size() && keep; ++b)
        if (mono::divides(C[b].l, C[a].l)) keep = false;
      for (std::size_t b = 0; b < D.size() && keep; ++b)
        if (mono::divides(D[b].l, C[a].l)) keep = false;
    }
    if (keep) D.push_back(C[a]);
  }
  // Chain criterion on pending pairs.
  for (auto& [deg, list] : pairs_) {
    std::size_t out = 0;
    for (std::size_t s = 0; s < list.size(); ++s) {
      const Pair& p = list[s];
      bool drop = false;
      if (basis_[p.i].v.front().comp == c && mono::divides(hm, p.lcm)) {
        Monomial li = mono::lcm(basis_[p.i].v.front().m, hm, w);
        Monomial lj = mono::lcm(basis_[p.j].v.front().m, hm, w);
        drop = li != p.lcm && lj != p.lcm;
      }
      if (!drop) list[out++] = p;
    }
    list.resize(out);
  }
  for (const auto& d : D) {
    if (d.coprime) continue;
    int deg = d.l.deg + S_.twists[c];
    pairs_[deg].push_back({d.j, k, d.l});
    ++stats_.pairs;
  }
}

void ModuleGB::run() {
  const PrimeField& F = S_.R.field();
  while (true) {
    int d = INT_MAX;
    for (auto it = inputs_.begin(); it != inputs_.end();) {
      if (it->second.empty()) it = inputs_.erase(it);
      else {
        d = std::min(d, it->first);
        break;
      }
    }
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      if (it->second.empty()) it = pairs_.erase(it);
      else {
        d = std::min(d, it->first);
        break;
      }
    }
    if (d == INT_MAX) break;
    if (d > opt_.max_degree) {
      truncated_ = true;
      break;
    }
    if (d > opt_.degree_cap)
      throw DegreeCapExceeded("Groebner computation reached degree " +
                              std::to_string(d) + " above cap " +
                              std::to_string(opt_.degree_cap));
    std::vector<Input> ins;
    if (auto it = inputs_.find(d); it != inputs_.end()) {
      ins = std::move(it->second);
      inputs_.erase(it);
    }
    std::vector<std::uint32_t> heap;
    for (auto& in : ins) {
      if (in.generator) continue;
      Table& T = table(d);
      load(T, heap, in.v, Monomial{}, 1);
      Vec r = reduce_loaded(T, heap);
      if (!r.empty()) insert(std::move(r), d);
    }
    while (true) {
      auto it = pairs_.find(d);
      if (it == pairs_.end()) break;
      std::vector<Pair> L = std::move(it->second);
      pairs_.erase(it);
      for (const auto& p : L) {
        check_budget();
        const Vec& a = basis_[p.i].v;
        const Vec& b = basis_[p.j].v;
        Table& T = table(d);
        load(T, heap, a, mono::quo(p.lcm, a.front().m), 1);
        load(T, heap, basis_[p.j].v, mono::quo(p.lcm, b.front().m), F.neg(1));
        ++stats_.pairs_reduced;
        Vec r = reduce_loaded(T, heap);
        if (r.empty()) ++stats_.zero_reductions;
        else insert(std::move(r), d);
      }
    }
    for (auto& in : ins) {
      if (!in.generator) continue;
      Table& T = table(d);
      load(T, heap, in.v, Monomial{}, 1);
      Vec r = reduce_loaded(T, heap);
      if (!r.empty()) {
        minimal_.push_back(in.index);
        insert(std::move(r), d);
      }
    }
    // Tables of finished degrees are only needed again for normal forms.
    for (auto it = tables_.begin(); it != tables_.end();) {
      if (it->first < d) it = tables_.erase(it);
      else ++it;
    }
  }
  if (opt_.interreduce) interreduce();
  ran_ = true;
  if (selfcheck_active()) verify_fixpoint();
}

// Every S-vector in the computed degree range reduces to zero, or, when a
// block is skipped, to a remainder lying in that block (only the other
// block is a Groebner basis there). Coprime leads are exempt where the
// product criterion holds.
void ModuleGB::verify_fixpoint() {
  const auto& w = S_.R.weights();
  auto& counts = selfcheck_counts();
  for (std::size_t c = 0; c < by_comp_.size(); ++c) {
    if (S_.block_of(static_cast<std::uint32_t>(c)) == opt_.skip_pair_block) continue;
    const auto& ks = by_comp_[c];
    for (std::size_t a = 0; a < ks.size(); ++a)
      for (std::size_t b = a + 1; b < ks.size(); ++b) {
        const Monomial& ma = basis_[ks[a]].v.front().m;
        const Monomial& mb = basis_[ks[b]].v.front().m;
        if (product_ok_ && mono::coprime(ma, mb)) continue;
        Monomial l = mono::lcm(ma, mb, w);
        if (truncated_ && S_.degree(ModTerm{l, static_cast<std::uint32_t>(c), 1}) > opt_.max_degree) continue;
        check_budget();
        ++counts.spairs;
        Vec r = normal_form(s_vector(ks[a], ks[b]));
        selfcheck_require(r.empty() || S_.block_of(r.front().comp) == opt_.skip_pair_block,
                          "Groebner basis is not a Buchberger fixpoint");
      }
  }
  ++counts.groebner;
}

void ModuleGB::adopt_basis(const std::vector<Vec>& basis) {
  for (const auto& v0 : basis) {
    Vec v = S_.canonical(v0);
    if (v.empty()) continue;
    make_monic(v, S_.R.field());
    std::uint32_t k = static_cast<std::uint32_t>(basis_.size());
    std::uint32_t comp = v.front().comp;
    int d = S_.degree(v.front());
    basis_.push_back({std::move(v), d});
    by_comp_[comp].push_back(k);
  }
  ran_ = true;
}

void ModuleGB::interreduce() {
  for (auto& e : basis_) {
    if (e.v.size() <= 1) continue;
    Vec tail(e.v.begin() + 1, e.v.end());
    Table& T = table(e.degree);
    std::vector<std::uint32_t> heap;
    load(T, heap, tail, Monomial{}, 1);
    Vec r = reduce_loaded(T, heap);
    ModTerm lead = e.v.front();
    e.v.clear();
    e.v.push_back(lead);
    e.v.insert(e.v.end(), r.begin(), r.end());
  }
}

std::vector<Vec> ModuleGB::basis() const {
  std::vector<Vec> out;
  out.reserve(basis_.size());
  for (const auto& e : basis_) out.push_back(e.v);
  return out;
}

}  // namespace cmf
