#ifndef CMF_GBENGINE_HPP
#define CMF_GBENGINE_HPP

#include <climits>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "cmf/polyring.hpp"

namespace cmf {

// A term c * m * e_comp of a free module.
struct ModTerm {
  Monomial m;
  std::uint32_t comp;
  Residue c;
};

// Sparse module element; terms strictly descending in the module order.
using Vec = std::vector<ModTerm>;

// Free module R^k with generator degrees (twists), split into blocks.
// Module order on terms: total degree, then block (block 0 is largest),
// then either term-over-position (monomial, then lower component index
// larger) or position-over-term.
struct ModuleSpace {
  PolyRing R;
  std::vector<int> twists;
  std::vector<int> block;  // empty means all 0
  bool pot = false;

  ModuleSpace(const PolyRing& ring, std::vector<int> tw, std::vector<int> bl = {},
              bool pos_over_term = false);
  std::size_t rank() const { return twists.size(); }
  int block_of(std::uint32_t c) const { return block.empty() ? 0 : block[c]; }
  int degree(const ModTerm& t) const { return t.m.deg + twists[t.comp]; }
  int cmp(const Monomial& a, std::uint32_t ca, const Monomial& b,
          std::uint32_t cb) const;
  int cmp(const ModTerm& a, const ModTerm& b) const {
    return cmp(a.m, a.comp, b.m, b.comp);
  }
  // Sorts, merges equal terms and drops zeros.
  Vec canonical(Vec v) const;
  bool homogeneous(const Vec& v) const;
};

struct GBOptions {
  int degree_cap = 40;          // DegreeCapExceeded beyond this
  int max_degree = INT_MAX;     // stop (truncated) after this degree
  bool product_criterion = true;  // only honored for rank-1 spaces
  // S-pairs between elements whose leads lie in this block are skipped.
  // Used for kernels, where only generators of the kernel are wanted.
  int skip_pair_block = -1;
  bool interreduce = true;
};

struct GBStats {
  std::size_t pairs = 0, pairs_reduced = 0, zero_reductions = 0;
};

// Homogeneous Buchberger algorithm for submodules of a graded free module,
// processed degree by degree. Inputs are either ambient elements (part of
// the submodule, not reported) or generators. Within each degree the
// ambient elements and S-pairs are handled first, then generators in
// input order; a generator is "minimal" when it does not reduce to zero at
// its turn, so the minimal ones form a minimal generating set modulo the
// ambient part.
class ModuleGB {
 public:
  ModuleGB(ModuleSpace S, GBOptions opt = {});

  void add_ambient(const Vec& v);
  void add_generator(const Vec& v);
  void run();
  // Installs elements already known to form a Groebner basis (no pairs
  // are generated). Used for normal forms against a finished basis.
  void adopt_basis(const std::vector<Vec>& basis);

  const ModuleSpace& space() const { return S_; }
  // Basis elements (monic, reduced after run() when interreduce is set).
  std::size_t size() const { return basis_.size(); }
  const Vec& element(std::size_t i) const { return basis_[i].v; }
  std::vector<Vec> basis() const;
  // Indices (in add order, counting generators only) of minimal generators.
  const std::vector<std::size_t>& minimal_generators() const { return minimal_; }
  bool truncated() const { return truncated_; }
  const GBStats& stats() const { return stats_; }

  // Full normal form with respect to the current basis. v homogeneous.
  Vec normal_form(const Vec& v);
  bool reduces_to_zero(const Vec& v) { return normal_form(v).empty(); }

  // S-polynomial of two basis elements (unreduced), empty if components differ.
  Vec s_vector(std::size_t i, std::size_t j) const;

 private:
  struct Elem {
    Vec v;
    int degree;
  };
  struct Input {
    Vec v;
    int degree;
    bool generator;
    std::size_t index;  // generator index
  };
  struct Pair {
    std::uint32_t i, j;
    Monomial lcm;
  };
  struct Key {
    Monomial m;
    std::uint32_t comp;
    bool operator==(const Key& o) const { return m == o.m && comp == o.comp; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.m.hash() ^ (static_cast<std::size_t>(k.comp) * 0x9E3779B97F4A7C15ull);
    }
  };
  struct Table {
    std::unordered_map<Key, std::uint32_t, KeyHash> index;
    std::vector<Key> keys;
    std::vector<int> reducer;             // -1 none (as of checked), else basis idx
    std::vector<std::uint32_t> checked;   // basis size when reducer last searched
    std::vector<Residue> acc;
    std::vector<char> live;
  };

  Table& table(int degree);
  std::uint32_t lookup(Table& T, const Monomial& m, std::uint32_t comp);
  int find_reducer(Table& T, std::uint32_t idx);
  // Reduce the combination loaded in the accumulator of T; `heap` holds
  // the live indices.
  Vec reduce_loaded(Table& T, std::vector<std::uint32_t>& heap);
  void load(Table& T, std::vector<std::uint32_t>& heap, const Vec& v,
            const Monomial& mult, Residue coef);
  void insert(Vec v, int degree);
  void update_pairs(std::uint32_t k);
  void interreduce();
  void verify_fixpoint();

  ModuleSpace S_;
  GBOptions opt_;
  bool product_ok_;
  std::vector<Elem> basis_;
  std::vector<std::vector<std::uint32_t>> by_comp_;
  std::map<int, std::vector<Input>> inputs_;
  std::map<int, std::vector<Pair>> pairs_;
  std::map<int, Table> tables_;
  std::vector<std::size_t> minimal_;
  std::size_t n_generators_ = 0;
  bool truncated_ = false;
  bool ran_ = false;
  GBStats stats_;
};

}  // namespace cmf

#endif  // CMF_GBENGINE_HPP
