#ifndef CMF_RESOLVE_HPP
#define CMF_RESOLVE_HPP

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmf/gbengine.hpp"
#include "cmf/groebner.hpp"

namespace cmf {

// Free module ⊕ R(-a_k); generator k lives in degree twists[k].
struct GradedFreeModule {
  std::vector<int> twists;
  std::size_t rank() const { return twists.size(); }
};

// Homogeneous map source -> target. Entry (i, j) has degree
// source[j] - target[i] or is zero.
class GradedMatrix {
 public:
  GradedMatrix(const PolyRing& R, std::vector<int> target, std::vector<int> source);
  GradedMatrix(const PolyRing& R, std::vector<int> target, std::vector<int> source,
               std::vector<Polynomial> entries);  // row-major
  // Columns given as module vectors over `target`; zero columns are dropped
  // and source twists are the column degrees.
  static GradedMatrix from_columns(const PolyRing& R, std::vector<int> target,
                                   const std::vector<Vec>& cols);
  static GradedMatrix identity(const PolyRing& R, std::vector<int> twists);

  const PolyRing& ring() const { return R_; }
  std::size_t rows() const { return target_.size(); }
  std::size_t cols() const { return source_.size(); }
  const std::vector<int>& target() const { return target_; }
  const std::vector<int>& source() const { return source_; }
  const Polynomial& at(std::size_t i, std::size_t j) const { return e_[i * cols() + j]; }
  void set(std::size_t i, std::size_t j, Polynomial p);

  Vec column(std::size_t j) const;  // canonical in ModuleSpace(R, target)
  std::vector<Vec> columns() const;

  GradedMatrix operator*(const GradedMatrix& o) const;
  GradedMatrix transpose() const;
  GradedMatrix shift(int a) const;  // all twists + a
  GradedMatrix scaled(const Polynomial& f) const;  // f * M, source twists + deg f
  GradedMatrix select_columns(const std::vector<std::size_t>& js) const;
  GradedMatrix concat_columns(const GradedMatrix& o) const;

  bool is_zero() const;
  bool is_homogeneous() const;
  bool has_unit_entry() const;
  // Min and max degree over nonzero entries; {0, -1} when all zero.
  std::pair<int, int> entry_degree_range() const;
  bool operator==(const GradedMatrix& o) const;

 private:
  PolyRing R_;
  std::vector<int> target_, source_;
  std::vector<Polynomial> e_;
};

// coker(presentation), over R or over R/(modulus) when modulus is nonzero.
struct GradedModulePresentation {
  GradedMatrix presentation;
  Polynomial modulus;

  explicit GradedModulePresentation(GradedMatrix p)
      : presentation(std::move(p)), modulus(presentation.ring()) {}
  GradedModulePresentation(GradedMatrix p, Polynomial f)
      : presentation(std::move(p)), modulus(std::move(f)) {}

  const PolyRing& ring() const { return presentation.ring(); }
  const std::vector<int>& generators() const { return presentation.target(); }
  bool over_quotient() const { return !modulus.is_zero(); }
  // The same module as a module over R (modulus columns appended).
  GradedModulePresentation over_ambient() const;
};

GradedModulePresentation cyclic_module(const Ideal& I);  // R/I
GradedModulePresentation free_module(const PolyRing& R, std::vector<int> twists);

struct FreeResolution {
  PolyRing ring;
  Polynomial modulus;                    // zero: over R
  std::vector<std::vector<int>> twists;  // F_0, F_1, ...
  std::vector<GradedMatrix> maps;        // maps[i]: F_{i+1} -> F_i
  std::optional<int> periodic_from;      // step s of detected periodicity

  explicit FreeResolution(const PolyRing& R) : ring(R), modulus(R) {}
  std::size_t length() const { return maps.size(); }
  bool minimal() const;  // no nonzero constant entries
  // d_i d_{i+1} = 0 (modulo the modulus for quotient resolutions).
  bool is_complex() const;
};

// Columns generating {v in source(M) : M v in im(N)}, minimal modulo the
// span of `source_ambient` (which must lie in that kernel).
GradedMatrix kernel_mod(const GradedMatrix& M, const GradedMatrix& N,
                        const std::vector<Vec>& source_ambient = {},
                        const GBOptions& opt = {});
// Minimal generators of the span of `cols` modulo `ambient`.
std::vector<Vec> minimal_generators_mod(const ModuleSpace& S, const std::vector<Vec>& cols,
                                        const std::vector<Vec>& ambient,
                                        const GBOptions& opt = {});

GradedMatrix syzygy_module(const GradedMatrix& M, const GBOptions& opt = {});

// Cancels unit entries and drops redundant relations.
GradedModulePresentation prune(const GradedModulePresentation& P);

FreeResolution minimal_free_resolution(const GradedModulePresentation& P, int max_steps = -1,
                                       const GBOptions& opt = {});
// Minimal resolution over R/(f); P may be given over R or over R/(f).
FreeResolution quotient_resolution(const GradedModulePresentation& P, const Polynomial& f,
                                   int max_steps, const GBOptions& opt = {});
// Cancels unit entries of an arbitrary resolution.
FreeResolution minimize(const FreeResolution& F);

class BettiTable {
 public:
  BettiTable() = default;
  void add(int i, int j, long long b);
  long long at(int i, int j) const;
  const std::map<std::pair<int, int>, long long>& entries() const { return b_; }
  // Ranks by homological index, and the row-style view row = j - i.
  std::vector<long long> ranks() const;
  std::vector<long long> row(int r) const;  // indexed by i, up to max i
  int max_index() const;
  std::string render() const;
  std::string to_json(const std::vector<std::vector<int>>& twists,
                      std::optional<int> periodic_from) const;
  bool operator==(const BettiTable& o) const { return b_ == o.b_; }

 private:
  std::map<std::pair<int, int>, long long> b_;
};

BettiTable betti_table(const FreeResolution& F);
std::string resolution_json(const FreeResolution& F);

// Laurent polynomial in t, power -> coefficient.
using LaurentPoly = std::map<int, long long>;

struct HilbertData {
  int nvars = 0;
  LaurentPoly numerator;  // (1-t)^nvars * Hilbert series
  // Coefficient of t^d in numerator / (1-t)^nvars.
  long long series_value(int d) const;
  // Hilbert polynomial evaluated at d (valid for d beyond the numerator).
  long long polynomial_value(long long d) const;
  // Order of vanishing of the numerator at t = 1 (the codimension of the
  // support) and the numerator divided by (1-t)^codim.
  int codim() const;
  LaurentPoly reduced_numerator() const;
  long long degree() const;  // reduced numerator at t = 1
};

// Lead-term data of the submodule im(P) (+ modulus multiples).
class HilbertCounter {
 public:
  explicit HilbertCounter(const GradedModulePresentation& P, const GBOptions& opt = {});
  long long value(int d) const;  // dim of the degree-d piece, from lead terms
  HilbertData series() const;    // numerator by monomial-ideal recursion
  const std::vector<std::vector<Monomial>>& lead_ideals() const { return leads_; }

 private:
  PolyRing R_;
  std::vector<int> twists_;
  std::vector<std::vector<Monomial>> leads_;
};

HilbertData hilbert(const GradedModulePresentation& P);
LaurentPoly numerator_from_betti(const BettiTable& B);
// Numerator of R/L for a monomial ideal L, by pivoting on variables.
LaurentPoly monomial_numerator(const PolyRing& R, std::vector<Monomial> gens);

// Degreewise Ext^i(M, R)_e from the dual of a free resolution over R.
class DualComplex {
 public:
  explicit DualComplex(FreeResolution F);
  long long ext_dim(int i, int e);
  const FreeResolution& resolution() const { return F_; }

 private:
  long long rank_of(int k, int e);  // rank of d_{k+1}^T in degree e
  long long cdim(int k, int e) const;
  FreeResolution F_;
  std::map<std::pair<int, int>, long long> ranks_;
};

// Sheaf cohomology of the sheaf associated to a module on P^n, n = nvars-1,
// through graded local duality. h^0 includes the local-cohomology
// correction h^0(M~(d)) = dim M_d - dim H^0_m(M)_d + dim H^1_m(M)_d.
class SheafCohomology {
 public:
  explicit SheafCohomology(const GradedModulePresentation& P, const GBOptions& opt = {});
  long long h(int i, int d);
  // dim H^j_m(M)_d
  long long local(int j, int d);
  long long module_dim(int d) const { return counter_.value(d); }
  const FreeResolution& resolution() const { return dual_.resolution(); }
  int regularity() const;

 private:
  int n_;
  HilbertCounter counter_;
  DualComplex dual_;
};

long long sheaf_cohomology(const GradedModulePresentation& P, int i, int d);

GradedModulePresentation hom_module(const GradedModulePresentation& P,
                                    const GradedModulePresentation& Q,
                                    const GBOptions& opt = {});
GradedModulePresentation tensor_module(const GradedModulePresentation& P,
                                       const GradedModulePresentation& Q);
GradedModulePresentation ext_module(const GradedModulePresentation& P, int j,
                                    const GBOptions& opt = {});
// Module of twisted global sections, Hom(J_t, M) with J_t = (x_i^t), for
// increasing t until Hilbert values agree on the degree window.
GradedModulePresentation saturate_module(const GradedModulePresentation& P, int lo, int hi,
                                         int max_t = 6, const GBOptions& opt = {});
GradedModulePresentation saturate_module(const GradedModulePresentation& P);
Ideal annihilator(const GradedModulePresentation& P, const GBOptions& opt = {});

struct MatrixFactorization {
  Polynomial f;
  GradedMatrix A, B;  // A*B = B*A = f*I
  bool verify() const;
};

// Finds s with d_s ~ d_{s+2} and d_{s+1} ~ d_{s+3} (shapes equal up to the
// shift by deg f) and completes the linear-most periodic map to a matrix
// factorization. A has target twists all 0 after normalization when the
// twists allow it.
MatrixFactorization extract_matrix_factorization(FreeResolution& F);
// Solves A*B = f*I degreewise; throws LiftFailure when impossible.
GradedMatrix complete_factorization(const GradedMatrix& A, const Polynomial& f);

void write_matrix(std::ostream& out, const GradedMatrix& M);
GradedMatrix read_matrix(std::istream& in, const PolyRing& R);

}  // namespace cmf

#endif  // CMF_RESOLVE_HPP
