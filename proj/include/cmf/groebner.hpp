#ifndef CMF_GROEBNER_HPP
#define CMF_GROEBNER_HPP

#include <memory>
#include <mutex>
#include <vector>

#include "cmf/gbengine.hpp"
#include "cmf/polyring.hpp"

namespace cmf {

class GroebnerBasis {
 public:
  GroebnerBasis(const Ideal& ideal, const PolyRing& ring, std::vector<Polynomial> basis);

  const Ideal& ideal() const { return ideal_; }
  // The ring carrying the order the basis was computed in.
  const PolyRing& ring() const { return ring_; }
  const MonomialOrder& order() const { return ring_.order(); }
  const std::vector<Polynomial>& basis() const { return basis_; }
  bool reduced() const { return true; }
  std::vector<Monomial> lead_monomials() const;

  // Deterministic full reduction: repeatedly reduce the highest reducible
  // term by the first basis element (index order) whose lead divides it.
  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
  bool contains(const Ideal& J) const;
  bool is_unit_ideal() const;

  bool operator==(const GroebnerBasis& o) const;

 private:
  Ideal ideal_;
  PolyRing ring_;
  std::vector<Polynomial> basis_;
  // Reduction engine built on first use; its term tables are a cache, so
  // access is serialized.
  mutable std::shared_ptr<ModuleGB> engine_;
  mutable std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
};

GroebnerBasis groebner_basis(const Ideal& I, const MonomialOrder& order,
                             const GBOptions& opt = {});
GroebnerBasis groebner_basis(const Ideal& I, const GBOptions& opt = {});
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G);

// Every S-polynomial of the basis reduces to zero.
bool buchberger_fixpoint(const GroebnerBasis& G);

// Conversions between polynomials and rank-one module vectors.
Vec to_vec(const Polynomial& f, std::uint32_t comp = 0);
Polynomial from_vec(const PolyRing& R, const Vec& v, std::uint32_t comp = 0);

// A minimal homogeneous generating set of the ideal spanned by gens.
std::vector<Polynomial> minimal_generators(const PolyRing& R,
                                           const std::vector<Polynomial>& gens);
Ideal minimalize(const Ideal& I);

Ideal ideal_quotient(const Ideal& I, const Polynomial& g);
Ideal ideal_quotient(const Ideal& I, const Ideal& J);
Ideal intersect(const Ideal& I, const Ideal& J);
// Same intersection through an auxiliary variable t: (t*I + (1-t)*J) ∩ R.
Ideal intersect_by_elimination(const Ideal& I, const Ideal& J);
Ideal saturation(const Ideal& I, const Ideal& J);
// Saturation by the irrelevant ideal.
Ideal saturate(const Ideal& I);
// Elements of I free of the first k variables (returned in the same ring).
Ideal eliminate(const Ideal& I, int k);
// Homogeneous ideal of the closure of the image of Proj(target) under the
// graded map whose coordinates are phi's images. Result lives in source.
Ideal kernel_of_map(const RingMap& phi);

bool ideals_equal(const Ideal& I, const Ideal& J);
bool ideal_contains(const Ideal& I, const Ideal& J);  // J ⊆ I

}  // namespace cmf

#endif  // CMF_GROEBNER_HPP
