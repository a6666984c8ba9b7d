#ifndef CMF_GEOM_HPP
#define CMF_GEOM_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cmf/resolve.hpp"

namespace cmf {

using Point = std::vector<Residue>;  // homogeneous coordinates

struct PointConfig {
  std::vector<Point> points;  // in P^2
  std::vector<int> mults;
  std::uint64_t seed = 0;
  int attempts = 1;  // seeds tried until the certificate held
  // (degree, dim of the fat-point ideal in that degree) verified equal to
  // max(0, C(d+2,2) - sum C(m_i+1,2)).
  std::vector<std::pair<int, long long>> certificate;
};

long long expected_fat_dim(const std::vector<int>& mults, int d);

// n random points with the given multiplicities (size n, or empty for all
// simple). Reseeds until the fat-point ideal has the expected dimension in
// every degree of `degrees`; GenericityFailure after 32 attempts.
PointConfig random_general_points(const PrimeField& F, int n, std::vector<int> mults,
                                  std::uint64_t seed, const std::vector<int>& degrees);
// Certifies a configuration with prescribed points; throws GenericityFailure.
void certify_points(PointConfig& cfg, const PrimeField& F, const std::vector<int>& degrees);

// Basis (RREF order) of plane forms of degree d vanishing to order
// scale*m_i at p_i.
std::vector<Polynomial> fat_forms(const PolyRing& plane, const PointConfig& cfg, int d,
                                  int scale = 1);
// ∩ m_{p_i}^{m_i}.
Ideal fat_point_ideal(const PolyRing& plane, const PointConfig& cfg);
// Map from P^N (target coordinates x0..xN) to the plane given by a basis
// of the degree-d forms; EmptySystem when there are none.
RingMap linear_system_map(const PolyRing& plane, const PointConfig& cfg, int d);

// Module over R = k[x0..xN] generated by plane forms, x_j acting by
// multiplication with forms[j]. `sections(k)` (optional) spans the
// degree-k piece the module should reach, in plane degree d*k; missing
// elements become new generators. Relations and generators are found
// degree by degree; the loop stops once two consecutive degrees past
// `kmin` add nothing and the Hilbert function of the presentation matches
// the image dimensions two degrees further.
struct ParametricModule {
  GradedModulePresentation module;
  std::vector<Polynomial> generators;  // plane forms, one per module generator
  std::vector<long long> dims;         // image dims in degrees 0..last
};
ParametricModule parametric_module(const PolyRing& R, const std::vector<Polynomial>& forms,
                                   int d,
                                   const std::function<std::vector<Polynomial>(int)>& sections,
                                   int kmin = 3, int kmax = 14);

struct SurfaceMeta {
  int H2 = 0, HK = 0, K2 = 0, chi_top = 0;
  std::string tag;
  std::uint64_t seed = 0;
};

// Blow-up bookkeeping for the system (d; m_1, ..., m_n).
SurfaceMeta blowup_meta(int d, const std::vector<int>& mults, std::string tag,
                        std::uint64_t seed);

// Surface given as the image of the plane under `forms` (degree d), the
// blow-up of cfg. Ideal and section module are computed lazily.
class RationalSurface {
 public:
  RationalSurface(PolyRing plane, PointConfig cfg, int d, std::vector<Polynomial> forms,
                  SurfaceMeta meta);
  static RationalSurface from_linear_system(const PolyRing& plane, const PointConfig& cfg,
                                            int d, SurfaceMeta meta);

  const PolyRing& plane() const { return plane_; }
  const PolyRing& ring() const { return R_; }  // ambient coordinates
  int ambient_dim() const { return R_.nvars() - 1; }
  const PointConfig& config() const { return cfg_; }
  int plane_degree() const { return d_; }
  const std::vector<Polynomial>& forms() const { return forms_; }
  const SurfaceMeta& meta() const { return meta_; }

  const Ideal& ideal();
  // Γ_*(O) as an R-module: pieces are the forms of degree d*k with
  // multiplicities k*m_i.
  const GradedModulePresentation& section_module();
  Point image_of(const Point& plane_point) const;

  // Linear projection from the span of `center` (points of P^N).
  // CenterOnSurface when the center meets the surface, unless
  // allow_special_center is set.
  RationalSurface project(const std::vector<Point>& center, bool allow_special_center = false);

 private:
  PolyRing plane_, R_;
  PointConfig cfg_;
  int d_;
  std::vector<Polynomial> forms_;
  SurfaceMeta meta_;
  std::optional<Ideal> ideal_;
  std::optional<GradedModulePresentation> sections_;
};

// Does the linear span of `pts` meet V(I)?
bool span_meets(const Ideal& I, const std::vector<Point>& pts);
Point random_point(const PrimeField& F, int n, Rng& rng);
// Random point on the line joining the images of two random plane points.
// Projecting from it identifies those two points of the surface.
Point secant_point(const RationalSurface& S, Rng& rng);

struct SurfaceModel {
  Ideal ideal;
  SurfaceMeta meta;
  std::optional<GradedModulePresentation> sections;  // Γ_*(O) when known
};

SurfaceModel to_model(RationalSurface& S);

struct SurfaceInvariants {
  long long degree = 0;
  long long sectional_genus = 0;
  int codim = 0;
  int dim = 0;
  bool acm = false;
  bool maximal_rank = false;
  long long chi = 0;  // Hilbert polynomial at 0
};

// Degree and sectional genus come from the Hilbert polynomial of a seeded
// random hyperplane section (d*t + 1 - g for a surface, d for a curve).
SurfaceInvariants surface_invariants(const Ideal& I, std::uint64_t seed = 1, int window = 8);
// dims of H^1(I(m)) for m in [lo, hi].
std::vector<long long> rao_module(const Ideal& I, int lo, int hi);
// Maximal rank on [lo, hi]: each m has h^0(I(m)) = 0 or h^1(I(m)) = 0.
bool maximal_rank(const Ideal& I, int lo, int hi);

// 2x2 minors of the block catalecticant [[x_a..x_{a+n-1}], [x_{a+1}..x_{a+n}]]
// with consecutive blocks; sum(n_i + 1) must equal nvars.
Ideal scroll_ideal(const std::vector<int>& partition, const PolyRing& R);
// The 2 x sum(n_i) matrix itself.
GradedMatrix scroll_matrix(const std::vector<int>& partition, const PolyRing& R);
// 2x2 minors of a 2 x k matrix.
Ideal minors2(const GradedMatrix& M);
// Residual (total : part), saturated.
Ideal linkage(const Ideal& total, const Ideal& part);

// Binary forms (polynomials in a 2-variable ring).
Polynomial binary_gcd(const Polynomial& f, const Polynomial& g);  // monic in t0 when possible
// Exact quotient f / g; InvalidArgument when g does not divide f.
Polynomial binary_divide(const Polynomial& f, const Polynomial& g);
// forms(curve(t)) with the common factor of the compositions removed: the
// parametrization of the image of a plane curve given by binary forms.
std::vector<Polynomial> compose_curve(const std::vector<Polynomial>& forms,
                                      const std::vector<Polynomial>& curve);
// Ideal of the rational curve t -> (param_0(t) : ... : param_N(t)) in R.
Ideal rational_curve_ideal(const PolyRing& R, const std::vector<Polynomial>& param);
// For a rational curve of degree e spanning P^N, the 2 x k matrix of linear
// forms [l(t0 g_i); l(t1 g_i)] over the forms g_i of degree e-1 with
// t0 g_i, t1 g_i in the span of the coordinates. Its 2x2 minors cut out
// the scroll swept by the lines meeting the curve once per ruling.
GradedMatrix curve_scroll_matrix(const PolyRing& R, const std::vector<Polynomial>& param);

// Restriction of I to the hyperplane h = 0, written in nvars-1 variables
// (the last variable with a nonzero coefficient in h is eliminated).
Ideal restrict_to_hyperplane(const Ideal& I, const Polynomial& h, const PolyRing& target);

// Singular locus check: codim of I + (c x c minors of the Jacobian) is
// the ambient dimension + 1. Expensive; opt-in.
bool is_smooth(const Ideal& I, int codim);

// Ideal file plus metadata JSON.
void export_surface(const std::string& stem, const SurfaceModel& S,
                    const SurfaceInvariants& inv, std::uint32_t prime);

}  // namespace cmf

#endif  // CMF_GEOM_HPP
