#ifndef CMF_ULRICH_HPP
#define CMF_ULRICH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmf/geom.hpp"
#include "cmf/resolve.hpp"

namespace cmf {

// A cubic fourfold X = V(f) in P^5 together with where f came from.
struct FourfoldContext {
  Polynomial f;
  long long cubic_space_dim = 0;  // dim of the space f was drawn from
  std::uint64_t seed = 0;
  std::optional<bool> smooth;  // set only when checked
};

// Seeded random combination of a basis of the cubics in I_S.
FourfoldContext choose_cubic(const Ideal& I, std::uint64_t seed);
// Basis of the degree-d piece of an ideal (RREF over the monomials).
std::vector<Polynomial> degree_piece(const Ideal& I, int d);

struct UlrichCertificate {
  explicit UlrichCertificate(MatrixFactorization m) : mf(std::move(m)) {}
  MatrixFactorization mf;
  int rank = 0;
  int size = 0;  // 3 * rank
  BettiTable betti_R;          // of coker(A) over R
  BettiTable quotient_betti;   // resolution the factorization was read from
  std::vector<long long> quotient_ranks;
  std::optional<int> periodic_from;
  long long h0_init = 0;       // dim of the degree-0 piece of coker(A)
  bool initialized = false;    // degree -1 piece vanishes
  bool annihilated = false;    // A*B = B*A = f*I
};

// Section module of S over R/(f), its periodic resolution and the linear
// factorization it ends in. NotLinearMF when A has a non-linear entry,
// NotUlrich when coker(A) fails the Ulrich shape over R.
UlrichCertificate surface_to_ulrich(const SurfaceModel& S, const FourfoldContext& X,
                                    int steps = 8);
// Certificate checks for a given factorization (A with target twists 0).
UlrichCertificate certify_factorization(const MatrixFactorization& mf);

struct ExpectedUlrich {
  int rank = 0;
  long long degree = 0, genus = 0;
  // Bourbaki resolution O^{r-1}(-r-3) -> O^{3r}(-r-1) -> O^{2r+1}(-r) + O(-3)
  // as Betti entries (i, j, b) of R/I_Y, before cancellation.
  BettiTable shape;
};
ExpectedUlrich expected_ulrich_invariants(int r);

struct BourbakiSurface {
  SurfaceModel model;
  SurfaceInvariants invariants;
  BettiTable betti;
  std::uint64_t seed = 0;  // seed of the sections that worked
  int attempts = 0;
};

// Ideal of the zero locus of r-1 seeded general sections of coker(A):
// the annihilator of coker(M^dual -> R_X^{r-1}), saturated. Retries on
// degenerate sections; ShapeMismatch when the surface is not the expected
// ACM one.
BourbakiSurface bourbaki_surface(const UlrichCertificate& cert, std::uint64_t seed,
                                 int max_attempts = 8);

// K^2 and chi_top from the ideal of a smooth ACM surface: HK from the
// sectional genus, chi(O) from the Hilbert polynomial, K^2 from
// chi(omega^2) = chi(O) + K^2 with omega = Ext^3(R/I, R)(-6).
SurfaceMeta intrinsic_meta(const Ideal& I, std::string tag, std::uint64_t seed);

struct Hassett {
  long long Y2 = 0, delta = 0;
  bool special = false;  // delta > 6 and delta = 0, 2 mod 6
};
Hassett hassett(const SurfaceMeta& m, long long d);

long long brill_noether_rho(long long g, long long r, long long d);

struct NormalModuleDims {
  long long h0_NYP = 0;
  std::optional<long long> h1_NYP;
  long long h0_NYX = 0;
};
// Degree-0 homomorphisms I_Y -> R/I_Y by linear algebra on the generators
// and syzygies; N_{Y/X} as the kernel of phi -> phi(f). h^1 needs the Hom
// module's resolution and is computed only on request.
NormalModuleDims normal_module_dims(const Ideal& I, const Polynomial& f, bool with_h1);

struct EndoCohomology {
  std::array<std::optional<long long>, 5> h;
  // The same sheaf restricted to a seeded general hyperplane (a cubic
  // threefold), h^0..h^3.
  std::array<std::optional<long long>, 4> h_section;
  bool complete = false;
  std::string note;
};
// Sheaf cohomology of coker(A) (x) Hom(coker(A), R_X) on P^5. Stops at the
// current budget and returns what it has.
EndoCohomology endo_cohomology(const UlrichCertificate& cert, std::uint64_t seed = 1);

struct ExtensionCount {
  long long ext_dim = 0, family_dim = 0, moduli_dim = 0;
  bool smaller = false;  // family_dim < moduli_dim
};
ExtensionCount extension_dimension(int r);

// True for surfaces produced by bourbaki_surface (tag "bourbaki-r<k>") with
// the certificate they came from; NotApplicable otherwise.
struct DistinguishedReport {
  bool distinguished = false;
  std::string reason;
};
DistinguishedReport distinguished_flag(const SurfaceModel& S, const UlrichCertificate* cert);

}  // namespace cmf

#endif  // CMF_ULRICH_HPP
