#ifndef CMF_POLYRING_HPP
#define CMF_POLYRING_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cmf/errors.hpp"
#include "cmf/ffield.hpp"

namespace cmf {

constexpr int kMaxVars = 16;
constexpr int kMaxExponent = 127;

// Exponent vector packed one byte per variable (variable i in byte i of
// the 128-bit pair). The high bit of every byte is kept clear so that
// multiplication is a word add and divisibility is a word subtract.
struct Monomial {
  std::uint64_t w[2] = {0, 0};
  std::int32_t deg = 0;  // weighted degree, cached by the ring

  int exp(int i) const {
    return static_cast<int>((w[i >> 3] >> ((i & 7) * 8)) & 0xff);
  }
  bool operator==(const Monomial& o) const {
    return w[0] == o.w[0] && w[1] == o.w[1];
  }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
  bool is_one() const { return w[0] == 0 && w[1] == 0; }
  std::size_t hash() const {
    std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ull ^ (w[1] + 0x632BE59BD9B4E019ull);
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ull;
    return static_cast<std::size_t>(h ^ (h >> 32));
  }
};

namespace mono {
constexpr std::uint64_t kHigh = 0x8080808080808080ull;

inline bool divides(const Monomial& a, const Monomial& b) {
  return (((b.w[0] | kHigh) - a.w[0]) & kHigh) == kHigh &&
         (((b.w[1] | kHigh) - a.w[1]) & kHigh) == kHigh;
}
// Product without overflow check; callers guarantee exponents stay < 128.
inline Monomial mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.w[0] = a.w[0] + b.w[0];
  r.w[1] = a.w[1] + b.w[1];
  r.deg = a.deg + b.deg;
  return r;
}
inline bool mul_overflows(const Monomial& a, const Monomial& b) {
  return ((a.w[0] + b.w[0]) & kHigh) || ((a.w[1] + b.w[1]) & kHigh);
}
// b / a, requires divides(a, b).
inline Monomial quo(const Monomial& b, const Monomial& a) {
  Monomial r;
  r.w[0] = b.w[0] - a.w[0];
  r.w[1] = b.w[1] - a.w[1];
  r.deg = b.deg - a.deg;
  return r;
}
Monomial lcm(const Monomial& a, const Monomial& b, const std::vector<int>& weights);
// gcd(a,b) == 1
inline bool coprime(const Monomial& a, const Monomial& b) {
  for (int k = 0; k < 2; ++k) {
    std::uint64_t x = a.w[k], y = b.w[k];
    // byte nonzero masks
    std::uint64_t nx = (((x | kHigh) - 0x0101010101010101ull) | x) & kHigh;
    std::uint64_t ny = (((y | kHigh) - 0x0101010101010101ull) | y) & kHigh;
    if (nx & ny) return false;
  }
  return true;
}
}  // namespace mono

struct MonoHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

class MonomialOrder {
 public:
  enum class Kind { Grevlex, Lex, Elimination };
  static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder elimination(int k) {
    return MonomialOrder(Kind::Elimination, k);
  }
  Kind kind() const { return kind_; }
  int block() const { return block_; }
  std::string name() const;
  bool operator==(const MonomialOrder& o) const {
    return kind_ == o.kind_ && block_ == o.block_;
  }

 private:
  MonomialOrder(Kind k, int b) : kind_(k), block_(b) {}
  Kind kind_;
  int block_;
};

class PolyRing {
 public:
  // Variables x0..x{n-1}, standard grading, grevlex.
  PolyRing(const PrimeField& F, int n);
  PolyRing(const PrimeField& F, std::vector<std::string> names,
           MonomialOrder order = MonomialOrder::grevlex(),
           std::vector<int> weights = {});

  const PrimeField& field() const { return d_->F; }
  int nvars() const { return d_->n; }
  const std::vector<std::string>& var_names() const { return d_->names; }
  const MonomialOrder& order() const { return d_->order; }
  const std::vector<int>& weights() const { return d_->weights; }
  bool standard_grading() const { return d_->standard; }

  // Same variables and field, different order.
  PolyRing with_order(const MonomialOrder& o) const;

  Monomial make_monomial(const std::vector<int>& exps) const;
  Monomial var(int i, int e = 1) const;
  Monomial one() const { return Monomial{}; }
  std::vector<int> exponents(const Monomial& m) const;
  int degree_of(const Monomial& m) const;
  Monomial mul(const Monomial& a, const Monomial& b) const;  // checked
  Monomial lcm(const Monomial& a, const Monomial& b) const {
    return mono::lcm(a, b, d_->weights);
  }

  // <0, 0, >0 as a is smaller, equal, larger than b.
  int cmp(const Monomial& a, const Monomial& b) const;

  int var_index(const std::string& name) const;  // -1 if absent

  bool operator==(const PolyRing& o) const;
  bool operator!=(const PolyRing& o) const { return !(*this == o); }
  bool same_handle(const PolyRing& o) const { return d_ == o.d_; }

  std::string header() const;  // "ring p=.. vars=.."

 private:
  struct Data {
    PrimeField F;
    int n;
    std::vector<std::string> names;
    MonomialOrder order;
    std::vector<int> weights;
    bool standard;
  };
  std::shared_ptr<const Data> d_;
};

struct Term {
  Monomial m;
  Residue c;
};

class Polynomial {
 public:
  explicit Polynomial(const PolyRing& R) : R_(R) {}
  Polynomial(const PolyRing& R, std::vector<Term> terms, bool sorted = false);

  static Polynomial constant(const PolyRing& R, Residue c);
  static Polynomial monomial(const PolyRing& R, const Monomial& m, Residue c = 1);
  static Polynomial variable(const PolyRing& R, int i);

  const PolyRing& ring() const { return R_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const Term& lead() const { return terms_.front(); }
  Residue lead_coeff() const { return terms_.front().c; }
  const Monomial& lead_monomial() const { return terms_.front().m; }

  int degree() const;  // max weighted degree, -1 for zero
  bool is_homogeneous() const;
  bool is_constant() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scale(Residue c) const;
  Polynomial mul_term(const Monomial& m, Residue c) const;
  Polynomial make_monic() const;
  // Homogeneous component of the given degree.
  Polynomial part(int degree) const;

  Residue evaluate(const std::vector<Residue>& point) const;
  Residue coefficient(const Monomial& m) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // Re-sort terms under the ring's order (after a ring change).
  Polynomial in_ring(const PolyRing& S) const;

  void check_canonical() const;  // throws if the invariants are broken

 private:
  PolyRing R_;
  std::vector<Term> terms_;
};

Polynomial poly_add(const Polynomial& f, const Polynomial& g);
Polynomial poly_sub(const Polynomial& f, const Polynomial& g);
Polynomial poly_mul(const Polynomial& f, const Polynomial& g);
int monomial_compare(const Monomial& a, const Monomial& b, const PolyRing& R);
Polynomial power(const Polynomial& f, int e);

class Ideal {
 public:
  explicit Ideal(const PolyRing& R) : R_(R) {}
  Ideal(const PolyRing& R, std::vector<Polynomial> gens);

  const PolyRing& ring() const { return R_; }
  const std::vector<Polynomial>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_homogeneous() const;
  void add(const Polynomial& f);
  Ideal operator+(const Ideal& o) const;

 private:
  PolyRing R_;
  std::vector<Polynomial> gens_;
};

class RingMap {
 public:
  RingMap(const PolyRing& source, const PolyRing& target,
          std::vector<Polynomial> images);
  static RingMap identity(const PolyRing& R);

  const PolyRing& source() const { return src_; }
  const PolyRing& target() const { return tgt_; }
  const std::vector<Polynomial>& images() const { return images_; }
  // Common degree of the images if all are homogeneous of one degree >= 1,
  // else 0.
  int graded_degree() const;

 private:
  PolyRing src_, tgt_;
  std::vector<Polynomial> images_;
};

Polynomial apply_map(const RingMap& phi, const Polynomial& f);

// Text format.
Polynomial parse_poly(const PolyRing& R, const std::string& text, int line = 1);
std::string print_poly(const Polynomial& f);
std::string print_monomial(const PolyRing& R, const Monomial& m);

struct IdealFile {
  PolyRing ring;
  std::vector<Polynomial> polys;
};
IdealFile read_ideal_file(std::istream& in);
IdealFile read_ideal_file(const std::string& path);
void write_ideal_file(std::ostream& out, const Ideal& I);
PolyRing parse_ring_header(const std::string& line, int lineno = 1);

// Deterministic generator used for every random choice. The bit stream
// of mt19937_64 is fixed by the standard, and the reduction to a range is
// done here rather than by a library distribution so outputs are
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n)
  Residue residue(const PrimeField& F) {
    return static_cast<Residue>(below(F.p()));
  }
  Residue nonzero(const PrimeField& F) {
    return static_cast<Residue>(1 + below(F.p() - 1));
  }

 private:
  std::mt19937_64 eng_;
};

Polynomial random_linear_form(const PolyRing& R, std::uint64_t seed);
Polynomial random_linear_form(const PolyRing& R, Rng& rng);
// Random homogeneous form of degree d (dense).
Polynomial random_form(const PolyRing& R, int d, Rng& rng);
// All monomials of a given standard degree, in descending order.
std::vector<Monomial> monomials_of_degree(const PolyRing& R, int d);
std::vector<Monomial> monomials_of_degree(const PolyRing& R, int d, int first_var,
                                          int nvars);

std::uint64_t binomial(int n, int k);

}  // namespace cmf

#endif  // CMF_POLYRING_HPP
