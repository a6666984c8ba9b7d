#include "cmf/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace cmf {

Monomial mono::lcm(const Monomial& a, const Monomial& b,
                   const std::vector<int>& weights) {
  Monomial r;
  int deg = 0;
  for (int k = 0; k < 2; ++k) {
    std::uint64_t x = a.w[k], y = b.w[k], out = 0;
    for (int i = 0; i < 8; ++i) {
      std::uint64_t ex = (x >> (8 * i)) & 0xff, ey = (y >> (8 * i)) & 0xff;
      std::uint64_t e = ex > ey ? ex : ey;
      out |= e << (8 * i);
      int v = 8 * k + i;
      if (e && v < static_cast<int>(weights.size()))
        deg += static_cast<int>(e) * weights[v];
    }
    r.w[k] = out;
  }
  r.deg = deg;
  return r;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case Kind::Grevlex: return "grevlex";
    case Kind::Lex: return "lex";
    case Kind::Elimination: return "elimination(" + std::to_string(block_) + ")";
  }
  return "?";
}

PolyRing::PolyRing(const PrimeField& F, int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  *this = PolyRing(F, names);
}

PolyRing::PolyRing(const PrimeField& F, std::vector<std::string> names,
                   MonomialOrder order, std::vector<int> weights) {
  int n = static_cast<int>(names.size());
  if (n < 1 || n > kMaxVars)
    throw InvalidArgument("ring must have between 1 and 16 variables");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (names[i] == names[j])
        throw InvalidArgument("duplicate variable name " + names[i]);
  if (weights.empty()) weights.assign(n, 1);
  if (static_cast<int>(weights.size()) != n)
    throw InvalidArgument("weight vector length mismatch");
  bool standard = true;
  for (int w : weights) {
    if (w < 1) throw InvalidArgument("variable weights must be positive");
    if (w != 1) standard = false;
  }
  if (order.kind() == MonomialOrder::Kind::Elimination &&
      (order.block() < 0 || order.block() > n))
    throw InvalidArgument("elimination block out of range");
  d_ = std::make_shared<const Data>(
      Data{F, n, std::move(names), order, std::move(weights), standard});
}

PolyRing PolyRing::with_order(const MonomialOrder& o) const {
  return PolyRing(d_->F, d_->names, o, d_->weights);
}

Monomial PolyRing::make_monomial(const std::vector<int>& exps) const {
  if (static_cast<int>(exps.size()) != d_->n)
    throw InvalidArgument("exponent vector length mismatch");
  Monomial m;
  for (int i = 0; i < d_->n; ++i) {
    int e = exps[i];
    if (e < 0) throw InvalidArgument("negative exponent");
    if (e > kMaxExponent) throw ExponentOverflow("exponent above 127");
    m.w[i >> 3] |= static_cast<std::uint64_t>(e) << ((i & 7) * 8);
    m.deg += e * d_->weights[i];
  }
  return m;
}

Monomial PolyRing::var(int i, int e) const {
  std::vector<int> ex(d_->n, 0);
  ex.at(i) = e;
  return make_monomial(ex);
}

std::vector<int> PolyRing::exponents(const Monomial& m) const {
  std::vector<int> e(d_->n);
  for (int i = 0; i < d_->n; ++i) e[i] = m.exp(i);
  return e;
}

int PolyRing::degree_of(const Monomial& m) const {
  int d = 0;
  for (int i = 0; i < d_->n; ++i) d += m.exp(i) * d_->weights[i];
  return d;
}

Monomial PolyRing::mul(const Monomial& a, const Monomial& b) const {
  if (mono::mul_overflows(a, b)) throw ExponentOverflow("exponent above 127");
  return mono::mul(a, b);
}

namespace {

inline bool packed_less(const Monomial& a, const Monomial& b) {
  return a.w[1] != b.w[1] ? a.w[1] < b.w[1] : a.w[0] < b.w[0];
}

int revlex_range(const Monomial& a, const Monomial& b, int lo, int hi) {
  for (int i = hi - 1; i >= lo; --i) {
    int ea = a.exp(i), eb = b.exp(i);
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

}  // namespace

int PolyRing::cmp(const Monomial& a, const Monomial& b) const {
  switch (d_->order.kind()) {
    case MonomialOrder::Kind::Grevlex:
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
      if (a == b) return 0;
      return packed_less(a, b) ? 1 : -1;
    case MonomialOrder::Kind::Lex:
      for (int i = 0; i < d_->n; ++i) {
        int ea = a.exp(i), eb = b.exp(i);
        if (ea != eb) return ea > eb ? 1 : -1;
      }
      return 0;
    case MonomialOrder::Kind::Elimination: {
      int k = d_->order.block();
      int da = 0, db = 0;
      for (int i = 0; i < k; ++i) {
        da += a.exp(i) * d_->weights[i];
        db += b.exp(i) * d_->weights[i];
      }
      if (da != db) return da > db ? 1 : -1;
      int c = revlex_range(a, b, 0, k);
      if (c) return c;
      int ra = a.deg - da, rb = b.deg - db;
      if (ra != rb) return ra > rb ? 1 : -1;
      return revlex_range(a, b, k, d_->n);
    }
  }
  return 0;
}

int PolyRing::var_index(const std::string& name) const {
  for (int i = 0; i < d_->n; ++i)
    if (d_->names[i] == name) return i;
  return -1;
}

bool PolyRing::operator==(const PolyRing& o) const {
  if (d_ == o.d_) return true;
  return d_->F == o.d_->F && d_->names == o.d_->names &&
         d_->order == o.d_->order && d_->weights == o.d_->weights;
}

std::string PolyRing::header() const {
  std::string s = "ring p=" + std::to_string(d_->F.p()) + " vars=";
  for (int i = 0; i < d_->n; ++i) {
    if (i) s += ",";
    s += d_->names[i];
  }
  return s;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const PolyRing& R, std::vector<Term> terms, bool sorted)
    : R_(R) {
  if (!sorted) {
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
      return R.cmp(a.m, b.m) > 0;
    });
  }
  const PrimeField& F = R.field();
  terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().m == t.m) {
      terms_.back().c = F.add(terms_.back().c, t.c);
      if (terms_.back().c == 0) terms_.pop_back();
      continue;
    }
    if (t.c % F.p() == 0) continue;
    terms_.push_back({t.m, t.c % F.p()});
  }
}

Polynomial Polynomial::constant(const PolyRing& R, Residue c) {
  Polynomial f(R);
  c %= R.field().p();
  if (c) f.terms_.push_back({Monomial{}, c});
  return f;
}

Polynomial Polynomial::monomial(const PolyRing& R, const Monomial& m, Residue c) {
  Polynomial f(R);
  c %= R.field().p();
  if (c) f.terms_.push_back({m, c});
  return f;
}

Polynomial Polynomial::variable(const PolyRing& R, int i) {
  return monomial(R, R.var(i), 1);
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.m.deg);
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.m.deg != terms_.front().m.deg) return false;
  return true;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
}

static void require_same(const PolyRing& a, const PolyRing& b) {
  if (!(a == b)) throw RingMismatch("operands live in different rings");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same(R_, o.R_);
  const PrimeField& F = R_.field();
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = R_.cmp(terms_[i].m, o.terms_[j].m);
    if (c > 0) out.push_back(terms_[i++]);
    else if (c < 0) out.push_back(o.terms_[j++]);
    else {
      Residue s = F.add(terms_[i].c, o.terms_[j].c);
      if (s) out.push_back({terms_[i].m, s});
      ++i, ++j;
    }
  }
  while (i < terms_.size()) out.push_back(terms_[i++]);
  while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
  Polynomial r(R_);
  r.terms_ = std::move(out);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.c = R_.field().neg(t.c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same(R_, o.R_);
  if (terms_.empty() || o.terms_.empty()) return Polynomial(R_);
  const PrimeField& F = R_.field();
  const Polynomial& a = terms_.size() <= o.terms_.size() ? *this : o;
  const Polynomial& b = terms_.size() <= o.terms_.size() ? o : *this;
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].m, a.terms_[0].c);
  std::unordered_map<Monomial, Residue, MonoHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      Monomial m = R_.mul(s.m, t.m);
      auto& slot = acc[m];
      slot = F.add(slot, F.mul(s.c, t.c));
    }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c) out.push_back({m, c});
  return Polynomial(R_, std::move(out));
}

Polynomial Polynomial::scale(Residue c) const {
  const PrimeField& F = R_.field();
  c %= F.p();
  Polynomial r(R_);
  if (!c) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.c = F.mul(t.c, c);
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, Residue c) const {
  const PrimeField& F = R_.field();
  c %= F.p();
  Polynomial r(R_);
  if (!c) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({R_.mul(t.m, m), F.mul(t.c, c)});
  // Multiplication by a monomial preserves every order used here.
  return r;
}

Polynomial Polynomial::make_monic() const {
  if (terms_.empty()) return *this;
  return scale(R_.field().inv(terms_.front().c));
}

Polynomial Polynomial::part(int degree) const {
  Polynomial r(R_);
  for (const auto& t : terms_)
    if (t.m.deg == degree) r.terms_.push_back(t);
  return r;
}

Residue Polynomial::evaluate(const std::vector<Residue>& point) const {
  const PrimeField& F = R_.field();
  if (static_cast<int>(point.size()) != R_.nvars())
    throw InvalidArgument("evaluate: point has wrong length");
  Residue sum = 0;
  for (const auto& t : terms_) {
    Residue v = t.c;
    for (int i = 0; i < R_.nvars() && v; ++i) {
      int e = t.m.exp(i);
      if (e) v = F.mul(v, F.pow(point[i], e));
    }
    sum = F.add(sum, v);
  }
  return sum;
}

Residue Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.m == m) return t.c;
  return 0;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!(R_ == o.R_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

Polynomial Polynomial::in_ring(const PolyRing& S) const {
  if (S.nvars() != R_.nvars() || S.field() != R_.field())
    throw RingMismatch("in_ring: incompatible rings");
  std::vector<Term> ts = terms_;
  for (auto& t : ts) t.m.deg = S.degree_of(t.m);
  return Polynomial(S, std::move(ts));
}

void Polynomial::check_canonical() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].c == 0 || terms_[i].c >= R_.field().p())
      throw InvalidArgument("non-canonical coefficient");
    if (i && R_.cmp(terms_[i - 1].m, terms_[i].m) <= 0)
      throw InvalidArgument("terms not strictly descending");
  }
}

Polynomial poly_add(const Polynomial& f, const Polynomial& g) { return f + g; }
Polynomial poly_sub(const Polynomial& f, const Polynomial& g) { return f - g; }
Polynomial poly_mul(const Polynomial& f, const Polynomial& g) { return f * g; }
int monomial_compare(const Monomial& a, const Monomial& b, const PolyRing& R) {
  return R.cmp(a, b);
}

Polynomial power(const Polynomial& f, int e) {
  Polynomial r = Polynomial::constant(f.ring(), 1);
  Polynomial b = f;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// --------------------------------------------------------------- Ideal, maps

Ideal::Ideal(const PolyRing& R, std::vector<Polynomial> gens) : R_(R) {
  for (auto& g : gens) add(g);
}

void Ideal::add(const Polynomial& f) {
  require_same(R_, f.ring());
  if (!f.is_zero()) gens_.push_back(f);
}

bool Ideal::is_homogeneous() const {
  for (const auto& g : gens_)
    if (!g.is_homogeneous()) return false;
  return true;
}

Ideal Ideal::operator+(const Ideal& o) const {
  Ideal r = *this;
  for (const auto& g : o.gens_) r.add(g);
  return r;
}

RingMap::RingMap(const PolyRing& source, const PolyRing& target,
                 std::vector<Polynomial> images)
    : src_(source), tgt_(target), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != src_.nvars())
    throw InvalidArgument("ring map needs one image per source variable");
  for (const auto& g : images_) require_same(g.ring(), tgt_);
}

RingMap RingMap::identity(const PolyRing& R) {
  std::vector<Polynomial> im;
  for (int i = 0; i < R.nvars(); ++i) im.push_back(Polynomial::variable(R, i));
  return RingMap(R, R, im);
}

int RingMap::graded_degree() const {
  int d = 0;
  for (const auto& g : images_) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) return 0;
    if (d == 0) d = g.degree();
    else if (g.degree() != d) return 0;
  }
  return d >= 1 ? d : 0;
}

Polynomial apply_map(const RingMap& phi, const Polynomial& f) {
  require_same(f.ring(), phi.source());
  const PolyRing& T = phi.target();
  int n = phi.source().nvars();
  std::vector<std::vector<Polynomial>> pw(n);
  auto get = [&](int i, int e) -> const Polynomial& {
    auto& v = pw[i];
    if (v.empty()) v.push_back(Polynomial::constant(T, 1));
    while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * phi.images()[i]);
    return v[e];
  };
  Polynomial out(T);
  for (const auto& t : f.terms()) {
    Polynomial prod = Polynomial::constant(T, t.c);
    for (int i = 0; i < n && !prod.is_zero(); ++i) {
      int e = t.m.exp(i);
      if (e) prod = prod * get(i, e);
    }
    out += prod;
  }
  return out;
}

// ------------------------------------------------------------------- Parsing

namespace {

class Parser {
 public:
  Parser(const PolyRing& R, const std::string& s, int line)
      : R_(R), s_(s), line_(line) {}

  Polynomial parse() {
    std::vector<Term> terms;
    skip();
    if (pos_ >= s_.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      bool neg = false;
      if (peek() == '+' || peek() == '-') {
        neg = peek() == '-';
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Term t = term();
      if (neg) t.c = R_.field().neg(t.c);
      if (t.c) terms.push_back(t);
    }
    return Polynomial(R_, std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw SyntaxError(what, line_, static_cast<int>(pos_) + 1);
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  std::uint64_t number() {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v > (1ull << 40)) v %= R_.field().p();
      ++pos_;
    }
    return v;
  }
  Term term() {
    const PrimeField& F = R_.field();
    skip();
    Residue c = 1;
    std::vector<int> ex(R_.nvars(), 0);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = static_cast<Residue>(number() % F.p());
      skip();
      if (peek() == '*') {
        ++pos_;
        mono(ex);
      }
    } else {
      mono(ex);
    }
    return Term{R_.make_monomial(ex), c};
  }
  void mono(std::vector<int>& ex) {
    while (true) {
      skip();
      std::size_t start = pos_;
      if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
        fail("expected variable");
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int v = R_.var_index(name);
      if (v < 0)
        throw UnknownVariable("unknown variable '" + name + "' at " +
                              std::to_string(line_) + ":" + std::to_string(start + 1));
      skip();
      std::uint64_t e = 1;
      if (peek() == '^') {
        ++pos_;
        e = number();
      }
      std::uint64_t total = static_cast<std::uint64_t>(ex[v]) + e;
      if (total > kMaxExponent) throw ExponentOverflow("exponent above 127 for " + name);
      ex[v] = static_cast<int>(total);
      skip();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
  }

  const PolyRing& R_;
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
};

}  // namespace

Polynomial parse_poly(const PolyRing& R, const std::string& text, int line) {
  return Parser(R, text, line).parse();
}

std::string print_monomial(const PolyRing& R, const Monomial& m) {
  std::string s;
  for (int i = 0; i < R.nvars(); ++i) {
    int e = m.exp(i);
    if (!e) continue;
    if (!s.empty()) s += "*";
    s += R.var_names()[i];
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string print_poly(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const PrimeField& F = f.ring().field();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::int64_t c = F.lift(t.c);
    bool neg = c < 0;
    std::uint64_t a = static_cast<std::uint64_t>(neg ? -c : c);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    first = false;
    std::string m = print_monomial(f.ring(), t.m);
    if (m.empty()) out += std::to_string(a);
    else if (a == 1) out += m;
    else out += std::to_string(a) + "*" + m;
  }
  return out;
}

PolyRing parse_ring_header(const std::string& line, int lineno) {
  std::istringstream ss(line);
  std::string word;
  ss >> word;
  if (word != "ring") throw SyntaxError("expected 'ring' header", lineno, 1);
  std::uint32_t p = 0;
  std::vector<std::string> vars;
  while (ss >> word) {
    auto eq = word.find('=');
    if (eq == std::string::npos)
      throw SyntaxError("malformed header field '" + word + "'", lineno, 1);
    std::string key = word.substr(0, eq), val = word.substr(eq + 1);
    if (key == "p") {
      try {
        p = static_cast<std::uint32_t>(std::stoul(val));
      } catch (const std::exception&) {
        throw SyntaxError("bad prime '" + val + "'", lineno, 1);
      }
    } else if (key == "vars") {
      std::string cur;
      for (char ch : val) {
        if (ch == ',') {
          vars.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      if (!cur.empty()) vars.push_back(cur);
    } else {
      throw SyntaxError("unknown header field '" + key + "'", lineno, 1);
    }
  }
  if (p == 0 || vars.empty()) throw SyntaxError("header needs p= and vars=", lineno, 1);
  return PolyRing(PrimeField(p), vars);
}

IdealFile read_ideal_file(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<std::pair<int, std::string>> body;
  std::string header;
  int header_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = std::all_of(line.begin(), line.end(),
                             [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (blank) continue;
    if (header.empty()) {
      header = line;
      header_line = lineno;
    } else {
      body.emplace_back(lineno, line);
    }
  }
  if (header.empty()) throw SyntaxError("missing ring header", 1, 1);
  IdealFile out{parse_ring_header(header, header_line), {}};
  for (auto& [ln, text] : body) out.polys.push_back(parse_poly(out.ring, text, ln));
  return out;
}

IdealFile read_ideal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return read_ideal_file(in);
}

void write_ideal_file(std::ostream& out, const Ideal& I) {
  out << I.ring().header() << "\n";
  for (const auto& g : I.gens()) out << print_poly(g) << "\n";
}

// ------------------------------------------------------------------- Random

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below(0)");
  std::uint64_t limit = ~0ull - (~0ull % n);
  std::uint64_t x;
  do x = eng_();
  while (x >= limit);
  return x % n;
}

Polynomial random_linear_form(const PolyRing& R, Rng& rng) {
  std::vector<Term> ts;
  for (int i = 0; i < R.nvars(); ++i) ts.push_back({R.var(i), rng.residue(R.field())});
  return Polynomial(R, std::move(ts));
}

Polynomial random_linear_form(const PolyRing& R, std::uint64_t seed) {
  Rng rng(seed);
  return random_linear_form(R, rng);
}

Polynomial random_form(const PolyRing& R, int d, Rng& rng) {
  std::vector<Term> ts;
  for (const auto& m : monomials_of_degree(R, d)) ts.push_back({m, rng.residue(R.field())});
  return Polynomial(R, std::move(ts));
}

std::vector<Monomial> monomials_of_degree(const PolyRing& R, int d, int first_var,
                                          int nv) {
  std::vector<Monomial> out;
  if (d < 0 || nv <= 0) {
    if (d == 0) out.push_back(R.one());
    return out;
  }
  std::vector<int> ex(R.nvars(), 0);
  // Enumerate compositions of d into nv parts.
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == first_var + nv - 1) {
      ex[k] = left;
      out.push_back(R.make_monomial(ex));
      ex[k] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      ex[k] = e;
      rec(k + 1, left - e);
    }
    ex[k] = 0;
  };
  rec(first_var, d);
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return R.cmp(a, b) > 0; });
  return out;
}

std::vector<Monomial> monomials_of_degree(const PolyRing& R, int d) {
  if (!R.standard_grading())
    throw InvalidArgument("monomials_of_degree needs the standard grading");
  return monomials_of_degree(R, d, 0, R.nvars());
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

}  // namespace cmf
