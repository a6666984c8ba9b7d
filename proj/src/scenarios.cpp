#include "cmf/scenarios.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cmf/budget.hpp"
#include "cmf/ulrich.hpp"

namespace cmf {

// ---------------------------------------------------------------- report plumbing

Json betti_json(const BettiTable& t) {
  Json rows = Json::array();
  for (const auto& [ij, b] : t.entries())
    if (b) rows.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"b", b}});
  return Json{{"betti", rows}};
}

BettiTable betti_from_json(const Json& j) {
  BettiTable t;
  for (const auto& e : j.at("betti")) t.add(e.at("i").get<int>(), e.at("j").get<int>(), e.at("b").get<long long>());
  return t;
}

bool Report::passed() const {
  if (!error_kind.empty()) return false;
  for (const auto& e : expectations)
    if (e.gating && !e.pass) return false;
  return true;
}

int Report::exit_code() const {
  if (passed()) return 0;
  if (error_kind == "GenericityFailure" || error_kind == "DegenerateSections") return 3;
  return 2;
}

const Expectation* Report::find(const std::string& anchor) const {
  for (const auto& e : expectations)
    if (e.anchor == anchor) return &e;
  return nullptr;
}

Json report_to_json(const Report& r) {
  Json j;
  j["schema"] = 1;
  j["scenario"] = r.scenario;
  j["prime"] = r.prime;
  j["seed"] = r.seed;
  j["flags"] = Json{{"heavy", r.heavy}, {"check_smooth", r.check_smooth}};
  j["results"] = r.results;
  Json ex = Json::array();
  for (const auto& e : r.expectations)
    ex.push_back(Json{{"anchor", e.anchor},
                      {"description", e.description},
                      {"expected", e.expected},
                      {"actual", e.actual},
                      {"pass", e.pass},
                      {"gating", e.gating}});
  j["expectations"] = ex;
  if (!r.error_kind.empty()) j["error"] = Json{{"kind", r.error_kind}, {"message", r.error_message}};
  if (!r.timings.empty()) {
    Json tj = Json::array();
    for (const auto& [stage, s] : r.timings) tj.push_back(Json{{"stage", stage}, {"seconds", s}});
    j["timings"] = tj;
  }
  j["status"] = r.passed() ? "pass" : (r.error_kind.empty() ? "fail" : "error");
  j["exit_code"] = r.exit_code();
  return j;
}

Report report_from_json(const Json& j) {
  if (j.value("schema", 0) != 1) throw InvalidArgument("unsupported report schema");
  Report r;
  r.scenario = j.at("scenario").get<std::string>();
  r.prime = j.at("prime").get<std::uint32_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.heavy = j.at("flags").at("heavy").get<bool>();
  r.check_smooth = j.at("flags").at("check_smooth").get<bool>();
  r.results = j.at("results");
  for (const auto& e : j.at("expectations")) {
    Expectation x;
    x.anchor = e.at("anchor").get<std::string>();
    x.description = e.at("description").get<std::string>();
    x.expected = e.at("expected");
    x.actual = e.at("actual");
    x.pass = e.at("pass").get<bool>();
    x.gating = e.at("gating").get<bool>();
    r.expectations.push_back(std::move(x));
  }
  if (j.contains("error")) {
    r.error_kind = j["error"].at("kind").get<std::string>();
    r.error_message = j["error"].at("message").get<std::string>();
  }
  if (j.contains("timings"))
    for (const auto& t : j["timings"])
      r.timings.push_back({t.at("stage").get<std::string>(), t.at("seconds").get<double>()});
  return r;
}

std::string render_json(const Report& r) { return report_to_json(r).dump(2) + "\n"; }

namespace {

bool is_betti(const Json& v) { return v.is_object() && v.contains("betti"); }

// One-line row-style view: "2: . 11 18 9 1 | 3: ..." with row = j - i.
std::string betti_compact(const Json& v) {
  BettiTable t = betti_from_json(v);
  std::map<int, std::map<int, long long>> rows;
  int width = 0;
  for (const auto& [ij, b] : t.entries()) {
    if (!b) continue;
    rows[ij.second - ij.first][ij.first] = b;
    width = std::max(width, ij.first + 1);
  }
  std::string s;
  for (const auto& [row, cols] : rows) {
    if (!s.empty()) s += " | ";
    s += std::to_string(row) + ":";
    for (int i = 0; i < width; ++i) {
      auto it = cols.find(i);
      s += " " + (it == cols.end() ? std::string(".") : std::to_string(it->second));
    }
  }
  return s.empty() ? "(zero)" : s;
}

std::string compact(const Json& v) { return is_betti(v) ? betti_compact(v) : v.dump(); }

}  // namespace

std::string render_text(const Report& r) {
  std::ostringstream o;
  o << "scenario: " << r.scenario << "\n";
  o << "prime: " << r.prime << "\n";
  o << "seed: " << r.seed << "\n";
  o << "flags: heavy=" << (r.heavy ? "yes" : "no") << " check-smooth=" << (r.check_smooth ? "yes" : "no")
    << "\n";
  if (r.results.empty() && r.expectations.empty() && r.error_kind.empty() && r.timings.empty())
    return o.str();
  if (!r.results.empty()) {
    o << "\n[results]\n";
    for (const auto& [key, v] : r.results.items()) {
      if (is_betti(v)) {
        o << key << ":\n" << betti_from_json(v).render();
        if (v.contains("periodic_from")) o << "  periodic from step " << v["periodic_from"].dump() << "\n";
      } else {
        o << key << ": " << v.dump() << "\n";
      }
    }
  }
  if (!r.expectations.empty()) {
    o << "\n[expectations]\n";
    for (const auto& e : r.expectations) {
      std::string tag = e.pass ? "PASS" : "FAIL";
      if (!e.gating) tag = e.pass ? "note ok" : "note differs";
      o << tag << "  " << e.anchor << "  " << e.description << "\n";
      o << "    expected: " << compact(e.expected) << "\n";
      o << "    actual:   " << compact(e.actual) << "\n";
    }
  }
  if (!r.error_kind.empty()) o << "\nerror: " << r.error_kind << ": " << r.error_message << "\n";
  if (!r.timings.empty()) {
    o << "\n[timings]\n";
    for (const auto& [stage, s] : r.timings) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f", s);
      o << stage << ": " << buf << " s\n";
    }
  }
  o << "\nstatus: " << (r.passed() ? "PASS" : "FAIL") << " (exit " << r.exit_code() << ")\n";
  return o.str();
}

// ---------------------------------------------------------------- scenarios

namespace {

using Clock = std::chrono::steady_clock;

BettiTable table(std::initializer_list<std::array<long long, 3>> entries) {
  BettiTable t;
  for (const auto& e : entries) t.add(static_cast<int>(e[0]), static_cast<int>(e[1]), e[2]);
  return t;
}

// Independent stream per random choice inside a scenario, so that no two
// stages ever draw the same numbers from the scenario seed.
Rng stream(std::uint64_t seed, std::uint64_t tag) { return Rng(seed * 0x9E3779B97F4A7C15ull + tag); }

class Ctx {
 public:
  Ctx(const ScenarioOptions& o, Report& r) : opt(o), rep(r), F(o.prime), t0_(Clock::now()) {}

  const ScenarioOptions& opt;
  Report& rep;
  PrimeField F;

  void lap(const std::string& stage) {
    if (opt.timings)
      rep.timings.push_back({stage, std::chrono::duration<double>(Clock::now() - t0_).count()});
  }
  bool expect(const std::string& anchor, const std::string& what, Json expected, Json actual,
              bool gating = true) {
    bool ok = expected == actual;
    rep.expectations.push_back({anchor, what, std::move(expected), std::move(actual), ok, gating});
    return ok;
  }
  void note(const std::string& anchor, const std::string& what, Json expected, Json actual) {
    expect(anchor, what, std::move(expected), std::move(actual), false);
  }
  Json& out(const std::string& key) { return rep.results[key]; }
  std::string path(const std::string& leaf) const {
    return (std::filesystem::path(opt.out_dir) / (rep.scenario + "-" + leaf)).string();
  }

 private:
  Clock::time_point t0_;
};

Json invariants_json(const SurfaceInvariants& inv) {
  return Json{{"degree", inv.degree}, {"genus", inv.sectional_genus}, {"dim", inv.dim},
              {"acm", inv.acm},       {"chi", inv.chi}};
}

Json meta_json(const SurfaceMeta& m) {
  return Json{{"tag", m.tag}, {"H2", m.H2}, {"HK", m.HK}, {"K2", m.K2}, {"chi_top", m.chi_top}};
}

Json table_with_periodicity(const UlrichCertificate& c) {
  Json j = betti_json(c.quotient_betti);
  j["periodic_from"] = c.periodic_from ? Json(*c.periodic_from) : Json(nullptr);
  return j;
}

Json certificate_json(const Ctx& c, const UlrichCertificate& cert, const SurfaceModel& S,
                      const SurfaceInvariants& inv) {
  Hassett h = hassett(S.meta, inv.degree);
  Json surf = meta_json(S.meta);
  surf["degree"] = inv.degree;
  surf["genus"] = inv.sectional_genus;
  return Json{{"rank", cert.rank},
              {"size", cert.size},
              {"betti_R", betti_json(cert.betti_R)},
              {"mf_ok", cert.annihilated},
              {"initialized", cert.initialized},
              {"h0", cert.h0_init},
              {"surface", surf},
              {"hassett", Json{{"Y2", h.Y2}, {"delta", h.delta}}},
              {"seed", c.opt.seed},
              {"prime", c.opt.prime}};
}

void export_certificate(Ctx& c, const std::string& leaf, const Json& cert_json,
                        const UlrichCertificate& cert) {
  if (c.opt.out_dir.empty()) return;
  std::ofstream(c.path(leaf + ".json")) << cert_json.dump(2) << "\n";
  std::ofstream a(c.path(leaf + "-A.mat"));
  write_matrix(a, cert.mf.A);
  std::ofstream b(c.path(leaf + "-B.mat"));
  write_matrix(b, cert.mf.B);
}

void export_model(Ctx& c, const std::string& leaf, const SurfaceModel& S,
                  const SurfaceInvariants& inv) {
  if (c.opt.out_dir.empty()) return;
  export_surface(c.path(leaf), S, inv, c.opt.prime);
}

// The checks every certificate has to pass, under anchors "<prefix>.*".
void certificate_expectations(Ctx& c, const std::string& prefix, const UlrichCertificate& cert,
                              int r) {
  Json tail = nullptr;
  if (cert.periodic_from && *cert.periodic_from + 1 < static_cast<int>(cert.quotient_ranks.size()))
    tail = Json::array({cert.quotient_ranks[*cert.periodic_from],
                        cert.quotient_ranks[*cert.periodic_from + 1]});
  c.expect(prefix + ".periodic", "resolution over R/(f) becomes 2-periodic with these ranks",
           Json::array({3 * r, 3 * r}), tail);
  auto [lo, hi] = cert.mf.A.entry_degree_range();
  c.expect(prefix + ".mf", "linear square A with A*B = B*A = f*I",
           Json{{"rows", 3 * r}, {"cols", 3 * r}, {"linear", true}, {"exact", true}},
           Json{{"rows", cert.mf.A.rows()},
                {"cols", cert.mf.A.cols()},
                {"linear", lo == 1 && hi == 1},
                {"exact", cert.mf.verify()}});
  c.expect(prefix + ".rank", "Ulrich rank of coker(A)", r, cert.rank);
  c.expect(prefix + ".initialized", "initialized twist has 3r sections and nothing below",
           Json{{"h0", 3 * r}, {"initialized", true}}, Json{{"h0", cert.h0_init}, {"initialized", cert.initialized}});
}

// ---- surfaces

RationalSurface delpezzo(Ctx& c) {
  PolyRing plane(c.F, 3);
  std::vector<int> m(4, 1);
  auto cfg = random_general_points(c.F, 4, m, c.opt.seed, {3});
  return RationalSurface::from_linear_system(plane, cfg, 3, blowup_meta(3, m, "delpezzo", c.opt.seed));
}

// (5; 2^2, 1^8) in P^6, projected from a point on a secant line.
RationalSurface degree9(Ctx& c) {
  PolyRing plane(c.F, 3);
  std::vector<int> m = {2, 2, 1, 1, 1, 1, 1, 1, 1, 1};
  auto cfg = random_general_points(c.F, 10, m, c.opt.seed, {5});
  auto Z = RationalSurface::from_linear_system(plane, cfg, 5, blowup_meta(5, m, "degree9", c.opt.seed));
  Rng rng = stream(c.opt.seed, 1);
  return Z.project({secant_point(Z, rng)}, true);
}

// (6; 2^5, 1^5) in P^7, projected from a general line.
RationalSurface degree11(Ctx& c) {
  PolyRing plane(c.F, 3);
  std::vector<int> m = {2, 2, 2, 2, 2, 1, 1, 1, 1, 1};
  auto cfg = random_general_points(c.F, 10, m, c.opt.seed, {6});
  auto Z = RationalSurface::from_linear_system(plane, cfg, 6, blowup_meta(6, m, "degree11", c.opt.seed));
  Rng rng = stream(c.opt.seed, 2);
  int n = Z.ambient_dim() + 1;
  Point a = random_point(c.F, n, rng), b = random_point(c.F, n, rng);
  return Z.project({a, b});
}

struct Certified {
  SurfaceModel model;
  SurfaceInvariants inv;
  FourfoldContext X;
  UlrichCertificate cert;
};

Certified certify(Ctx& c, SurfaceModel model, const std::string& prefix, int r) {
  SurfaceInvariants inv = surface_invariants(model.ideal, c.opt.seed);
  FourfoldContext X = choose_cubic(model.ideal, c.opt.seed);
  if (c.opt.check_smooth) {
    Ideal If(X.f.ring());
    If.add(X.f);
    X.smooth = is_smooth(If, 1);
    c.expect(prefix + ".smooth_cubic", "the chosen cubic is smooth", true, *X.smooth);
  }
  c.lap(prefix + " cubic");
  UlrichCertificate cert = surface_to_ulrich(model, X);
  c.lap(prefix + " certificate");
  c.out(prefix + "_quotient_betti") = table_with_periodicity(cert);
  certificate_expectations(c, prefix, cert, r);
  Json cj = certificate_json(c, cert, model, inv);
  c.out(prefix + "_certificate") = cj;
  export_certificate(c, "cert-r" + std::to_string(r), cj, cert);
  return Certified{std::move(model), inv, std::move(X), std::move(cert)};
}

Certified delpezzo_certified(Ctx& c, bool with_table_checks) {
  auto S = delpezzo(c);
  SurfaceModel model = to_model(S);
  c.lap("delpezzo surface");
  if (with_table_checks) {
    BettiTable bt = betti_table(minimal_free_resolution(cyclic_module(model.ideal)));
    c.out("delpezzo_betti") = betti_json(bt);
    c.expect("delpezzo.betti", "R/I_S: 5 quadrics, 5 linear syzygies, one quintic",
             betti_json(table({{0, 0, 1}, {1, 2, 5}, {2, 3, 5}, {3, 5, 1}})), betti_json(bt));
    if (c.opt.check_smooth)
      c.expect("delpezzo.smooth", "the surface is smooth", true, is_smooth(model.ideal, 3));
  }
  // Intrinsic invariants replace the blow-up bookkeeping in the model.
  SurfaceMeta bm = model.meta;
  model.meta = intrinsic_meta(model.ideal, "delpezzo", c.opt.seed);
  if (with_table_checks)
    c.expect("delpezzo.meta", "H^2, HK, K^2, chi_top from the ideal agree with the blow-up count",
             Json::array({bm.H2, bm.HK, bm.K2, bm.chi_top}),
             Json::array({model.meta.H2, model.meta.HK, model.meta.K2, model.meta.chi_top}));
  Certified out = certify(c, std::move(model), "rank2", 2);
  if (with_table_checks) {
    c.out("delpezzo_invariants") = invariants_json(out.inv);
    c.expect("delpezzo.degree_genus", "degree and sectional genus", Json::array({5, 1}),
             Json::array({out.inv.degree, out.inv.sectional_genus}));
    c.expect("delpezzo.cubics", "cubics through the surface", 25, out.X.cubic_space_dim);
    export_model(c, "delpezzo", out.model, out.inv);
  }
  return out;
}

const BettiTable& degree9_table() {
  static const BettiTable t = table({{0, 0, 1}, {1, 3, 11}, {2, 4, 18}, {3, 5, 9}, {4, 6, 1}});
  return t;
}
const BettiTable& section_ring_table() {
  static const BettiTable t = table({{0, 0, 1}, {0, 1, 1}, {1, 2, 5}, {1, 3, 1}, {2, 4, 8}, {3, 5, 4}});
  return t;
}

Certified degree9_certified(Ctx& c, bool with_table_checks) {
  auto Y = degree9(c);
  SurfaceModel model = to_model(Y);
  c.lap("degree-9 surface");
  if (with_table_checks) {
    BettiTable bt = betti_table(minimal_free_resolution(cyclic_module(model.ideal)));
    c.out("surface_betti") = betti_json(bt);
    c.expect("surface9.betti", "R/I_Y: 11 cubics, then 18, 9, 1", betti_json(degree9_table()),
             betti_json(bt));
    BettiTable gt = betti_table(minimal_free_resolution(*model.sections));
    c.out("section_ring_betti") = betti_json(gt);
    c.expect("surface9.section_ring", "section ring Betti table", betti_json(section_ring_table()),
             betti_json(gt));
    auto rao = rao_module(model.ideal, -3, 6);
    c.out("surface_rao_window") = Json::array({-3, 6});
    c.note("surface9.rao", "Rao module of the surface on [-3, 6] (claimed one-dimensional in degree 1)",
           Json::array({0, 0, 0, 0, 1, 0, 0, 0, 0, 0}), rao);
    c.lap("degree-9 tables");
  }
  Certified out = certify(c, std::move(model), "rank3", 3);
  if (with_table_checks) {
    c.out("surface_invariants") = invariants_json(out.inv);
    c.expect("surface9.degree_genus", "degree and sectional genus", Json::array({9, 4}),
             Json::array({out.inv.degree, out.inv.sectional_genus}));
    c.expect("surface9.cubics", "cubics through the surface", 11, out.X.cubic_space_dim);
    export_model(c, "degree9", out.model, out.inv);
  }
  return out;
}

Certified degree11_certified(Ctx& c, bool with_table_checks) {
  auto Y = degree11(c);
  SurfaceModel model = to_model(Y);
  c.lap("degree-11 surface");
  if (with_table_checks) {
    BettiTable bt = betti_table(minimal_free_resolution(cyclic_module(model.ideal)));
    c.out("surface_betti") = betti_json(bt);
    std::vector<long long> row;
    for (int i = 1; i <= 5; ++i) row.push_back(bt.at(i, i + 3));
    long long rest = 0;
    for (const auto& [ij, b] : bt.entries())
      if (ij.second - ij.first != 3 && !(ij.first == 1 && ij.second == 3) && !(ij.first == 0)) rest += b;
    c.expect("surface11.betti", "R/I_Y: row (25, 65, 63, 28, 5) plus one cubic and nothing else",
             Json{{"row", {25, 65, 63, 28, 5}}, {"cubics", 1}, {"other", 0}},
             Json{{"row", row}, {"cubics", bt.at(1, 3)}, {"other", rest}});
    c.lap("degree-11 tables");
  }
  Certified out = certify(c, std::move(model), "rank4", 4);
  if (with_table_checks) {
    c.out("surface_invariants") = invariants_json(out.inv);
    c.expect("surface11.degree_genus", "degree and sectional genus", Json::array({11, 5}),
             Json::array({out.inv.degree, out.inv.sectional_genus}));
    c.expect("surface11.cubics", "cubics through the surface (a unique cubic)", 1,
             out.X.cubic_space_dim);
    export_model(c, "degree11", out.model, out.inv);
  }
  return out;
}

// Bourbaki surface of a certificate with its checks under "<prefix>.*".
BourbakiSurface bourbaki_checked(Ctx& c, const Certified& src, const std::string& prefix) {
  int r = src.cert.rank;
  BourbakiSurface B = bourbaki_surface(src.cert, c.opt.seed);
  c.lap(prefix + " surface");
  ExpectedUlrich ex = expected_ulrich_invariants(r);
  c.out(prefix + "_invariants") = invariants_json(B.invariants);
  c.out(prefix + "_betti") = betti_json(B.betti);
  c.out(prefix + "_meta") = meta_json(B.model.meta);
  c.expect(prefix + ".degree_genus", "degree (3r^2 - r)/2 and genus r^3 - 2r^2 + 1",
           Json::array({ex.degree, ex.genus}),
           Json::array({B.invariants.degree, B.invariants.sectional_genus}));
  c.expect(prefix + ".acm", "the surface is ACM", true, B.invariants.acm);
  auto flag = distinguished_flag(B.model, &src.cert);
  c.expect(prefix + ".distinguished", "surface comes from an Ulrich certificate on X", true,
           flag.distinguished);
  export_model(c, "bourbaki-r" + std::to_string(r), B.model, B.invariants);
  return B;
}

// ---- scenario bodies

void run_curve(Ctx& c) {
  auto Y = degree9(c);
  const Ideal& IY = Y.ideal();
  c.lap("degree-9 surface");
  PolyRing P4(c.F, 5);
  Ideal IC = saturate(restrict_to_hyperplane(IY, random_linear_form(Y.ring(), c.opt.seed), P4));
  c.lap("hyperplane section");
  SurfaceInvariants inv = surface_invariants(IC, c.opt.seed);
  c.out("curve_invariants") = invariants_json(inv);
  c.expect("curve.degree_genus", "degree and arithmetic genus", Json::array({9, 4}),
           Json::array({inv.degree, inv.sectional_genus}));
  BettiTable bt = betti_table(minimal_free_resolution(cyclic_module(IC)));
  c.out("curve_betti") = betti_json(bt);
  c.expect("curve.betti", "R/I_C: row (11, 18, 9, 1)", betti_json(degree9_table()), betti_json(bt));
  auto rao = rao_module(IC, -3, 6);
  c.out("curve_rao_window") = Json::array({-3, 6});
  c.expect("curve.rao", "Rao module on [-3, 6]: one-dimensional in degree 1",
           Json::array({0, 0, 0, 0, 1, 0, 0, 0, 0, 0}), rao);
  auto P = cyclic_module(IC);
  auto G = saturate_module(P);
  HilbertCounter HP(P), HG(G);
  Json diff = Json::array(), want = Json::array();
  for (int d = -2; d <= 10; ++d) {
    diff.push_back(HG.value(d) - HP.value(d));
    want.push_back(d == 1 ? 1 : 0);
  }
  c.out("hilbert_window") = Json::array({-2, 10});
  c.expect("curve.section_hilbert", "section ring Hilbert function minus that of R/I_C is t",
           want, diff);
  BettiTable gt = betti_table(minimal_free_resolution(G));
  c.out("section_ring_betti") = betti_json(gt);
  c.expect("curve.section_ring", "section ring Betti table", betti_json(section_ring_table()),
           betti_json(gt));
  Json num = Json::object();
  for (const auto& [k, v] : numerator_from_betti(bt))
    if (v) num[std::to_string(k)] = v;
  c.note("curve.numerator", "Hilbert numerator read off the Betti table",
         Json{{"0", 1}, {"3", -11}, {"4", 18}, {"5", -9}, {"6", 1}}, num);
  c.expect("curve.maximal_rank", "maximal rank on [0, 8]", true, inv.maximal_rank);
  c.lap("curve checks");
}

void run_surface9(Ctx& c) {
  Certified d = degree9_certified(c, true);
  (void)d;
}

void heavy_normal(Ctx& c, const std::string& prefix, const BourbakiSurface& B, const Polynomial& f,
                  long long want_h0, bool want_h1) {
  NormalModuleDims nm = normal_module_dims(B.model.ideal, f, want_h1);
  c.out(prefix + "_normal") = Json{{"h0_NYP", nm.h0_NYP},
                                   {"h1_NYP", nm.h1_NYP ? Json(*nm.h1_NYP) : Json(nullptr)},
                                   {"h0_NYX", nm.h0_NYX}};
  c.expect(prefix + ".h0_normal_X", "h^0(N_{Y/X})", want_h0, nm.h0_NYX);
  if (want_h1) c.expect(prefix + ".h1_normal_P5", "h^1(N_{Y/P^5})", 0, *nm.h1_NYP);
  c.lap(prefix + " normal module");
}

void endo_checks(Ctx& c, const std::string& prefix, const UlrichCertificate& cert, Json want) {
  EndoCohomology e = endo_cohomology(cert, c.opt.seed);
  Json h = Json::array(), hs = Json::array();
  for (const auto& x : e.h) h.push_back(x ? Json(*x) : Json(nullptr));
  for (const auto& x : e.h_section) hs.push_back(x ? Json(*x) : Json(nullptr));
  c.out(prefix + "_endo") = Json{{"h", h}, {"h_hyperplane", hs}, {"complete", e.complete}, {"note", e.note}};
  Json got = Json::object();
  for (const auto& [k, v] : want.items()) got[k] = h[std::stoi(k.substr(1))];
  c.expect(prefix + ".endo", "h^i(F (x) F^dual) on X", want, got);
  c.lap(prefix + " endomorphisms");
}

void run_delpezzo(Ctx& c) {
  Certified d = delpezzo_certified(c, true);
  Hassett h = hassett(d.model.meta, d.inv.degree);
  c.expect("hassett.delpezzo", "Y^2 and discriminant of the quintic del Pezzo",
           Json{{"Y2", 13}, {"delta", 14}}, Json{{"Y2", h.Y2}, {"delta", h.delta}});
  if (c.opt.heavy) endo_checks(c, "rank2", d.cert, Json{{"h0", 1}, {"h1", 5}, {"h2", 0}, {"h3", 0}});
}

void run_rank3_c18(Ctx& c) {
  Certified d = degree9_certified(c, false);
  BourbakiSurface B = bourbaki_checked(c, d, "c18");
  c.expect("c18.betti", "R/I_Y: 8 cubics, 9 quartics, 2 sextic syzygies",
           betti_json(table({{0, 0, 1}, {1, 3, 8}, {2, 4, 9}, {3, 6, 2}})), betti_json(B.betti));
  const SurfaceMeta& m = B.model.meta;
  Hassett h = hassett(m, B.invariants.degree);
  c.expect("c18.hassett", "Y^2 and discriminant", Json{{"Y2", 54}, {"delta", 18}, {"special", true}},
           Json{{"Y2", h.Y2}, {"delta", h.delta}, {"special", h.special}});
  FourfoldContext X2 = choose_cubic(B.model.ideal, c.opt.seed);
  c.out("c18_cubic_space_dim") = X2.cubic_space_dim;
  c.note("c18.cubics", "cubics through the degree-12 surface (stated as 5)", 5, X2.cubic_space_dim);
  heavy_normal(c, "c18", B, X2.f, 16, c.opt.heavy);
  if (c.opt.heavy) endo_checks(c, "rank3", d.cert, Json{{"h0", 1}, {"h1", 10}});
}

void run_rank4(Ctx& c) {
  Certified d = degree11_certified(c, true);
  BourbakiSurface B = bourbaki_checked(c, d, "r4");
  FourfoldContext X2 = choose_cubic(B.model.ideal, c.opt.seed);
  c.expect("r4.cubics", "cubics through the degree-22 surface", 1, X2.cubic_space_dim);
  Hassett h = hassett(B.model.meta, B.invariants.degree);
  c.out("r4_hassett") = Json{{"Y2", h.Y2}, {"delta", h.delta}};
  heavy_normal(c, "r4", B, X2.f, 37, c.opt.heavy);
}

void run_bourbaki(Ctx& c, int r) {
  Certified d = r == 2 ? delpezzo_certified(c, false)
              : r == 3 ? degree9_certified(c, false)
                       : degree11_certified(c, false);
  std::string p = "bourbaki-r" + std::to_string(r);
  BourbakiSurface B = bourbaki_checked(c, d, p);
  ExpectedUlrich ex = expected_ulrich_invariants(r);
  c.expect(p + ".shape", "Betti table fits the Bourbaki shape after cancellation", true,
           B.betti.at(0, 0) == 1 && numerator_from_betti(B.betti) == numerator_from_betti(ex.shape));
  FourfoldContext X2 = choose_cubic(B.model.ideal, c.opt.seed);
  UlrichCertificate back = surface_to_ulrich(B.model, X2);
  c.lap(p + " round trip");
  c.out(p + "_round_trip_quotient_betti") = table_with_periodicity(back);
  c.expect(p + ".round_trip", "certificate of the Bourbaki surface has the same rank and shape",
           Json{{"rank", r}, {"betti_R", betti_json(d.cert.betti_R)}},
           Json{{"rank", back.rank}, {"betti_R", betti_json(back.betti_R)}});
}

// Points of V(J) for a zero-dimensional J in P^5: length, and whether the
// projection to a seeded line is reduced (eliminant coprime to its
// derivative).
std::pair<long long, bool> points_reduced(const Ideal& J, Rng& rng) {
  const PolyRing& R = J.ring();
  const PrimeField& F = R.field();
  int n = R.nvars();
  long long length = hilbert(cyclic_module(J)).degree();
  PolyRing R2(F, n + 2);
  std::vector<Polynomial> img;
  for (int j = 0; j < n; ++j) img.push_back(Polynomial::variable(R2, j));
  RingMap emb(R, R2, img);
  Ideal K(R2);
  for (const auto& g : J.gens()) K.add(apply_map(emb, g));
  auto l0 = random_linear_form(R, rng), l1 = random_linear_form(R, rng);
  K.add(Polynomial::variable(R2, n) - apply_map(emb, l0));
  K.add(Polynomial::variable(R2, n + 1) - apply_map(emb, l1));
  Ideal E = eliminate(K, n);
  PolyRing T(F, 2);
  std::vector<Polynomial> im(n + 2, Polynomial(T));
  im[n] = Polynomial::variable(T, 0);
  im[n + 1] = Polynomial::variable(T, 1);
  RingMap down(R2, T, im);
  for (const auto& g : E.gens()) {
    Polynomial b = apply_map(down, g);
    if (b.is_zero()) continue;
    if (b.degree() != length) return {length, false};
    std::vector<Term> ts;
    for (const auto& t : b.terms()) {
      int e0 = t.m.exp(0);
      if (e0 % static_cast<int>(F.p()) == 0) continue;
      ts.push_back({T.make_monomial({e0 - 1, t.m.exp(1)}), F.mul(t.c, F.reduce(e0))});
    }
    Polynomial db(T, ts);
    return {length, binary_gcd(b, db).degree() == 0};
  }
  return {length, false};
}

void run_linked(Ctx& c) {
  const PrimeField& F = c.F;
  PolyRing plane(F, 3), T(F, 2);
  Rng rng = stream(c.opt.seed, 3);
  // Conic through four of the simple points.
  std::vector<Polynomial> conic;
  for (int i = 0; i < 3; ++i) conic.push_back(random_form(T, 2, rng));
  PointConfig cfg;
  cfg.mults = {2, 2, 1, 1, 1, 1, 1, 1, 1, 1};
  cfg.points.push_back(random_point(F, 3, rng));
  cfg.points.push_back(random_point(F, 3, rng));
  for (int i = 0; i < 4; ++i) {
    Point tau = {rng.residue(F), rng.residue(F)};
    Point p;
    for (const auto& g : conic) p.push_back(g.evaluate(tau));
    cfg.points.push_back(p);
  }
  for (int i = 0; i < 4; ++i) cfg.points.push_back(random_point(F, 3, rng));
  certify_points(cfg, F, {5});
  auto Z = RationalSurface::from_linear_system(plane, cfg, 5, blowup_meta(5, cfg.mults, "degree9", c.opt.seed));
  auto Y = Z.project({secant_point(Z, rng)}, true);
  const Ideal& IY = Y.ideal();
  const PolyRing& R = Y.ring();
  c.lap("degree-9 surface");

  auto C2 = compose_curve(Y.forms(), conic);
  Ideal IC2 = rational_curve_ideal(R, C2);
  c.out("sextic_betti") = betti_json(betti_table(minimal_free_resolution(cyclic_module(IC2))));
  GradedMatrix M = curve_scroll_matrix(R, C2);
  Ideal IS1 = minors2(M);
  SurfaceInvariants inv1 = surface_invariants(IS1, c.opt.seed);
  c.out("scroll_invariants") = invariants_json(inv1);
  c.note("linked.scroll", "quartic scroll containing the image of the conic",
         Json{{"degree", 4}, {"contains_curve", true}},
         Json{{"degree", inv1.degree}, {"contains_curve", ideal_contains(IC2, IS1)}});
  c.lap("scroll");

  // Cubics of I_Y that vanish on the scroll.
  GroebnerBasis G1 = groebner_basis(IS1);
  std::vector<Polynomial> cub = degree_piece(IY, 3);
  auto mons = monomials_of_degree(R, 3);
  DenseMatrix A(mons.size(), cub.size());
  for (std::size_t j = 0; j < cub.size(); ++j) {
    Polynomial r = G1.normal_form(cub[j]);
    for (std::size_t i = 0; i < mons.size(); ++i) A.at(i, j) = r.coefficient(mons[i]);
  }
  auto ker = kernel_basis(A, F);
  c.out("cubics_through_both") = ker.size();
  if (ker.empty()) throw GenericityFailure("no cubic contains both the surface and the scroll");
  Polynomial f(R);
  for (const auto& v : ker) {
    Residue s = rng.nonzero(F);
    for (std::size_t j = 0; j < cub.size(); ++j) f += cub[j].scale(F.mul(s, v[j]));
  }
  // Sigma: 2x3 matrix M * N with N a random 4x3 scalar matrix.
  std::size_t k = M.cols();
  DenseMatrix N(k, 3);
  for (std::size_t i = 0; i < k; ++i)
    for (int j = 0; j < 3; ++j) N.at(i, j) = rng.residue(F);
  std::vector<Polynomial> e;
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 3; ++j) {
      Polynomial s(R);
      for (std::size_t i = 0; i < k; ++i) s += M.at(r, i).scale(N.at(i, j));
      e.push_back(s);
    }
  Ideal ISig = minors2(GradedMatrix(R, {0, 0}, {1, 1, 1}, e));
  Ideal total = ISig;
  total.add(f);
  Ideal IS = linkage(total, IS1);
  SurfaceInvariants invS = surface_invariants(IS, c.opt.seed);
  c.out("linked_invariants") = invariants_json(invS);
  c.out("linked_betti") = betti_json(betti_table(minimal_free_resolution(cyclic_module(IS))));
  c.expect("linked.degree", "residual of the scroll in X ∩ Sigma has degree 5", 5, invS.degree);
  c.note("linked.type", "residual is an ACM surface of genus 1", Json{{"genus", 1}, {"acm", true}},
         Json{{"genus", invS.sectional_genus}, {"acm", invS.acm}});
  c.lap("linkage");

  Ideal J = IS;
  for (const auto& g : IY.gens()) J.add(g);
  auto [length, reduced] = points_reduced(J, rng);
  c.out("intersection") = Json{{"length", length}, {"reduced", reduced}};
  c.expect("linked.intersection", "length of S ∩ Y (stated as 16 transversal points)", 16, length);
  c.note("linked.transversal", "S ∩ Y is reduced", true, reduced);
  c.lap("intersection");

  FourfoldContext X{f, static_cast<long long>(ker.size()), c.opt.seed, std::nullopt};
  SurfaceModel Smodel{IS, intrinsic_meta(IS, "linked", c.opt.seed), std::nullopt};
  UlrichCertificate c2 = surface_to_ulrich(Smodel, X);
  certificate_expectations(c, "linked.rank2", c2, 2);
  c.out("rank2_certificate") = certificate_json(c, c2, Smodel, invS);
  c.lap("rank-2 certificate");
  SurfaceModel Ymodel = to_model(Y);
  UlrichCertificate c3 = surface_to_ulrich(Ymodel, X);
  certificate_expectations(c, "linked.rank3", c3, 3);
  c.out("rank3_certificate") = certificate_json(c, c3, Ymodel, surface_invariants(IY, c.opt.seed));
  c.lap("rank-3 certificate");
}

void run_hassett(Ctx& c) {
  auto check = [&](const std::string& anchor, const std::string& what, SurfaceMeta m, long long d,
                   long long Y2, long long delta, bool special) {
    Hassett h = hassett(m, d);
    c.expect(anchor, what, Json{{"Y2", Y2}, {"delta", delta}, {"special", special}},
             Json{{"Y2", h.Y2}, {"delta", h.delta}, {"special", h.special}});
  };
  SurfaceMeta s12;
  s12.H2 = 12, s12.HK = 6, s12.K2 = 0, s12.chi_top = 36;
  check("hassett.degree12", "degree-12 surface: H^2 12, HK 6, K^2 0, chi_top 36", s12, 12, 54, 18, true);
  SurfaceMeta dp;
  dp.H2 = 5, dp.HK = -5, dp.K2 = 5, dp.chi_top = 7;
  check("hassett.delpezzo", "quintic del Pezzo: H^2 5, HK -5, K^2 5, chi_top 7", dp, 5, 13, 14, true);
  SurfaceMeta pl;
  pl.H2 = 1, pl.HK = -3, pl.K2 = 9, pl.chi_top = 3;
  check("hassett.plane", "a plane", pl, 1, 3, 8, true);
}

void run_extension(Ctx& c) {
  for (int r = 2; r <= 4; ++r) {
    ExpectedUlrich e = expected_ulrich_invariants(r);
    static const long long want[5][2] = {{0, 0}, {0, 0}, {5, 1}, {12, 10}, {22, 33}};
    c.expect("closed.invariants_r" + std::to_string(r), "(degree, genus) for rank " + std::to_string(r),
             Json::array({want[r][0], want[r][1]}), Json::array({e.degree, e.genus}));
  }
  for (int r = 4; r <= 5; ++r) {
    ExtensionCount x = extension_dimension(r);
    long long R = r;
    c.expect("closed.extension_r" + std::to_string(r),
             "extension space, family and moduli dimensions for rank " + std::to_string(r),
             Json{{"ext", 2 * (R - 2)}, {"family", R * R - 2 * R + 5}, {"moduli", R * R + 1}, {"smaller", true}},
             Json{{"ext", x.ext_dim}, {"family", x.family_dim}, {"moduli", x.moduli_dim}, {"smaller", x.smaller}});
  }
  c.expect("closed.rho_10_4_12", "Brill-Noether number rho(10, 4, 12)", 0, brill_noether_rho(10, 4, 12));
  c.expect("closed.rho_4_4_9", "Brill-Noether number rho(4, 4, 9)", 9, brill_noether_rho(4, 4, 9));
  c.expect("closed.rho_0_0_0", "Brill-Noether number rho(0, 0, 0)", 0, brill_noether_rho(0, 0, 0));
}

const std::vector<std::pair<std::string, std::function<void(Ctx&)>>>& registry() {
  static const std::vector<std::pair<std::string, std::function<void(Ctx&)>>> reg = {
      {"delpezzo-r2", run_delpezzo},
      {"curve-9-4", run_curve},
      {"surface-9-4", run_surface9},
      {"rank3-c18", run_rank3_c18},
      {"rank4-plane", run_rank4},
      {"bourbaki-r2", [](Ctx& c) { run_bourbaki(c, 2); }},
      {"bourbaki-r3", [](Ctx& c) { run_bourbaki(c, 3); }},
      {"bourbaki-r4", [](Ctx& c) { run_bourbaki(c, 4); }},
      {"linked-r23", run_linked},
      {"hassett-arith", run_hassett},
      {"extension-counts", run_extension},
  };
  return reg;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

Report run_scenario(const ScenarioOptions& opt) {
  const std::function<void(Ctx&)>* body = nullptr;
  for (const auto& [n, f] : registry())
    if (n == opt.name) body = &f;
  if (!body) throw InvalidArgument("unknown scenario '" + opt.name + "'");
  Report r;
  r.scenario = opt.name;
  r.prime = opt.prime;
  r.seed = opt.seed;
  r.heavy = opt.heavy;
  r.check_smooth = opt.check_smooth;
  if (!opt.out_dir.empty()) std::filesystem::create_directories(opt.out_dir);
  Ctx c(opt, r);
  try {
    std::optional<BudgetScope> scope;
    if (opt.budget > 0) scope.emplace(opt.budget);
    (*body)(c);
  } catch (const Error& e) {
    r.error_kind = e.kind();
    r.error_message = e.what();
  }
  c.lap("total");
  return r;
}

}  // namespace cmf
