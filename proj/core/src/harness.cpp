#include "ellchar/harness.hpp"

#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "ellchar/chars.hpp"
#include "ellchar/error.hpp"
#include "ellchar/intmath.hpp"
#include "ellchar/weil.hpp"

namespace ellchar {

std::string GridPoint::str() const {
  std::ostringstream os;
  os << "q=" << torus.q << " n=" << torus.n << " h=" << torus.h;
  if (ell != 0) os << " ell=" << ell;
  return os.str();
}

// -------------------------------------------------------------------- config

namespace {

template <class T>
void read_list(const Json& j, const char* key, std::vector<T>& out) {
  if (j.contains(key)) out = j.at(key).get<std::vector<T>>();
}

i64 prime_of(i64 q) {
  auto pp = prime_power(q);
  if (!pp) throw InvalidArgument("config: q = " + std::to_string(q) + " is not a prime power");
  return pp->first;
}

i64 torus_size(const TorusPoint& t) {
  i64 s = 1;
  for (int i = 0; i < t.n * t.h; ++i) {
    s = checked_mul(s, t.q);
    if (s > (i64{1} << 40)) break;
  }
  return s;
}

}  // namespace

Config Config::from_json(const Json& j) {
  Config c;
  c.caps = limits();
  if (j.contains("caps")) {
    const Json& k = j.at("caps");
    if (k.contains("enumeration")) c.caps.enumeration = k.at("enumeration").get<i64>();
    if (k.contains("field_size")) c.caps.field_size = k.at("field_size").get<i64>();
    if (k.contains("group_order")) c.caps.group_order = k.at("group_order").get<i64>();
    if (k.contains("table_order")) c.caps.table_order = k.at("table_order").get<i64>();
  }
  read_list(j, "primes", c.primes);
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    if (g.contains("max_size")) c.grid.max_size = g.at("max_size").get<i64>();
    read_list(g, "q", c.grid.q);
    read_list(g, "n", c.grid.n);
    read_list(g, "h", c.grid.h);
    read_list(g, "ell", c.grid.ell);
    if (g.contains("points"))
      for (const auto& p : g.at("points")) {
        const auto v = p.get<std::vector<i64>>();
        if (v.size() != 4) throw InvalidArgument("config: grid points are [q, n, h, ell]");
        c.grid.points.push_back(GridPoint{{v[0], static_cast<int>(v[1]), static_cast<int>(v[2])}, v[3]});
      }
  }
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
  if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  if (j.contains("torsor_complexes")) c.torsor_complexes = j.at("torsor_complexes").get<int>();
  if (j.contains("virtual_characters")) c.virtual_characters = j.at("virtual_characters").get<int>();
  if (j.contains("derived_truncation")) c.derived_truncation = j.at("derived_truncation").get<int>();
  if (j.contains("weil_model_order")) c.weil_model_order = j.at("weil_model_order").get<i64>();
  if (j.contains("weil_models_per_torus")) c.weil_models_per_torus = j.at("weil_models_per_torus").get<int>();
  if (j.contains("tamper")) c.tamper = j.at("tamper").get<bool>();
  if (j.contains("general")) c.general = j.at("general").get<bool>();
  return c;
}

Json Config::to_json() const {
  Json points = Json::array();
  for (const auto& p : grid.points) points.push_back({p.torus.q, p.torus.n, p.torus.h, p.ell});
  return Json{{"caps",
               {{"enumeration", caps.enumeration},
                {"field_size", caps.field_size},
                {"group_order", caps.group_order},
                {"table_order", caps.table_order}}},
              {"primes", primes},
              {"grid",
               {{"max_size", grid.max_size},
                {"q", grid.q},
                {"n", grid.n},
                {"h", grid.h},
                {"ell", grid.ell},
                {"points", points}}},
              {"seed", seed},
              {"torsor_complexes", torsor_complexes},
              {"virtual_characters", virtual_characters},
              {"derived_truncation", derived_truncation},
              {"weil_model_order", weil_model_order},
              {"weil_models_per_torus", weil_models_per_torus},
              {"tamper", tamper},
              {"general", general}};
}

void Config::validate() const {
  for (i64 v : {caps.enumeration, caps.field_size, caps.group_order, caps.table_order})
    if (v <= 0) throw InvalidArgument("config: caps must be positive");
  if (grid.max_size < 2) throw InvalidArgument("config: grid max_size must be at least 2");
  for (i64 l : primes)
    if (!is_prime(l)) throw InvalidArgument("config: " + std::to_string(l) + " in primes is not prime");
  for (i64 l : grid.ell)
    if (!is_prime(l)) throw InvalidArgument("config: ell = " + std::to_string(l) + " is not prime");
  for (i64 q : grid.q) {
    const i64 p = prime_of(q);
    for (i64 l : grid.ell)
      if (l == p) throw InvalidArgument("config: ell = p = " + std::to_string(p) + " (q = " + std::to_string(q) + ")");
  }
  for (int n : grid.n)
    if (n < 1) throw InvalidArgument("config: n must be positive");
  for (int h : grid.h)
    if (h < 1) throw InvalidArgument("config: h must be positive");
  for (const auto& pt : grid.points) {
    if (pt.torus.n < 1 || pt.torus.h < 1) throw InvalidArgument("config: bad grid point " + pt.str());
    if (!is_prime(pt.ell)) throw InvalidArgument("config: ell in grid point " + pt.str() + " is not prime");
    if (prime_of(pt.torus.q) == pt.ell) throw InvalidArgument("config: ell = p in grid point " + pt.str());
  }
  if (torsor_complexes < 0 || virtual_characters < 0 || derived_truncation < 0 || weil_models_per_torus < 0)
    throw InvalidArgument("config: counts must be non-negative");
}

std::vector<TorusPoint> Config::torus_points() const {
  std::vector<i64> qs = grid.q;
  if (qs.empty())
    for (i64 q = 2; q <= grid.max_size; ++q)
      if (prime_power(q)) qs.push_back(q);
  std::vector<TorusPoint> out;
  for (i64 q : qs)
    for (int n = 1;; ++n) {
      if (torus_size({q, n, 1}) > grid.max_size) break;
      if (!grid.n.empty() && std::find(grid.n.begin(), grid.n.end(), n) == grid.n.end()) continue;
      for (int h = 1;; ++h) {
        const TorusPoint t{q, n, h};
        if (torus_size(t) > grid.max_size) break;
        if (!grid.h.empty() && std::find(grid.h.begin(), grid.h.end(), h) == grid.h.end()) continue;
        out.push_back(t);
      }
    }
  return out;
}

std::vector<GridPoint> Config::grid_points() const {
  if (!grid.points.empty()) return grid.points;
  const std::vector<i64>& ells = grid.ell.empty() ? primes : grid.ell;
  std::vector<GridPoint> out;
  for (const auto& t : torus_points())
    for (i64 l : ells)
      if (l != prime_of(t.q)) out.push_back(GridPoint{t, l});
  return out;
}

bool Config::grid_is_explicit() const {
  return !grid.points.empty() || (!grid.q.empty() && !grid.n.empty() && !grid.h.empty() && !grid.ell.empty());
}

std::vector<GridPoint> Config::diagram_points() const {
  if (grid_is_explicit()) return grid_points();
  return {GridPoint{{2, 2, 2}, 3}, GridPoint{{3, 2, 2}, 2}};
}

// -------------------------------------------------------------------- corpora

namespace {

// 2x2 matrices over F_3 packed as a + 3b + 9c + 27d for [[a, b], [c, d]].
u64 mat3_mul(u64 x, u64 y) {
  auto e = [](u64 m, int i) { return static_cast<int>((m / ipow(3, i)) % 3); };
  const int a = e(x, 0), b = e(x, 1), c = e(x, 2), d = e(x, 3);
  const int p = e(y, 0), q = e(y, 1), r = e(y, 2), s = e(y, 3);
  return static_cast<u64>((a * p + b * r) % 3 + 3 * ((a * q + b * s) % 3) + 9 * ((c * p + d * r) % 3) +
                          27 * ((c * q + d * s) % 3));
}
u64 mat3(int a, int b, int c, int d) { return static_cast<u64>(a + 3 * b + 9 * c + 27 * d); }

std::vector<int> rotation(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}
std::vector<int> reflection(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[i] = (n - i) % n;
  return p;
}
FinGroupPtr dihedral(int n) { return FinGroup::from_permutations({rotation(n), reflection(n)}, "D" + std::to_string(n)); }

FinGroupPtr small_group(const std::string& name) {
  if (name == "S3") return FinGroup::from_permutations({{1, 2, 0}, {1, 0, 2}}, name);
  if (name == "A4") return FinGroup::from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}}, name);
  if (name == "S4") return FinGroup::from_permutations({{1, 2, 3, 0}, {1, 0, 2, 3}}, name);
  if (name == "Q8") return FinGroup::from_codes(mat3(1, 0, 0, 1), {mat3(0, 2, 1, 0), mat3(1, 1, 1, 2)}, mat3_mul, name);
  if (name == "SL2(3)")
    return FinGroup::from_codes(mat3(1, 0, 0, 1), {mat3(1, 1, 0, 1), mat3(1, 0, 1, 1)}, mat3_mul, name);
  throw InvalidArgument("unknown corpus group " + name);
}

}  // namespace

std::vector<NamedGroup> group_corpus() {
  std::vector<NamedGroup> out;
  for (int n : {1, 2, 3, 4, 5, 6, 8, 9, 12}) out.push_back({"Z/" + std::to_string(n), FinGroup::cyclic(n)});
  out.push_back({"Z/2xZ/2", FinGroup::abelian(FinAb({2, 2}))});
  out.push_back({"Z/2xZ/2xZ/2", FinGroup::abelian(FinAb({2, 2, 2}))});
  out.push_back({"Z/3xZ/3", FinGroup::abelian(FinAb({3, 3}))});
  out.push_back({"Z/2xZ/4", FinGroup::abelian(FinAb({2, 4}))});
  for (const char* name : {"S3", "A4", "S4", "Q8", "SL2(3)"}) out.push_back({name, small_group(name)});
  for (int n : {4, 5, 6, 8}) out.push_back({"D" + std::to_string(n), dihedral(n)});
  out.push_back({"S3xZ/2", FinGroup::direct_product(small_group("S3"), FinGroup::cyclic(2))});
  out.push_back({"S3xZ/3", FinGroup::direct_product(small_group("S3"), FinGroup::cyclic(3))});
  out.push_back({"S3xS3", FinGroup::direct_product(small_group("S3"), small_group("S3"))});
  out.push_back({"GL2(3)", gl_truncated(3, 2, 1)});
  return out;
}

CorpusComplex torsor_corpus_entry(std::uint64_t seed, int i) {
  static const std::vector<std::string> gs{"Z/1", "Z/2", "S3", "Z/4", "Q8", "D4", "A4", "S4", "SL2(3)", "Z/6"};
  static const std::vector<std::vector<i64>> ts{{2}, {3}, {4}, {6}, {2, 2}, {12}, {2, 6}, {5}};
  const std::string& gname = gs[static_cast<std::size_t>(i) % gs.size()];
  const auto& tfactors = ts[static_cast<std::size_t>(i / static_cast<int>(gs.size()) + i) % ts.size()];
  FinGroupPtr g;
  if (gname == "Z/1") g = FinGroup::cyclic(1);
  else if (gname == "Z/2") g = FinGroup::cyclic(2);
  else if (gname == "Z/4") g = FinGroup::cyclic(4);
  else if (gname == "Z/6") g = FinGroup::cyclic(6);
  else if (gname == "D4") g = dihedral(4);
  else g = small_group(gname);
  const FinAb t(tfactors);
  TorsorOptions opt;
  opt.twisted = i % 2 == 1;
  opt.single_regular = i % 25 == 0;
  const std::uint64_t s = seed * 1000003u + static_cast<std::uint64_t>(i);
  return CorpusComplex{"#" + std::to_string(i) + " G=" + gname + " T=" + t.str() + (opt.twisted ? " twisted" : ""),
                       make_torsor_complex(g, t, s, opt)};
}

PermComplex fixed_point_complex(i64 ell) {
  FinGroupPtr g = FinGroup::cyclic(1);
  FinAb t({ell});
  std::vector<int> all;
  for (int x = 0; x < ell; ++x) all.push_back(x);
  return PermComplex(g, t, 0, {{Orbit{all}}}, {IntMatrix{}});
}

// ------------------------------------------------------------------ results

bool SuiteResult::pass() const {
  return std::all_of(points.begin(), points.end(), [](const Report& r) { return r.pass(); });
}

Json SuiteResult::to_json(const Config& cfg) const {
  Json pts = Json::array();
  std::size_t failed = 0;
  for (const auto& r : points) {
    pts.push_back(report_to_json(r));
    if (!r.pass()) ++failed;
  }
  return Json{{"suite", suite},
              {"pass", pass()},
              {"points_total", points.size()},
              {"points_failed", failed},
              {"config", cfg.to_json()},
              {"points", pts}};
}

// -------------------------------------------------------------------- suites

namespace {

std::string exps(const AbChar& c) {
  std::ostringstream os;
  os << '[';
  const auto e = c.exponents();
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ']';
  return os.str();
}

// First failure of pred over 0..count-1, or "" when all hold.
template <class Pred>
std::string first_failure(std::size_t count, Pred pred) {
  for (std::size_t i = 0; i < count; ++i) {
    std::string w = pred(i);
    if (!w.empty()) return w;
  }
  return "";
}

void add_check(Report& r, const std::string& name, const std::string& witness, const std::string& ok = "") {
  r.add(name, witness.empty(), witness.empty() ? ok : witness);
}

i64 realizing_degree(i64 ell, i64 order) { return order == 1 ? 1 : multiplicative_order(mod(ell, order), order); }

// --- teichmueller

std::vector<Report> suite_teichmueller(const Config& cfg) {
  struct Pt {
    i64 ell;
    int k;
  };
  std::vector<Pt> pts;
  for (i64 ell : cfg.primes)
    for (int k = 1; ipow(ell, k) <= std::min<i64>(cfg.grid.max_size, cfg.caps.field_size); ++k) pts.push_back({ell, k});
  return parallel_map<Report>(pts.size(), cfg.threads, [&](std::size_t i) {
    const auto [ell, k] = pts[i];
    const FieldPtr f = make_field(ell, k);
    Report r;
    r.title = "F_" + std::to_string(ell) + "^" + std::to_string(k);
    const i64 units = f->size() - 1;
    const FFCode g = f->generator();
    const RootOfUnity tg = f->teich_lift(g);
    add_check(r, "generator-order", tg.order() == units ? "" : "teich(generator) has order " + std::to_string(tg.order()));
    add_check(r, "multiplicative", first_failure(static_cast<std::size_t>(units), [&](std::size_t d) -> std::string {
                const FFCode x = f->exp(static_cast<i64>(d));
                if (f->teich_lift(f->mul(x, g)) != f->teich_lift(x) + tg) return "x = " + f->str(x);
                return "";
              }));
    add_check(r, "inverse", first_failure(static_cast<std::size_t>(units), [&](std::size_t d) -> std::string {
                const FFCode x = f->exp(static_cast<i64>(d));
                if (f->teich_inverse(f->teich_lift(x)) != x || f->teich_lift(x).order() != f->element_order(x))
                  return "x = " + f->str(x);
                return "";
              }));
    std::string tower;
    for (int d = 1; d < k && tower.empty(); ++d) {
      if (k % d != 0) continue;
      const FieldPtr sub = make_field(ell, d);
      for (i64 e = 0; e < sub->size() - 1 && tower.empty(); ++e) {
        const FFCode y = sub->exp(e);
        if (f->teich_lift(f->embed_from(*sub, y)) != sub->teich_lift(y))
          tower = "y = " + sub->str(y) + " in F_" + std::to_string(ell) + "^" + std::to_string(d);
      }
    }
    add_check(r, "tower-compatible", tower);
    std::string section;
    for (i64 a = 0; a < units && section.empty(); ++a) {
      const RootOfUnity z(a, units);
      if (r_ell_project(teich_section(z, ell), ell) != z) section = "z = " + z.str();
    }
    add_check(r, "section", section);
    return r;
  });
}

// --- torus

std::vector<Report> suite_torus(const Config& cfg) {
  const auto pts = cfg.torus_points();
  return parallel_map<Report>(pts.size(), cfg.threads, [&](std::size_t i) {
    const TorusPoint tp = pts[i];
    Report r;
    r.title = GridPoint{tp, 0}.str();
    const TorusPtr t = build_torus(tp.q, tp.n, tp.h);
    try {
      t->verify();
      r.add("structure", true);
    } catch (const CheckFailed& e) {
      r.add("structure", false, e.what());
    }
    const i64 qn = ipow(tp.q, tp.n);
    const i64 t1 = ipow(qn, tp.h - 1);
    const i64 order = t->unit_group().order();
    add_check(r, "order", order == (qn - 1) * t1 ? "" : "|T_h| = " + std::to_string(order), std::to_string(order));
    const AbSubgroup sub1 = t->filtration_subgroup(1);
    add_check(r, "filtration-order", sub1.group.order() == t1 ? "" : "|T^1_h| = " + std::to_string(sub1.group.order()),
              std::to_string(t1));
    const SplitSES ses = t->split_ses();
    std::string w;
    if (ses.quotient.order() != qn - 1 || ses.quotient.rank() > 1) w = "quotient is " + ses.quotient.str();
    if (w.empty() && ses.kernel.group.order() != t1) w = "kernel has order " + std::to_string(ses.kernel.group.order());
    if (w.empty() && !ses.projection.compose(ses.splitting).is_identity()) w = "projection o splitting != id";
    if (w.empty())
      for (const auto& x : t->filtration_generators(1))
        if (ses.projection.apply(x) != ses.quotient.zero()) w = "T^1 not in the kernel";
    add_check(r, "split-exact", w);
    std::string f;
    if (!(ses.projection.compose(t->frobenius()) == ses.quotient_frobenius.compose(ses.projection)))
      f = "projection is not Frobenius-equivariant";
    else if (!(t->frobenius().compose(ses.splitting) == ses.splitting.compose(ses.quotient_frobenius)))
      f = "splitting is not Frobenius-equivariant";
    add_check(r, "frobenius-equivariant", f);
    return r;
  });
}

// --- lifts

std::vector<Report> suite_lifts(const Config& cfg) {
  const auto pts = cfg.grid_points();
  return parallel_map<Report>(pts.size(), cfg.threads, [&](std::size_t i) {
    const GridPoint gp = pts[i];
    Report r;
    r.title = gp.str();
    const TorusPtr t = build_torus(gp.torus.q, gp.torus.n, gp.torus.h);
    const i64 expected = ipow(gp.ell, lift_exponent(gp.torus.q, gp.torus.n, gp.ell));
    const auto psis = enumerate_chars(t, Coefficient{gp.ell});
    std::string size_w, red_w, frob_w;
    i64 total = 0;
    for (const auto& psi : psis) {
      const auto lifts = lifts_enum(psi);
      total += static_cast<i64>(lifts.size());
      if (size_w.empty() && static_cast<i64>(lifts.size()) != expected)
        size_w = "psi " + exps(psi.level_part) + " has " + std::to_string(lifts.size()) + " lifts";
      if (red_w.empty())
        for (const auto& th : lifts)
          if (!(r_ell(th, gp.ell) == psi)) {
            red_w = "lift " + exps(th.level_part) + " of " + exps(psi.level_part) + " reduces elsewhere";
            break;
          }
      if (frob_w.empty() && gp.torus.n > 1) {
        std::vector<TorusChar> twisted;
        for (const auto& th : lifts) twisted.push_back(th.frobenius_twist());
        std::sort(twisted.begin(), twisted.end());
        if (twisted != lifts_enum(psi.frobenius_twist())) frob_w = "psi " + exps(psi.level_part);
      }
    }
    add_check(r, "fiber-size", size_w,
              std::to_string(psis.size()) + " characters, " + std::to_string(expected) + " lifts each");
    add_check(r, "reduces-to-psi", red_w);
    add_check(r, "frobenius-equivariant", frob_w);
    add_check(r, "partition", total == t->unit_group().order() ? "" : "total lifts " + std::to_string(total));
    return r;
  });
}

// --- position

std::vector<Report> suite_position(const Config& cfg) {
  const auto pts = cfg.grid_points();
  return parallel_map<Report>(pts.size(), cfg.threads, [&](std::size_t i) {
    const GridPoint gp = pts[i];
    Report r;
    r.title = gp.str();
    const TorusPtr t = build_torus(gp.torus.q, gp.torus.n, gp.torus.h);
    std::string w;
    std::size_t sg = 0;
    const auto chars = enumerate_chars(t, Coefficient{});
    for (const auto& th : chars) {
      const bool a = is_strongly_general(th);
      sg += a;
      if (w.empty() && a != is_strongly_general(r_ell(th, gp.ell)))
        w = "theta " + exps(th.level_part) + (a ? " is" : " is not") + " strongly general, its reduction differs";
    }
    add_check(r, "strongly-general-preserved", w,
              std::to_string(sg) + " of " + std::to_string(chars.size()) + " strongly general");
    return r;
  });
}

// --- projectivity

std::vector<Report> suite_projectivity(const Config& cfg) {
  const auto corpus = group_corpus();
  return parallel_map<Report>(corpus.size(), cfg.threads, [&](std::size_t i) {
    const auto& [name, g] = corpus[i];
    Report r;
    r.title = name;
    const auto subs = all_subgroups(g);
    for (i64 ell : cfg.primes) {
      const CoeffSpec spec = CoeffSpec::finite(ell, 1);
      std::string w;
      std::size_t projective = 0;
      for (std::size_t s = 0; s < subs.size(); ++s) {
        const bool verdict = is_projective_perm(subs[s], spec);
        projective += verdict;
        if (verdict != (subs[s].group->order() % ell != 0) && w.empty())
          w = "subgroup #" + std::to_string(s) + " of order " + std::to_string(subs[s].group->order()) +
              (verdict ? " judged projective" : " judged not projective");
      }
      add_check(r, "ell=" + std::to_string(ell), w,
                std::to_string(projective) + " of " + std::to_string(subs.size()) + " projective");
    }
    return r;
  });
}

// --- induction-square

std::vector<Report> suite_induction(const Config& cfg) {
  const auto corpus = group_corpus();
  return parallel_map<Report>(corpus.size(), cfg.threads, [&](std::size_t i) {
    const auto& [name, g] = corpus[i];
    Report r;
    r.title = name;
    const auto subs = all_subgroups(g);
    std::map<i64, std::string> witness;
    std::size_t classes = 0;
    for (const auto& h : subs) {
      for (const auto& k : all_subgroups(h.group)) {
        std::vector<GClass> xs{permutation_class(k, Coefficient{})};
        const auto lambdas = linear_characters(k.group);
        for (std::size_t j = 1; j < lambdas.size() && j <= 2; ++j) xs.push_back(induce(k, linear_class(k.group, lambdas[j])));
        for (const auto& x : xs) {
          ++classes;
          const GClass up = induce(h, x);
          for (i64 ell : cfg.primes) {
            if (!witness[ell].empty()) continue;
            if (!(decomposition_map(up, ell) == induce(h, decomposition_map(x, ell))))
              witness[ell] = "H of order " + std::to_string(h.group->order()) + ", class " + x.str();
          }
        }
      }
    }
    for (i64 ell : cfg.primes)
      add_check(r, "ell=" + std::to_string(ell), witness[ell], std::to_string(classes) + " classes");
    return r;
  });
}

// --- isotypic

std::string dims_str(const std::vector<std::size_t>& d) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ']';
  return os.str();
}

std::vector<AbChar> ell_prime_chars(const FinAb& t, i64 ell) {
  std::vector<AbChar> out;
  for (auto& c : dual_enumerate(t))
    if (c.order() % ell != 0) out.push_back(std::move(c));
  return out;
}

std::vector<Report> suite_isotypic(const Config& cfg) {
  const std::size_t count = static_cast<std::size_t>(cfg.torsor_complexes);
  auto reports = parallel_map<Report>(count, cfg.threads, [&](std::size_t i) {
    const auto entry = torsor_corpus_entry(cfg.seed, static_cast<int>(i));
    const PermComplex& c = entry.complex;
    Report r;
    r.title = entry.label;
    add_check(r, "t-free", c.is_t_free() ? "" : "complex is not T-free");
    for (i64 ell : cfg.primes) {
      if (ell > 5) continue;
      std::string w;
      std::size_t chars = 0;
      for (const auto& theta : ell_prime_chars(c.t(), ell)) {
        ++chars;
        const CoeffSpec spec = CoeffSpec::finite(ell, static_cast<int>(realizing_degree(ell, theta.order())));
        const LinearComplex plain = isotypic(c, theta, spec);
        const LinearComplex derived = derived_isotypic(c, theta, spec, c.hi() - c.lo() + 1);
        auto pd = plain.homology_dims();
        pd.resize(derived.homology_dims().size(), 0);
        const auto dd = derived.homology_dims();
        if (pd != dd) {
          w = "theta " + exps(theta) + ": plain " + dims_str(pd) + " derived " + dims_str(dd);
          break;
        }
        const auto ph = plain.homology(), dh = derived.homology();
        for (std::size_t d = 0; d < ph.size() && w.empty(); ++d)
          if (!(ph[d] == dh[d])) w = "theta " + exps(theta) + " degree " + std::to_string(c.lo() + static_cast<int>(d));
        if (!w.empty()) break;
      }
      add_check(r, "ell=" + std::to_string(ell), w, std::to_string(chars) + " characters");
    }
    return r;
  });
  // Non-free counterexample: Tor persists in every degree up to the truncation.
  for (i64 ell : {i64{2}, i64{3}}) {
    Report r;
    r.title = "non-free fixed point T=Z/" + std::to_string(ell);
    const PermComplex c = fixed_point_complex(ell);
    const AbChar triv = AbChar::trivial(c.t());
    const CoeffSpec spec = CoeffSpec::finite(ell, 1);
    const auto dd = derived_isotypic(c, triv, spec, cfg.derived_truncation).homology_dims();
    const auto pd = isotypic(c, triv, spec).homology_dims();
    const bool persists = dd.size() == static_cast<std::size_t>(cfg.derived_truncation) + 1 &&
                          std::all_of(dd.begin(), dd.end(), [](std::size_t x) { return x == 1; });
    r.add("tor-persists", persists, "derived " + dims_str(dd));
    r.add("differs-from-plain", pd.size() == 1 && dd.size() > 1, "plain " + dims_str(pd));
    reports.push_back(std::move(r));
  }
  return reports;
}

// --- euler-reduction

std::vector<Report> suite_euler(const Config& cfg) {
  const std::size_t count = static_cast<std::size_t>(cfg.torsor_complexes);
  return parallel_map<Report>(count, cfg.threads, [&](std::size_t i) {
    const auto entry = torsor_corpus_entry(cfg.seed, static_cast<int>(i));
    const PermComplex& c = entry.complex;
    Report r;
    r.title = entry.label;
    const GClass e0 = euler_class(c, CoeffSpec::cyclotomic(1));
    const GClass h0 = euler_class(base_change(c, CoeffSpec::cyclotomic(1)));
    add_check(r, "trace-formula", h0 == e0 ? "" : "homology " + h0.str() + " vs traces " + e0.str());
    for (i64 ell : cfg.primes) {
      if (ell > 5) continue;
      const CoeffSpec fspec = CoeffSpec::finite(ell, 1);
      const GClass el = euler_class(base_change(c, fspec));
      const GClass red = decomposition_map(h0, ell);
      add_check(r, "untwisted ell=" + std::to_string(ell), red == el ? "" : red.str() + " vs " + el.str());
      std::string w;
      for (const auto& theta : ell_prime_chars(c.t(), ell)) {
        const CoeffSpec zero = CoeffSpec::cyclotomic(std::max<i64>(1, theta.order()));
        const CoeffSpec modl = CoeffSpec::finite(ell, static_cast<int>(realizing_degree(ell, theta.order())));
        const GClass a = decomposition_map(euler_class(isotypic(c, theta, zero)), ell);
        const GClass b = euler_class(isotypic(c, theta, modl));
        const GClass tr = euler_class(c, modl, theta);
        if (!(a == b) || !(b == tr)) {
          w = "theta " + exps(theta) + ": " + a.str() + " vs " + b.str() + " vs traces " + tr.str();
          break;
        }
      }
      add_check(r, "twisted ell=" + std::to_string(ell), w);
    }
    return r;
  });
}

// --- weil

std::vector<Report> suite_weil(const Config& cfg) {
  const auto pts = cfg.grid_points();
  auto reports = parallel_map<Report>(pts.size(), cfg.threads, [&](std::size_t i) {
    const GridPoint gp = pts[i];
    Report r;
    r.title = gp.str();
    const TorusPtr t = build_torus(gp.torus.q, gp.torus.n, gp.torus.h);
    std::string w;
    std::size_t count = 0;
    for (const auto& th : enumerate_chars(t, Coefficient{})) {
      if (!is_strongly_general(th)) continue;
      ++count;
      try {
        if (!(r_ell_param(sigma(th, t->n()), gp.ell) == sigma(r_ell(th, gp.ell), t->n())))
          w = "theta " + exps(th.level_part);
      } catch (const CheckFailed& e) {
        w = "theta " + exps(th.level_part) + ": " + e.what();
      }
      if (!w.empty()) break;
    }
    add_check(r, "square", w, std::to_string(count) + " strongly general characters");
    return r;
  });
  const auto tori = cfg.torus_points();
  auto models = parallel_map<Report>(tori.size(), cfg.threads, [&](std::size_t i) {
    const TorusPoint tp = tori[i];
    Report r;
    r.title = "models " + GridPoint{tp, 0}.str();
    const TorusPtr t = build_torus(tp.q, tp.n, tp.h);
    std::map<std::vector<TorusChar>, TorusChar> by_sigma;
    std::string sep, ip;
    std::vector<TorusChar> reps;
    std::size_t orbits = 0, checked = 0, skipped = 0;
    for (const auto& th : enumerate_chars(t, Coefficient{})) {
      if (!is_strongly_general(th)) continue;
      auto orbit = frobenius_orbit(th);
      const TorusChar rep = *std::min_element(orbit.begin(), orbit.end());
      const auto s = sigma(th, t->n());
      auto [it, fresh] = by_sigma.try_emplace(s.orbit, rep);
      if (!fresh && !(it->second == rep) && sep.empty())
        sep = "theta " + exps(th.level_part) + " and " + exps(it->second.level_part) + " share sigma";
      if (!(rep == th)) continue;
      ++orbits;
      if (tp.n > 1) reps.push_back(th);
    }
    const std::size_t nr = reps.size();
    std::size_t stride = nr > 1 ? nr / 2 + 1 : 1;
    while (nr > 1 && std::gcd(stride, nr) != 1) ++stride;
    for (std::size_t k = 0; k < nr && ip.empty(); ++k) {
      if (cfg.weil_models_per_torus > 0 && checked >= static_cast<std::size_t>(cfg.weil_models_per_torus)) break;
      const TorusChar& th = reps[(k * stride) % nr];
      try {
        const WeilModel m = build_model(th, t->n(), cfg.weil_model_order);
        const GClass ind = m.induced(th);
        const CycloNumber norm = inner_product(ind, ind);
        ++checked;
        if (!(norm == CycloNumber(1))) ip = "theta " + exps(th.level_part) + ": <Ind, Ind> = " + norm.str();
      } catch (const CapExceeded&) {
        ++skipped;
      }
    }
    add_check(r, "sigma-separates-orbits", sep, std::to_string(orbits) + " orbits");
    add_check(r, "induced-norm-one", ip,
              std::to_string(checked) + " models, " + std::to_string(skipped) + " above the order bound");
    return r;
  });
  for (auto& m : models) reports.push_back(std::move(m));
  return reports;
}

// --- diagram

std::vector<Report> suite_diagram(const Config& cfg) {
  const auto pts = cfg.diagram_points();
  return parallel_map<Report>(pts.size(), cfg.threads, [&](std::size_t i) {
    const GridPoint gp = pts[i];
    const TorusPtr t = build_torus(gp.torus.q, gp.torus.n, gp.torus.h);
    FiniteLevelProvider provider = synthetic_provider(t, cfg.seed);
    if (cfg.tamper) provider = tampered_provider(provider, gp.ell);
    DiagramOptions opt;
    opt.general = cfg.general;
    const CdFunction cd = CdFunction::level_proxy();
    Report r = verify_diagram_all(t, gp.ell, provider, cd, opt);
    r.title = gp.str() + " provider " + provider.name;
    const Report cdr = cd_validate(cd, {t}, {gp.ell});
    r.merge(cdr, "cd " + cd.name + ": ");
    if (!cfg.tamper && !cfg.general && lift_exponent(gp.torus.q, gp.torus.n, gp.ell) > 0) {
      const Report neg = verify_diagram_all(t, gp.ell, tampered_provider(provider, gp.ell), cd, opt);
      std::string w;
      for (const auto& c : neg.checks)
        if (!c.pass && c.asserted) {
          w = c.name + ": " + c.witness;
          break;
        }
      r.add("negative-control", !neg.pass(), w.empty() ? "tampered provider was not detected" : w);
    }
    return r;
  });
}

// --- multiplicity

std::vector<Report> suite_multiplicity(const Config& cfg) {
  std::vector<Report> out;
  {
    const TorusPtr t = build_torus(2, 2, 1);
    const FinGroupPtr gt = FinGroup::direct_product(FinGroup::cyclic(1), FinGroup::abelian(t->unit_group()));
    Report r = naive_multiplicity_check(regular_class(gt, Coefficient{}), AbChar::trivial(t->unit_group()), 3);
    r.title = "regular module q=2 n=2 h=1 ell=3";
    out.push_back(std::move(r));
  }
  struct Case {
    TorusPoint torus;
    i64 ell;
  };
  std::vector<Case> cases;
  for (const TorusPoint tp : {TorusPoint{2, 2, 1}, TorusPoint{2, 2, 2}, TorusPoint{3, 2, 1}})
    for (i64 ell : cfg.primes)
      if (ell != prime_of(tp.q) && lift_exponent(tp.q, tp.n, ell) > 0) cases.push_back({tp, ell});
  const std::size_t total = static_cast<std::size_t>(cfg.virtual_characters);
  auto reports = parallel_map<Report>(cases.size(), cfg.threads, [&](std::size_t ci) {
    const Case cs = cases[ci];
    const TorusPtr t = build_torus(cs.torus.q, cs.torus.n, cs.torus.h);
    const FinAb& T = t->unit_group();
    const FinGroupPtr gt = FinGroup::direct_product(small_group("S3"), FinGroup::abelian(T));
    const auto subs = all_subgroups(gt);
    std::mt19937_64 rng(cfg.seed * 7919u + ci);
    auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    const auto psis = ell_prime_chars(T, cs.ell);
    const std::size_t mine = total / cases.size() + (ci < total % cases.size() ? 1 : 0);
    Report r;
    r.title = "random virtual characters on S3 x T, " + GridPoint{cs.torus, cs.ell}.str();
    std::string w;
    for (std::size_t k = 0; k < mine && w.empty(); ++k) {
      GClass m = GClass::zero(gt, Coefficient{});
      for (int term = 0; term < 3; ++term) {
        const Subgroup& h = subs[pick(subs.size())];
        const auto lambdas = linear_characters(h.group);
        const auto coef = static_cast<long>(pick(7)) - 3;
        m = m + Rational(coef) * induce(h, linear_class(h.group, lambdas[pick(lambdas.size())]));
      }
      const AbChar& psi = psis[pick(psis.size())];
      const Report one = naive_multiplicity_check(m, psi, cs.ell);
      for (const auto& c : one.checks)
        if (c.asserted && !c.pass) w = "character #" + std::to_string(k) + ", psi " + exps(psi) + ": " + c.witness;
    }
    add_check(r, "sum-over-lifts", w, std::to_string(mine) + " characters");
    return r;
  });
  for (auto& r : reports) out.push_back(std::move(r));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"teichmueller", "torus",   "lifts", "position", "projectivity",
                                              "induction-square", "isotypic", "euler-reduction", "weil",
                                              "diagram",      "multiplicity"};
  return names;
}

SuiteResult run_suite(const std::string& name, const Config& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw InvalidArgument("unknown suite '" + name + "'");
  cfg.validate();
  set_limits(cfg.caps);
  SuiteResult res;
  res.suite = name;
  if (name == "teichmueller") res.points = suite_teichmueller(cfg);
  else if (name == "torus") res.points = suite_torus(cfg);
  else if (name == "lifts") res.points = suite_lifts(cfg);
  else if (name == "position") res.points = suite_position(cfg);
  else if (name == "projectivity") res.points = suite_projectivity(cfg);
  else if (name == "induction-square") res.points = suite_induction(cfg);
  else if (name == "isotypic") res.points = suite_isotypic(cfg);
  else if (name == "euler-reduction") res.points = suite_euler(cfg);
  else if (name == "weil") res.points = suite_weil(cfg);
  else if (name == "diagram") res.points = suite_diagram(cfg);
  else res.points = suite_multiplicity(cfg);
  return res;
}

}  // namespace ellchar
