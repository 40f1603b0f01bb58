#include "ellchar/io.hpp"

#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "ellchar/chars.hpp"
#include "ellchar/error.hpp"
#include "ellchar/limits.hpp"

namespace ellchar {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("json: missing key '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("json: bad value for '") + key + "': " + e.what());
  }
}

Coefficient coefficient_from(const Json& j) {
  if (!j.contains("ell") || j.at("ell").is_null()) return {};
  return Coefficient{j.at("ell").get<i64>()};
}

}  // namespace

void to_json(Json& j, const RootOfUnity& z) { j = z.str(); }

void from_json(const Json& j, RootOfUnity& z) {
  if (!j.is_string()) throw InvalidArgument("json: root of unity must be a string a/N");
  z = RootOfUnity::parse(j.get<std::string>());
}

void to_json(Json& j, const CycloNumber& x) {
  Json coords = Json::array();
  for (const auto& c : x.coords()) coords.push_back(rational_to_string(c));
  j = Json{{"conductor", x.conductor()}, {"coords", coords}};
}

void from_json(const Json& j, CycloNumber& x) {
  if (j.is_number_integer()) {
    x = CycloNumber(j.get<i64>());
    return;
  }
  std::vector<Rational> coords;
  for (const auto& c : field(j, "coords")) {
    if (c.is_number_integer())
      coords.emplace_back(static_cast<long>(c.get<i64>()));
    else
      coords.push_back(parse_rational(c.get<std::string>()));
  }
  x = CycloNumber(get<i64>(j, "conductor"), std::move(coords));
}

void to_json(Json& j, const FinAb& a) { j = Json{{"invariant_factors", a.invariant_factors()}}; }

void from_json(const Json& j, FinAb& a) { a = FinAb(get<std::vector<i64>>(j, "invariant_factors")); }

// -------------------------------------------------------------------- fields

Json field_to_json(const FieldPtr& f) {
  return Json{{"p", f->characteristic()},
              {"k", f->degree()},
              {"modulus", f->modulus()},
              {"generator", f->coeffs(f->generator())}};
}

FieldPtr field_from_json(const Json& j) {
  const i64 p = get<i64>(j, "p");
  const int k = get<int>(j, "k");
  std::optional<std::vector<i64>> modulus;
  if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<i64>>();
  FieldPtr f = make_field(p, k, modulus);
  if (j.contains("generator") && j.at("generator").get<std::vector<i64>>() != f->coeffs(f->generator()))
    throw InvalidArgument("json: field generator does not match the canonical generator for this modulus");
  return f;
}

// ------------------------------------------------------------ abelian groups

Json abchar_to_json(const AbChar& c) { return Json{{"values", c.values}}; }

AbChar abchar_from_json(const Json& j, const FinAb& domain) {
  AbChar c{domain, get<std::vector<RootOfUnity>>(j, "values")};
  if (c.values.size() != domain.rank()) throw InvalidArgument("json: character has the wrong number of values");
  c.validate();
  return c;
}

// --------------------------------------------------------------------- torus

Json torus_to_json(const TorusLevel& t) {
  Json frob = Json::array();
  for (const auto& img : t.frobenius().images) frob.push_back(img);
  std::vector<i64> filtration;
  for (int a = 1; a <= t.h(); ++a) filtration.push_back(t.filtration_subgroup(a).group.order());
  return Json{{"q", t.q()},
              {"n", t.n()},
              {"h", t.h()},
              {"order", t.unit_group().order()},
              {"invariant_factors", t.unit_group().invariant_factors()},
              {"frobenius", frob},
              {"filtration_orders", filtration}};
}

TorusPtr torus_from_json(const Json& j) {
  TorusPtr t = build_torus(get<i64>(j, "q"), get<int>(j, "n"), get<int>(j, "h"));
  if (j.contains("invariant_factors") &&
      j.at("invariant_factors").get<std::vector<i64>>() != t->unit_group().invariant_factors())
    throw InvalidArgument("json: torus invariant factors do not match (q, n, h)");
  return t;
}

Json torus_char_to_json(const TorusChar& c) {
  Json j{{"q", c.torus->q()},
         {"n", c.torus->n()},
         {"h", c.torus->h()},
         {"values", c.level_part.values},
         {"uniformizer",
          {{"valuation", rational_to_string(c.uniformizer.valuation)}, {"unit", c.uniformizer.unit}}}};
  j["ell"] = c.coeff.is_char0() ? Json(nullptr) : Json(c.coeff.ell);
  return j;
}

TorusChar torus_char_from_json(const Json& j, TorusPtr torus) {
  if (!torus) torus = build_torus(get<i64>(j, "q"), get<int>(j, "n"), get<int>(j, "h"));
  TorusChar c;
  c.torus = torus;
  c.level_part = abchar_from_json(j, torus->unit_group());
  c.coeff = coefficient_from(j);
  if (j.contains("uniformizer")) {
    const Json& u = j.at("uniformizer");
    if (u.contains("valuation")) {
      const Json& v = u.at("valuation");
      c.uniformizer.valuation = v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>());
    }
    if (u.contains("unit")) c.uniformizer.unit = u.at("unit").get<RootOfUnity>();
  }
  c.validate();
  return c;
}

Json weil_param_to_json(const WeilParam& p) {
  Json orbit = Json::array();
  for (const auto& c : p.orbit) orbit.push_back(torus_char_to_json(c));
  Json j{{"n", p.n}, {"orbit_size", p.orbit_size()}, {"irreducible", is_irreducible(p)}, {"orbit", orbit}};
  j["ell"] = p.coeff.is_char0() ? Json(nullptr) : Json(p.coeff.ell);
  return j;
}

// -------------------------------------------------------------------- groups

Json group_to_json(const FinGroup& g) {
  check_cap(g.order(), limits().table_order, "group table for JSON output");
  Json table = Json::array();
  for (int a = 0; a < g.order(); ++a) {
    std::vector<int> row(static_cast<std::size_t>(g.order()));
    for (int b = 0; b < g.order(); ++b) row[b] = g.mul(a, b);
    table.push_back(std::move(row));
  }
  return Json{{"name", g.name()}, {"order", g.order()}, {"table", table}};
}

FinGroupPtr group_from_json(const Json& j) {
  const std::string name = j.contains("name") ? j.at("name").get<std::string>() : "";
  if (j.contains("table")) return FinGroup::from_table(get<std::vector<std::vector<int>>>(j, "table"), name);
  if (j.contains("permutations"))
    return FinGroup::from_permutations(get<std::vector<std::vector<int>>>(j, "permutations"), name);
  if (j.contains("cyclic")) return FinGroup::cyclic(get<i64>(j, "cyclic"));
  throw InvalidArgument("json: group needs 'table', 'permutations' or 'cyclic'");
}

Json gclass_to_json(const GClass& c) {
  std::vector<int> reps;
  if (c.coeff.is_char0()) {
    for (int k = 0; k < c.group->num_classes(); ++k) reps.push_back(c.group->class_rep(k));
  } else {
    for (int k : c.group->regular_classes(c.coeff.ell)) reps.push_back(c.group->class_rep(k));
  }
  Json j{{"tag", c.coeff.is_char0() ? "char0" : "mod-ell"}, {"classes", reps}, {"values", c.values}};
  j["ell"] = c.coeff.is_char0() ? Json(nullptr) : Json(c.coeff.ell);
  return j;
}

GClass gclass_from_json(const Json& j, const FinGroupPtr& g) {
  const std::string tag = get<std::string>(j, "tag");
  GClass c;
  c.group = g;
  if (tag == "char0") {
    c.coeff = Coefficient{};
  } else if (tag == "mod-ell") {
    c.coeff = Coefficient{get<i64>(j, "ell")};
    if (c.coeff.ell < 2) throw InvalidArgument("json: mod-ell class needs a prime ell");
  } else {
    throw InvalidArgument("json: unknown class tag '" + tag + "'");
  }
  c.values = get<std::vector<CycloNumber>>(j, "values");
  const std::size_t expected = c.coeff.is_char0() ? static_cast<std::size_t>(g->num_classes())
                                                  : g->regular_classes(c.coeff.ell).size();
  if (c.values.size() != expected)
    throw InvalidArgument("json: class has " + std::to_string(c.values.size()) + " values, expected " +
                          std::to_string(expected));
  return c;
}

// ------------------------------------------------------------------ complexes

Json complex_to_json(const PermComplex& c) {
  Json terms = Json::array(), diffs = Json::array();
  for (int d = c.lo(); d <= c.hi(); ++d) {
    Json term = Json::array();
    for (const auto& o : c.orbits(d)) term.push_back(Json{{"stabilizer", o.stabilizer}});
    terms.push_back(term);
    if (d == c.lo()) continue;
    const IntMatrix& m = c.differential(d);
    Json entries = Json::array();
    for (std::size_t r = 0; r < m.size(); ++r)
      for (std::size_t k = 0; k < m[r].size(); ++k)
        if (m[r][k] != 0) entries.push_back(Json::array({r, k, m[r][k]}));
    diffs.push_back(Json{{"degree", d}, {"rows", c.size(d - 1)}, {"cols", c.size(d)}, {"entries", entries}});
  }
  return Json{{"g", group_to_json(*c.g())}, {"t", c.t()}, {"lo", c.lo()}, {"terms", terms}, {"differentials", diffs}};
}

PermComplex complex_from_json(const Json& j) {
  FinGroupPtr g = group_from_json(field(j, "g"));
  FinAb t = get<FinAb>(j, "t");
  const int lo = j.contains("lo") ? j.at("lo").get<int>() : 0;
  std::vector<std::vector<Orbit>> terms;
  for (const auto& term : field(j, "terms")) {
    std::vector<Orbit> orbits;
    for (const auto& o : term) orbits.push_back(Orbit{get<std::vector<int>>(o, "stabilizer")});
    terms.push_back(std::move(orbits));
  }
  if (terms.empty()) throw InvalidArgument("json: complex has no terms");
  const i64 gt = checked_mul(g->order(), t.order());
  auto term_size = [&](std::size_t i) {
    i64 s = 0;
    for (const auto& o : terms[i]) {
      if (o.stabilizer.empty() || gt % static_cast<i64>(o.stabilizer.size()) != 0)
        throw InvalidArgument("json: stabilizer order does not divide |G x T|");
      s += gt / static_cast<i64>(o.stabilizer.size());
    }
    return static_cast<std::size_t>(s);
  };
  std::vector<IntMatrix> diffs(terms.size());
  for (std::size_t i = 1; i < terms.size(); ++i) diffs[i] = IntMatrix(term_size(i - 1), std::vector<i64>(term_size(i), 0));
  if (j.contains("differentials"))
    for (const auto& d : j.at("differentials")) {
      const int deg = get<int>(d, "degree");
      if (deg <= lo || deg >= lo + static_cast<int>(terms.size()))
        throw InvalidArgument("json: differential degree " + std::to_string(deg) + " out of range");
      IntMatrix& m = diffs[static_cast<std::size_t>(deg - lo)];
      for (const auto& e : field(d, "entries")) {
        const auto r = e.at(0).get<std::size_t>(), k = e.at(1).get<std::size_t>();
        if (r >= m.size() || (m.empty() ? true : k >= m[0].size()))
          throw InvalidArgument("json: differential entry out of range in degree " + std::to_string(deg));
        m[r][k] = e.at(2).get<i64>();
      }
    }
  PermComplex c(g, t, lo, std::move(terms), std::move(diffs));
  c.verify();
  return c;
}

// ------------------------------------------------------------------- reports

Json report_to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name},
                          {"result", c.pass ? "pass" : "fail"},
                          {"witness", c.witness},
                          {"asserted", c.asserted}});
  return Json{{"title", r.title}, {"pass", r.pass()}, {"checks", checks}};
}

// ---------------------------------------------------------------------- files

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("json: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace ellchar

namespace ellchar {

namespace {

Json provider_entries(const TorusPtr& torus, Coefficient coeff, const std::function<GClass(const TorusChar&)>& fn) {
  Json out = Json::array();
  for (const auto& th : enumerate_chars(torus, coeff))
    out.push_back(Json{{"theta", abchar_to_json(th.level_part)}, {"class", gclass_to_json(fn(th))}});
  return out;
}

std::function<GClass(const TorusChar&)> provider_lookup(const Json& entries, const FinAb& t, const FinGroupPtr& g,
                                                        const std::string& what) {
  auto table = std::make_shared<std::map<std::vector<i64>, GClass>>();
  for (const auto& e : entries) table->emplace(abchar_from_json(e.at("theta"), t).exponents(), gclass_from_json(e.at("class"), g));
  return [table, what](const TorusChar& th) {
    auto it = table->find(th.level_part.exponents());
    if (it == table->end()) throw InvalidArgument("provider file: no " + what + " class for the requested character");
    return it->second;
  };
}

}  // namespace

Json provider_to_json(const FiniteLevelProvider& p, const TorusPtr& torus, i64 ell) {
  Json j{{"name", p.name}, {"q", torus->q()}, {"n", torus->n()}, {"h", torus->h()}, {"group", group_to_json(*p.group)}};
  j["char0"] = provider_entries(torus, Coefficient{}, p.char0);
  if (p.mod_ell) {
    j["ell"] = ell;
    j["mod_ell"] = provider_entries(torus, Coefficient{ell}, p.mod_ell);
  }
  return j;
}

FiniteLevelProvider provider_from_json(const Json& j, const TorusPtr& torus) {
  if (get<i64>(j, "q") != torus->q() || get<int>(j, "n") != torus->n() || get<int>(j, "h") != torus->h())
    throw InvalidArgument("provider file: torus does not match");
  FiniteLevelProvider p;
  p.name = j.contains("name") ? j.at("name").get<std::string>() : "file";
  p.group = group_from_json(j.at("group"));
  p.char0 = provider_lookup(j.at("char0"), torus->unit_group(), p.group, "characteristic-zero");
  if (j.contains("mod_ell")) p.mod_ell = provider_lookup(j.at("mod_ell"), torus->unit_group(), p.group, "mod-ell");
  return p;
}

}  // namespace ellchar
