#include "ellchar/dlclass.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ellchar/error.hpp"
#include "ellchar/intmath.hpp"

namespace ellchar {

namespace {

std::string join_exponents(const std::vector<i64>& e) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ']';
  return os.str();
}

std::string describe(const TorusChar& t) {
  return "exponents " + join_exponents(t.level_part.exponents()) + ", varpi -> " + t.uniformizer.unit.str() +
         (t.coeff.is_char0() ? "" : " (mod " + std::to_string(t.coeff.ell) + ")");
}

i64 realizing_degree(i64 ell, i64 order) { return order == 1 ? 1 : multiplicative_order(mod(ell, order), order); }

}  // namespace

// ------------------------------------------------------------------ reports

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || !c.asserted; });
}

void Report::add(std::string name, bool pass, std::string witness, bool asserted) {
  checks.push_back(Check{std::move(name), pass, std::move(witness), asserted});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks) checks.push_back(Check{prefix + c.name, c.pass, c.witness, c.asserted});
}

// --------------------------------------------------------------- cd functions

CdFunction CdFunction::constant(int k) {
  return {"constant(" + std::to_string(k) + ")", [k](const TorusChar&) { return k; }};
}

CdFunction CdFunction::level_proxy() {
  return {"level", [](const TorusChar& t) { return level(t); }};
}

CdFunction CdFunction::uniformizer_order() {
  return {"uniformizer-order", [](const TorusChar& t) { return static_cast<int>(t.uniformizer.unit.order()); }};
}

// --------------------------------------------------------- full-space classes

bool operator==(const FullSpaceClass& a, const FullSpaceClass& b) {
  if (a.induction_marker != b.induction_marker) return false;
  if ((a.sign_exponent - b.sign_exponent) % 2 != 0) return false;
  if (!(a.finite_level == b.finite_level)) return false;
  const FullSpaceClass& lower = a.level_h <= b.level_h ? a : b;
  const FullSpaceClass& upper = a.level_h <= b.level_h ? b : a;
  if (stability_shift(upper.central_char.torus->n(), upper.level_h, lower.level_h) % 2 != 0) return false;
  if (lower.level_h == upper.level_h) return lower.central_char == upper.central_char;
  return lower.central_char.inflate(upper.central_char.torus) == upper.central_char;
}

FullSpaceClass build_full_class(const GClass& finite_level, const TorusChar& theta, const CdFunction& cd, int level_h) {
  if (!(finite_level.coeff == theta.coeff))
    throw InvalidArgument("build_full_class: class and central character have different coefficients");
  const int lv = level(theta);
  if (lv > level_h)
    throw InvalidArgument("build_full_class: character of level " + std::to_string(lv) + " on a level-" +
                          std::to_string(level_h) + " class");
  if (theta.torus->h() > level_h)
    throw InvalidArgument("build_full_class: central character is defined on T_" + std::to_string(theta.torus->h()));
  return FullSpaceClass{finite_level, theta, level_h, cd(theta)};
}

FullSpaceClass reduce_full_class(const FullSpaceClass& x, i64 ell) {
  if (!x.central_char.is_integral()) throw InvalidArgument("reduce_full_class: central character is not integral");
  if (!x.finite_level.coeff.is_char0()) throw InvalidArgument("reduce_full_class: class is already mod ell");
  FullSpaceClass r = x;
  r.finite_level = decomposition_map(x.finite_level, ell);
  r.central_char = r_ell(x.central_char, ell);
  return r;
}

// ------------------------------------------------------------------ providers

FiniteLevelProvider synthetic_provider(const TorusPtr& torus, std::uint64_t seed) {
  const FinGroupPtr g = gl_truncated(torus->q(), torus->n(), 1);
  const FinAb& t = torus->unit_group();
  TorsorOptions opt;
  opt.max_terms = 2;
  opt.max_orbits = 2;
  opt.twisted = true;
  // Orbits have at most 512 points.
  opt.min_stabilizer = static_cast<int>(std::min<i64>(g->order(), (g->order() * t.order() + 511) / 512));
  auto complex = std::make_shared<const PermComplex>(make_torsor_complex(g, t, seed, opt));
  FiniteLevelProvider p;
  p.name = "synthetic(seed=" + std::to_string(seed) + ")";
  p.group = g;
  p.char0 = [complex](const TorusChar& theta) {
    if (!theta.coeff.is_char0()) throw InvalidArgument("synthetic provider: expected a characteristic-zero character");
    return euler_class(*complex, CoeffSpec::cyclotomic(std::max<i64>(1, theta.level_part.order())), theta.level_part);
  };
  p.mod_ell = [complex](const TorusChar& psi) {
    if (psi.coeff.is_char0()) throw InvalidArgument("synthetic provider: expected a mod-ell character");
    const i64 ell = psi.coeff.ell;
    const int k = static_cast<int>(realizing_degree(ell, psi.level_part.order()));
    return euler_class(*complex, CoeffSpec::finite(ell, k), psi.level_part);
  };
  return p;
}

FiniteLevelProvider tampered_provider(const FiniteLevelProvider& p, i64 ell) {
  FiniteLevelProvider out = p;
  out.name = "tampered(" + p.name + ")";
  out.char0 = [inner = p.char0, g = p.group, ell](const TorusChar& theta) {
    GClass c = inner(theta);
    if (theta.level_part.order() % ell == 0) c = c + trivial_class(g, c.coeff);
    return c;
  };
  return out;
}

// ------------------------------------------------------------------- diagram

Report verify_diagram(const TorusChar& psi, const FiniteLevelProvider& provider, const CdFunction& cd,
                      const DiagramOptions& opt) {
  if (psi.coeff.is_char0()) throw InvalidArgument("verify_diagram: psi must be a mod-ell character");
  psi.validate();
  const i64 ell = psi.coeff.ell;
  const TorusLevel& T = *psi.torus;
  if (ell == T.p()) throw InvalidArgument("verify_diagram: ell must differ from p");
  if (opt.general ? !is_general(psi) : !is_strongly_general(psi))
    throw InvalidArgument(std::string("verify_diagram: psi is not ") + (opt.general ? "general" : "strongly general") +
                          " (" + describe(psi) + ")");
  const bool asserted = !opt.general;
  const auto lifts = lifts_enum(psi);
  Report rep;
  rep.title = "diagram q=" + std::to_string(T.q()) + " n=" + std::to_string(T.n()) + " h=" + std::to_string(T.h()) +
              " ell=" + std::to_string(ell) + " psi " + describe(psi);

  // (a)
  {
    std::string witness;
    for (const auto& th : lifts)
      if (!is_strongly_general(th)) {
        witness = "lift " + describe(th) + " is not strongly general";
        break;
      }
    rep.add("lifts-strongly-general", witness.empty(), witness, asserted);
  }
  // (b)
  {
    std::string witness;
    const WeilParam target = sigma(psi, T.n());
    for (const auto& th : lifts) {
      try {
        if (!(r_ell_param(sigma(th, T.n()), ell) == target)) witness = "r_ell sigma differs from sigma(psi) at lift " + describe(th);
      } catch (const CheckFailed& e) {
        witness = "lift " + describe(th) + ": " + e.what();
      }
      if (!witness.empty()) break;
    }
    rep.add("weil-square", witness.empty(), witness, asserted);
  }
  // Induced Weil classes on a joint finite model.
  {
    std::string witness;
    bool ran = true;
    try {
      const WeilModel model = build_joint_model(lifts, T.n());
      const GClass reduced = model.induced(psi);
      for (const auto& th : lifts) {
        GClass r = decomposition_map(model.induced(th), ell);
        if (!(r == reduced)) {
          witness = "lift " + describe(th) + ": " + r.str() + " vs " + reduced.str();
          break;
        }
      }
    } catch (const CapExceeded& e) {
      ran = false;
      witness = std::string("skipped: ") + e.what();
    }
    rep.add("weil-induced-reduction", witness.empty() || !ran, witness, asserted && ran);
  }
  // (c)
  {
    std::string witness;
    std::optional<FullSpaceClass> first;
    std::string first_name;
    for (const auto& th : lifts) {
      FullSpaceClass r = reduce_full_class(build_full_class(provider.char0(th), th, cd, T.h()), ell);
      if (!first) {
        first = r;
        first_name = describe(th);
      } else if (!(r == *first)) {
        witness = "lift " + describe(th) + " reduces to " + r.finite_level.str() + " but lift " + first_name +
                  " reduces to " + first->finite_level.str();
        break;
      }
    }
    rep.add("reduced-classes-agree", witness.empty(), witness, asserted);
    if (provider.mod_ell && first) {
      FullSpaceClass direct = build_full_class(provider.mod_ell(psi), psi, cd, T.h());
      const bool ok = direct == *first;
      rep.add("reduced-route", ok,
              ok ? "" : "reduce(build(theta)) = " + first->finite_level.str() + " but build(psi) = " + direct.finite_level.str(),
              asserted);
    }
  }
  // (d)
  {
    std::string witness;
    const int c0 = cd(lifts.front());
    for (const auto& th : lifts)
      if (cd(th) != c0) {
        witness = "cd(" + describe(th) + ") = " + std::to_string(cd(th)) + " but cd(" + describe(lifts.front()) +
                  ") = " + std::to_string(c0);
        break;
      }
    rep.add("cd-agrees", witness.empty(), witness, asserted);
  }
  return rep;
}

Report verify_diagram_all(const TorusPtr& torus, i64 ell, const FiniteLevelProvider& provider, const CdFunction& cd,
                          const DiagramOptions& opt) {
  Report rep;
  rep.title = "diagram q=" + std::to_string(torus->q()) + " n=" + std::to_string(torus->n()) +
              " h=" + std::to_string(torus->h()) + " ell=" + std::to_string(ell);
  std::size_t count = 0;
  for (const auto& psi : enumerate_chars(torus, Coefficient{ell})) {
    if (opt.general ? !is_general(psi) : !is_strongly_general(psi)) continue;
    rep.merge(verify_diagram(psi, provider, cd, opt), "psi " + join_exponents(psi.level_part.exponents()) + ": ");
    ++count;
  }
  rep.add("characters-checked", true, std::to_string(count), false);
  return rep;
}

// -------------------------------------------------------------- multiplicity

std::vector<AbChar> abstract_lifts(const AbChar& psi, i64 ell) {
  if (psi.order() % ell == 0) throw InvalidArgument("abstract_lifts: character must have ell' order");
  const auto& d = psi.domain.invariant_factors();
  std::vector<i64> lpart(d.size()), step(d.size());
  i64 count = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    lpart[i] = ipow(ell, valuation(d[i], ell));
    step[i] = d[i] / lpart[i];
    count = checked_mul(count, lpart[i]);
  }
  const auto base = psi.exponents();
  std::vector<AbChar> out;
  std::vector<i64> k(d.size(), 0);
  for (i64 c = 0; c < count; ++c) {
    std::vector<i64> e(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) e[i] = mod(base[i] + k[i] * step[i], d[i]);
    out.push_back(AbChar::from_exponents(psi.domain, e));
    for (std::size_t i = d.size(); i-- > 0;) {
      if (++k[i] < lpart[i]) break;
      k[i] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Report naive_multiplicity_check(const GClass& m, const AbChar& psi, i64 ell) {
  if (!m.coeff.is_char0()) throw InvalidArgument("naive_multiplicity_check: M must be a characteristic-zero class");
  Report rep;
  rep.title = "multiplicity ell=" + std::to_string(ell) + " psi " + join_exponents(psi.exponents());
  const auto lifts = abstract_lifts(psi, ell);
  std::vector<GClass> parts;
  for (const auto& th : lifts) parts.push_back(decomposition_map(naive_isotypic(m, th), ell));
  GClass lhs = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) lhs = lhs + parts[i];
  const GClass rhs = naive_isotypic(decomposition_map(m, ell), psi);
  rep.add("sum-over-lifts", lhs == rhs, lhs == rhs ? "" : "sum " + lhs.str() + " vs " + rhs.str());
  const bool equal_parts =
      std::all_of(parts.begin(), parts.end(), [&](const GClass& p) { return p == parts.front(); });
  if (equal_parts) {
    const GClass scaled = Rational(static_cast<long>(lifts.size())) * parts.front();
    rep.add("ell^m-factorization", scaled == rhs,
            std::to_string(lifts.size()) + " * " + parts.front().str() + (scaled == rhs ? "" : " vs " + rhs.str()));
  } else {
    rep.add("ell^m-factorization", false, "lift parts differ", false);
  }
  return rep;
}

// ------------------------------------------------------------------------ cd

Report cd_validate(const CdFunction& cd, const std::vector<TorusPtr>& tori, const std::vector<i64>& ells) {
  Report rep;
  rep.title = "cd " + cd.name;
  const std::vector<RootOfUnity> at_varpi{RootOfUnity(0, 1), RootOfUnity(1, 2), RootOfUnity(1, 3)};
  for (const auto& torus : tori) {
    const std::string where = "q=" + std::to_string(torus->q()) + " n=" + std::to_string(torus->n()) +
                              " h=" + std::to_string(torus->h());
    const auto gens1 = torus->filtration_generators(1);
    std::vector<TorusChar> chars;
    for (const auto& u : at_varpi)
      for (auto& c : enumerate_chars(torus, Coefficient{}, UniformizerValue{0, u})) chars.push_back(std::move(c));

    std::map<std::vector<RootOfUnity>, std::pair<int, TorusChar>> by_t1;
    std::string witness;
    for (const auto& c : chars) {
      std::vector<RootOfUnity> key;
      for (const auto& x : gens1) key.push_back(c.level_part(x));
      const int v = cd(c);
      auto [it, fresh] = by_t1.try_emplace(key, v, c);
      if (!fresh && it->second.first != v && witness.empty())
        witness = "cd(" + describe(c) + ") = " + std::to_string(v) + " but cd(" + describe(it->second.second) +
                  ") = " + std::to_string(it->second.first);
    }
    rep.add(where + " T^1-restriction", witness.empty(), witness);

    for (i64 ell : ells) {
      if (ell == torus->p()) continue;
      std::map<TorusChar, std::pair<int, TorusChar>> fibers;
      std::string fw;
      for (const auto& c : chars) {
        const int v = cd(c);
        auto [it, fresh] = fibers.try_emplace(r_ell(c, ell), v, c);
        if (!fresh && it->second.first != v && fw.empty())
          fw = "cd(" + describe(c) + ") = " + std::to_string(v) + " but cd(" + describe(it->second.second) +
               ") = " + std::to_string(it->second.first);
      }
      rep.add(where + " ell=" + std::to_string(ell) + " fibers", fw.empty(), fw);
    }
  }
  return rep;
}

}  // namespace ellchar
