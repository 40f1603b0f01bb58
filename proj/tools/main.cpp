// ellchar: command-line front end to the library and the verification suites.
//
// Exit status: 0 when every asserted check holds, 1 when a check fails,
// 2 for invalid arguments or configuration, 3 when a size cap is exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ellchar/chaincx.hpp"
#include "ellchar/chars.hpp"
#include "ellchar/dlclass.hpp"
#include "ellchar/error.hpp"
#include "ellchar/harness.hpp"
#include "ellchar/intmath.hpp"
#include "ellchar/io.hpp"
#include "ellchar/weil.hpp"

namespace {

using namespace ellchar;

struct Globals {
  std::string config_path;
  std::optional<i64> q;
  std::optional<int> n;
  std::optional<int> h;
  std::optional<i64> ell;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out;
  bool json = false;
};

Config load_config(const Globals& g) {
  Config cfg = Config::from_json(g.config_path.empty() ? Json::object() : read_json_file(g.config_path));
  if (g.q) cfg.grid.q = {*g.q};
  if (g.n) cfg.grid.n = {*g.n};
  if (g.h) cfg.grid.h = {*g.h};
  if (g.ell) cfg.grid.ell = {*g.ell};
  if (g.seed) cfg.seed = *g.seed;
  if (g.threads) cfg.threads = *g.threads;
  if (const char* env = std::getenv("ELLCHAR_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) throw InvalidArgument("ELLCHAR_CAP must be a positive integer");
    cfg.caps.enumeration = v;
  }
  cfg.validate();
  set_limits(cfg.caps);
  return cfg;
}

template <class T>
T single(const std::optional<T>& flag, const std::vector<T>& from_config, const char* name) {
  if (flag) return *flag;
  if (from_config.size() == 1) return from_config.front();
  throw InvalidArgument(std::string("--") + name + " is required");
}

TorusPtr torus_from_flags(const Globals& g, const Config& cfg) {
  return build_torus(single(g.q, cfg.grid.q, "q"), single(g.n, cfg.grid.n, "n"), single(g.h, cfg.grid.h, "h"));
}

i64 ell_from_flags(const Globals& g, const Config& cfg, i64 p) {
  const i64 ell = single(g.ell, cfg.grid.ell, "ell");
  if (!is_prime(ell)) throw InvalidArgument("--ell must be prime");
  if (ell == p) throw InvalidArgument("ell must differ from the residue characteristic p");
  return ell;
}

void emit(const Json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(path, j);
  }
}

Json read_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return parse_json(arg);
  return read_json_file(arg);
}

void print_report(const Report& r, bool failures_only) {
  std::cout << (r.pass() ? "PASS " : "FAIL ") << r.title << '\n';
  for (const auto& c : r.checks) {
    if (failures_only && (c.pass || !c.asserted)) continue;
    std::cout << "  " << (c.pass ? "ok   " : (c.asserted ? "FAIL " : "info ")) << c.name;
    if (!c.witness.empty()) std::cout << ": " << c.witness;
    std::cout << '\n';
  }
}

int write_reports(const std::string& name, const std::vector<Report>& reports, const Globals& g, Json payload) {
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass();
  if (!g.out.empty()) {
    std::filesystem::create_directories(g.out);
    write_json_file((std::filesystem::path(g.out) / (name + ".json")).string(), payload);
  }
  if (g.json) {
    std::cout << payload.dump(2) << '\n';
  } else {
    for (const auto& r : reports) print_report(r, false);
    std::cout << name << ": " << (pass ? "pass" : "fail") << '\n';
  }
  return pass ? 0 : 1;
}

// Coefficient specs: Z, Q, Q(zN), F_Q with Q a prime power.
CoeffSpec parse_coeff_spec(const std::string& s) {
  if (s == "Z") return CoeffSpec::integers();
  if (s == "Q") return CoeffSpec::cyclotomic(1);
  if (s.rfind("Q(z", 0) == 0 && s.back() == ')') return CoeffSpec::cyclotomic(std::stoll(s.substr(3, s.size() - 4)));
  if (s.rfind("F_", 0) == 0) {
    const auto pp = prime_power(std::stoll(s.substr(2)));
    if (!pp) throw InvalidArgument("coefficient spec '" + s + "': F_Q needs a prime power Q");
    return CoeffSpec::finite(pp->first, pp->second);
  }
  throw InvalidArgument("unknown coefficient spec '" + s + "' (expected Z, Q, Q(zN) or F_Q)");
}

int cmd_torus_build(const Globals& g, const std::string& out) {
  const Config cfg = load_config(g);
  emit(torus_to_json(*torus_from_flags(g, cfg)), out);
  return 0;
}

int cmd_chars_enumerate(const Globals& g, bool strongly_general, bool reduce, bool lift, const std::string& out) {
  const Config cfg = load_config(g);
  const TorusPtr t = torus_from_flags(g, cfg);
  if ((reduce || lift) && !g.ell && cfg.grid.ell.size() != 1) throw InvalidArgument("--reduce and --lift need --ell");
  Json list = Json::array();
  if (lift) {
    const i64 ell = ell_from_flags(g, cfg, t->p());
    for (const auto& psi : enumerate_chars(t, Coefficient{ell})) {
      if (strongly_general && !is_strongly_general(psi)) continue;
      Json lifts = Json::array();
      for (const auto& th : lifts_enum(psi)) lifts.push_back(torus_char_to_json(th));
      list.push_back(Json{{"psi", torus_char_to_json(psi)}, {"lifts", lifts}});
    }
  } else {
    std::optional<i64> ell;
    if (reduce) ell = ell_from_flags(g, cfg, t->p());
    for (const auto& th : enumerate_chars(t, Coefficient{})) {
      if (strongly_general && !is_strongly_general(th)) continue;
      if (ell)
        list.push_back(Json{{"theta", torus_char_to_json(th)}, {"reduction", torus_char_to_json(r_ell(th, *ell))}});
      else
        list.push_back(torus_char_to_json(th));
    }
  }
  emit(list, out);
  return 0;
}

int cmd_weil_sigma(const Globals& g, const std::string& theta_arg) {
  const Config cfg = load_config(g);
  const Json j = read_json_arg(theta_arg);
  TorusPtr t;
  if (g.q || g.n || g.h) t = torus_from_flags(g, cfg);
  const TorusChar theta = torus_char_from_json(j, t);
  const int n = theta.torus->n();
  const WeilParam p = sigma(theta, n);
  std::optional<WeilParam> reduced;
  if (g.ell) reduced = r_ell_param(p, ell_from_flags(g, cfg, theta.torus->p()));
  if (g.json) {
    Json out{{"sigma", weil_param_to_json(p)}};
    if (reduced) out["reduced"] = weil_param_to_json(*reduced);
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  auto show = [](const std::string& label, const WeilParam& w) {
    std::cout << label << ": orbit of size " << w.orbit_size() << " (n = " << w.n << "), "
              << (is_irreducible(w) ? "irreducible" : "reducible") << '\n';
    for (const auto& c : w.orbit) std::cout << "  " << abchar_to_json(c.level_part)["values"].dump() << '\n';
  };
  show("sigma", p);
  if (reduced) show("r_ell sigma", *reduced);
  return 0;
}

std::optional<AbChar> theta_for(const PermComplex& c, const std::string& arg) {
  if (arg.empty()) return std::nullopt;
  return abchar_from_json(read_json_arg(arg), c.t());
}

Json classes_json(const std::vector<GClass>& classes, int lo) {
  Json out = Json::array();
  for (std::size_t i = 0; i < classes.size(); ++i)
    out.push_back(Json{{"degree", lo + static_cast<int>(i)}, {"class", gclass_to_json(classes[i])}});
  return out;
}

int cmd_complex(const Globals& g, const std::string& action, const std::string& in, const std::string& spec_arg,
                const std::string& theta_arg, int truncation) {
  const Config cfg = load_config(g);
  const PermComplex c = complex_from_json(read_json_arg(in));
  const CoeffSpec spec = parse_coeff_spec(spec_arg);
  const std::optional<AbChar> theta = theta_for(c, theta_arg);
  if ((action == "isotypic" || action == "derived") && !theta) throw InvalidArgument(action + " needs --theta");
  if (action == "derived" && truncation < 0) truncation = cfg.derived_truncation;
  Json out{{"action", action}, {"spec", spec.str()}};
  std::ostringstream text;
  if (action == "homology" && spec.kind == CoeffSpec::Kind::Integers) {
    Json degrees = Json::array();
    for (const auto& hgy : integer_homology(c)) {
      degrees.push_back(Json{{"degree", hgy.degree}, {"rank", hgy.rank}, {"torsion", hgy.torsion}});
      text << "H_" << hgy.degree << " = Z^" << hgy.rank;
      for (i64 d : hgy.torsion) text << " + Z/" << d;
      text << '\n';
    }
    out["homology"] = degrees;
  } else if (action == "euler") {
    const GClass e = euler_class(c, spec, theta);
    out["euler"] = gclass_to_json(e);
    text << "euler class: " << e.str() << '\n';
  } else {
    const LinearComplex lc = action == "homology"   ? base_change(c, spec)
                             : action == "isotypic" ? isotypic(c, *theta, spec)
                                                    : derived_isotypic(c, *theta, spec, truncation);
    const auto dims = lc.homology_dims();
    const auto classes = lc.homology();
    out["dims"] = dims;
    out["homology"] = classes_json(classes, lc.lo());
    for (std::size_t i = 0; i < classes.size(); ++i)
      text << "H_" << lc.lo() + static_cast<int>(i) << ": dim " << dims[i] << ", class " << classes[i].str() << '\n';
  }
  if (g.json) {
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << text.str();
  }
  if (!g.out.empty()) write_json_file(g.out, out);
  return 0;
}

int cmd_verify_diagram(const Globals& g, const std::string& provider_kind, const std::string& provider_file,
                       const std::string& dump, bool tamper, bool general) {
  const Config cfg = load_config(g);
  const TorusPtr t = torus_from_flags(g, cfg);
  const i64 ell = ell_from_flags(g, cfg, t->p());
  FiniteLevelProvider provider;
  if (provider_kind == "synthetic") {
    provider = synthetic_provider(t, cfg.seed);
  } else {
    if (provider_file.empty()) throw InvalidArgument("--provider file needs --provider-file");
    provider = provider_from_json(read_json_file(provider_file), t);
  }
  if (tamper || cfg.tamper) provider = tampered_provider(provider, ell);
  if (!dump.empty()) write_json_file(dump, provider_to_json(provider, t, ell));
  const CdFunction cd = CdFunction::level_proxy();
  Report r = verify_diagram_all(t, ell, provider, cd, DiagramOptions{general || cfg.general});
  r.merge(cd_validate(cd, {t}, {ell}), "cd ");
  return write_reports("diagram", {r}, g, report_to_json(r));
}

int cmd_verify_multiplicity(const Globals& g, const std::string& in) {
  const Config cfg = load_config(g);
  const TorusPtr t = torus_from_flags(g, cfg);
  const i64 ell = ell_from_flags(g, cfg, t->p());
  const FinAb& T = t->unit_group();
  GClass m;
  if (in.empty()) {
    m = regular_class(FinGroup::direct_product(FinGroup::cyclic(1), FinGroup::abelian(T)), Coefficient{});
  } else {
    const Json j = read_json_arg(in);
    const FinGroupPtr gt = FinGroup::direct_product(group_from_json(j.at("g")), FinGroup::abelian(T));
    m = gclass_from_json(j.at("class"), gt);
  }
  Report all;
  all.title = "multiplicity " + GridPoint{{t->q(), t->n(), t->h()}, ell}.str();
  for (const auto& psi : enumerate_chars(t, Coefficient{ell}))
    all.merge(naive_multiplicity_check(m, psi.level_part, ell), "psi " + abchar_to_json(psi.level_part)["values"].dump() + " ");
  return write_reports("multiplicity", {all}, g, report_to_json(all));
}

int cmd_run(const Globals& g, const std::string& suite) {
  const Config cfg = load_config(g);
  const std::vector<std::string> names =
      suite == "all" ? suite_names() : std::vector<std::string>{suite};
  int status = 0;
  for (const auto& name : names) {
    const SuiteResult res = run_suite(name, cfg);
    status = std::max(status, write_reports(name, res.points, g, res.to_json(cfg)));
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characters of unramified tori, Weil parameters and their mod-ell reduction"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--q", g.q, "Residue field size");
  app.add_option("--n", g.n, "Degree of the unramified extension");
  app.add_option("--h", g.h, "Level");
  app.add_option("--ell", g.ell, "Coefficient prime");
  app.add_option("--seed", g.seed, "Seed for synthetic complexes");
  app.add_option("--threads", g.threads, "Worker threads (0: hardware concurrency)");
  app.add_option("--out", g.out, "Output file (build, enumerate, complex) or report directory (verify, run)");
  app.add_flag("--json", g.json, "Print JSON instead of text");

  std::function<int()> action;

  auto* torus = app.add_subcommand("torus", "Unit groups T_h")->require_subcommand(1);
  torus->add_subcommand("build", "Emit the torus descriptor")->callback([&] {
    action = [&] { return cmd_torus_build(g, g.out); };
  });

  auto* chars = app.add_subcommand("chars", "Characters of T_h")->require_subcommand(1);
  bool strongly = false, reduce = false, lift = false;
  auto* enumerate = chars->add_subcommand("enumerate", "List characters as JSON");
  enumerate->add_flag("--strongly-general", strongly, "Only strongly general characters");
  auto* reduce_flag = enumerate->add_flag("--reduce", reduce, "Pair each character with its reduction mod ell");
  enumerate->add_flag("--lift", lift, "List the ell'-order characters with their lifts")->excludes(reduce_flag);
  enumerate->callback([&] { action = [&] { return cmd_chars_enumerate(g, strongly, reduce, lift, g.out); }; });

  auto* weil = app.add_subcommand("weil", "Weil parameters")->require_subcommand(1);
  std::string theta_path;
  auto* sig = weil->add_subcommand("sigma", "Orbit of theta and its irreducibility");
  sig->add_option("--theta", theta_path, "TorusChar JSON (file or inline)")->required();
  sig->callback([&] { action = [&] { return cmd_weil_sigma(g, theta_path); }; });

  auto* complex = app.add_subcommand("complex", "Permutation complexes")->require_subcommand(1);
  std::string in_path, spec = "Z", complex_theta;
  int truncation = -1;
  for (const char* name : {"homology", "isotypic", "derived", "euler"}) {
    auto* sub = complex->add_subcommand(name, std::string("Compute the ") + name + " invariant");
    sub->add_option("--in", in_path, "PermComplex JSON")->required();
    sub->add_option("--spec", spec, "Coefficients: Z, Q, Q(zN) or F_Q");
    sub->add_option("--theta", complex_theta, "Character of T as AbChar JSON (file or inline)");
    sub->add_option("--truncation", truncation, "Derived truncation length");
    const std::string act = name;
    sub->callback([&, act] {
      action = [&, act] { return cmd_complex(g, act, in_path, spec, complex_theta, truncation); };
    });
  }

  auto* verify = app.add_subcommand("verify", "Single-point verifiers")->require_subcommand(1);
  std::string provider = "synthetic", provider_file, dump;
  bool tamper = false, general = false;
  auto* diagram = verify->add_subcommand("diagram", "Reduction diagram over every strongly general psi");
  diagram->add_option("--provider", provider, "Finite-level classes")->check(CLI::IsMember({"synthetic", "file"}));
  diagram->add_option("--provider-file", provider_file, "Provider JSON for --provider file");
  diagram->add_option("--dump-provider", dump, "Write the provider table as JSON");
  diagram->add_flag("--tamper", tamper, "Inject an inconsistency into the provider");
  diagram->add_flag("--general", general, "Use general-position characters without asserting");
  diagram->callback([&] {
    action = [&] { return cmd_verify_diagram(g, provider, provider_file, dump, tamper, general); };
  });
  std::string mult_in;
  auto* mult = verify->add_subcommand("multiplicity", "Sum over lifts of isotypic multiplicities");
  mult->add_option("--in", mult_in, "{\"g\": FinGroup, \"class\": GClass on G x T}; default: regular module of T");
  mult->callback([&] { action = [&] { return cmd_verify_multiplicity(g, mult_in); }; });

  std::string suite;
  auto* run = app.add_subcommand("run", "Run a verification suite over the configured grid");
  run->alias("run_suite");
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  run->add_option("suite", suite, "Suite name or 'all'")->required()->check(CLI::IsMember(choices));
  run->callback([&] { action = [&] { return cmd_run(g, suite); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << " (raise ELLCHAR_CAP or the config caps)\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
