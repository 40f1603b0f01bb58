// Runs every acceptance criterion on its full parameter range and prints one
// line per criterion. Exits nonzero if any criterion fails or overruns.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "ellchar/harness.hpp"

namespace {

using ellchar::Config;
using ellchar::SuiteResult;

struct Criterion {
  int number;
  std::string description;
  double limit_seconds;
  std::vector<std::string> suites;
};

std::string first_witness(const SuiteResult& r) {
  for (const auto& p : r.points)
    for (const auto& c : p.checks)
      if (c.asserted && !c.pass) return p.title + " / " + c.name + ": " + c.witness;
  return "";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "lift fibers on q^{nh} <= 4096, ell in {2,3,5,7}", 30, {"lifts"}},
      {2, "strongly general preserved by reduction and lifting", 30, {"position"}},
      {3, "torus structure", 10, {"torus"}},
      {4, "projectivity on groups of order <= 48", 60, {"projectivity"}},
      {5, "induction/reduction square", 60, {"induction-square"}},
      {6, "derived = plain isotypic on torsor complexes; Tor persists", 120, {"isotypic"}},
      {7, "Euler class commutes with reduction", 60, {"euler-reduction"}},
      {8, "Weil square, sigma separates orbits, <Ind,Ind> = 1", 60, {"weil"}},
      {9, "naive multiplicity on virtual characters; regular case 3", 30, {"multiplicity"}},
      {10, "diagram on (2,2,2,3) and (3,2,2,2); tampered provider rejected", 60, {"diagram"}},
  };

  const Config cfg;
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
      for (const auto& name : c.suites) {
        const SuiteResult r = ellchar::run_suite(name, cfg);
        if (!r.pass()) {
          ok = false;
          detail = first_witness(r);
        }
      }
      if (c.number == 10) {
        Config tampered = cfg;
        tampered.tamper = true;
        const SuiteResult r = ellchar::run_suite("diagram", tampered);
        const std::string w = first_witness(r);
        if (r.pass() || w.empty()) {
          ok = false;
          detail = "tampered provider was accepted";
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = ok && in_time;
    all = all && pass;
    std::printf("[%s] criterion %d: %s (%.2f s %s %.0f s)%s%s\n", pass ? "PASS" : "FAIL", c.number,
                c.description.c_str(), secs, in_time ? "<" : ">=", c.limit_seconds, detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
