#pragma once

// Batch verification: configuration, parameter grids, the named suites and
// their deterministic JSON reports.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ellchar/dlclass.hpp"
#include "ellchar/io.hpp"
#include "ellchar/limits.hpp"

namespace ellchar {

struct TorusPoint {
  i64 q = 2;
  int n = 1;
  int h = 1;
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

struct GridPoint {
  TorusPoint torus;
  i64 ell = 0;
  std::string str() const;
};

/// Grid restrictions: empty lists mean "all"; tori satisfy q^{nh} <= max_size.
struct GridSpec {
  i64 max_size = 4096;
  std::vector<i64> q;
  std::vector<int> n;
  std::vector<int> h;
  /// Explicit primes; when empty the configured primes other than p are used.
  std::vector<i64> ell;
  /// Explicit (q, n, h, ell) points replacing the enumeration.
  std::vector<GridPoint> points;
};

struct Config {
  Limits caps;
  std::vector<i64> primes{2, 3, 5, 7};
  GridSpec grid;
  std::uint64_t seed = 1;
  std::string out_dir;
  unsigned threads = 0;  ///< 0: hardware concurrency
  int torsor_complexes = 50;
  int virtual_characters = 200;
  int derived_truncation = 8;
  /// Largest Weil model order for the inner-product check.
  i64 weil_model_order = 2000;
  /// Models checked per torus; 0 checks every orbit.
  int weil_models_per_torus = 8;
  /// Diagram suite: use a provider with an injected inconsistency.
  bool tamper = false;
  /// Diagram suite: run on general-position characters without asserting.
  bool general = false;

  static Config from_json(const Json& j);
  Json to_json() const;
  /// Rejects ell = p (for explicit primes or points), non-prime-powers and bad caps.
  void validate() const;

  std::vector<TorusPoint> torus_points() const;
  /// torus_points() x primes, skipping ell = p unless ell was given explicitly.
  std::vector<GridPoint> grid_points() const;
  /// The diagram suite's points: the explicit grid when given, otherwise
  /// (2,2,2,3) and (3,2,2,2).
  std::vector<GridPoint> diagram_points() const;
  bool grid_is_explicit() const;
};

/// The named finite groups of order <= 48 used by the group suites.
struct NamedGroup {
  std::string name;
  FinGroupPtr group;
};
std::vector<NamedGroup> group_corpus();

/// The i-th complex of the seeded torsor corpus (|G| <= 24, |T| <= 12).
struct CorpusComplex {
  std::string label;
  PermComplex complex;
};
CorpusComplex torsor_corpus_entry(std::uint64_t seed, int i);

/// The Tor-persistence example: the trivial complex Z in degree 0 for G = 1, T = Z/ell.
PermComplex fixed_point_complex(i64 ell);

struct SuiteResult {
  std::string suite;
  std::vector<Report> points;
  bool pass() const;
  Json to_json(const Config& cfg) const;
};

const std::vector<std::string>& suite_names();
/// Runs a suite; throws InvalidArgument for unknown names or invalid configs.
SuiteResult run_suite(const std::string& name, const Config& cfg);

/// Applies fn to 0..count-1 on a pool of worker threads, results in index order.
/// The first exception thrown by a task is rethrown after all workers stop.
template <class R>
std::vector<R> parallel_map(std::size_t count, unsigned threads, const std::function<R(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::vector<std::optional<R>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace ellchar
