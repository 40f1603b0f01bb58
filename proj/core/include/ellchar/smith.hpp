#pragma once

// Smith and Hermite normal forms of small integer matrices with overflow checks.

#include <vector>

#include "ellchar/intmath.hpp"

namespace ellchar {

using IntMatrix = std::vector<std::vector<i64>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b, std::size_t inner);

/// U * A * V = D with U, V unimodular, D diagonal with nonnegative entries
/// d_0 | d_1 | ... (zeros last). `vinv` is the inverse of V.
struct SmithForm {
  std::vector<i64> diagonal;  // length min(rows, cols)
  IntMatrix u, v, vinv;
};

SmithForm smith_normal_form(const IntMatrix& a, std::size_t cols);

/// Incremental row Hermite form of a full-rank lattice L in Z^s that contains
/// N * Z^s. Used to accumulate many relations while keeping entries small.
class LatticeAccumulator {
 public:
  LatticeAccumulator(std::size_t s, i64 n);
  /// Adds v to the lattice.
  void add(std::vector<i64> v);
  const IntMatrix& basis() const { return h_; }

 private:
  std::size_t s_;
  IntMatrix h_;
};

}  // namespace ellchar
