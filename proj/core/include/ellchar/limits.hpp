#pragma once

#include <cstdint>

namespace ellchar {

/// Size caps shared by every enumerating operation.
///
/// Defaults follow desk-scale usage. `ELLCHAR_CAP`, when set in the
/// environment, overrides `enumeration` on first access.
struct Limits {
  std::int64_t enumeration = 1'000'000;  ///< abelian group / character enumeration
  std::int64_t field_size = 1 << 20;     ///< largest finite field with dlog tables
  std::int64_t group_order = 10'000;     ///< largest FinGroup with conjugacy data
  std::int64_t table_order = 4'096;      ///< largest FinGroup storing a full multiplication table
};

/// Current process-wide limits.
Limits limits();

/// Replaces the process-wide limits. Intended for configuration at start-up.
void set_limits(const Limits& l);

/// Throws CapExceeded with `what` in the message when `value > cap`.
void check_cap(std::int64_t value, std::int64_t cap, const char* what);

}  // namespace ellchar
