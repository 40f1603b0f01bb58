#include "ellchar/limits.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

#include "ellchar/error.hpp"

namespace ellchar {
namespace {

std::mutex g_mutex;
bool g_initialized = false;
Limits g_limits;

void init_locked() {
  if (g_initialized) return;
  g_initialized = true;
  if (const char* env = std::getenv("ELLCHAR_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) g_limits.enumeration = v;
  }
}

}  // namespace

Limits limits() {
  std::lock_guard lock(g_mutex);
  init_locked();
  return g_limits;
}

void set_limits(const Limits& l) {
  std::lock_guard lock(g_mutex);
  g_initialized = true;
  g_limits = l;
}

void check_cap(std::int64_t value, std::int64_t cap, const char* what) {
  if (value > cap) {
    throw CapExceeded(std::string(what) + ": size " + std::to_string(value) +
                      " exceeds cap " + std::to_string(cap));
  }
}

}  // namespace ellchar
