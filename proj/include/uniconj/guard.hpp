#pragma once

// Resource guards: explicit resource-exceeded verdicts instead of silent
// blowups. The memory guard is configurable through UNICONJ_GUARD_MB.

#include <cstdlib>
#include <stdexcept>

namespace uniconj {

struct ResourceExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline long long memory_guard_mb() {
  if (const char* env = std::getenv("UNICONJ_GUARD_MB")) {
    long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return 1024;
}

}  // namespace uniconj
