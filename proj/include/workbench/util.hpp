#pragma once
/*
  util.hpp — small shared pieces: error type, checked narrowing, timers.
*/

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wb {

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// a resource cap was hit: callers report "skip", not "fail"
struct cap_error : error {
  explicit cap_error(const std::string& what) : error(what) {}
};

inline void check(bool cond, const std::string& msg) {
  if (!cond) throw error(msg);
}

inline void check_cap(bool cond, const std::string& msg) {
  if (!cond) throw cap_error(msg);
}

// Wall-clock milliseconds; reports carry these but comparisons exclude them.
struct stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

}  // namespace wb
