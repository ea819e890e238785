#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pv {

// Mathematical inconsistency or invalid input; the CLI maps this to exit 2.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct OverflowError : Error {
  OverflowError() : Error("integer overflow in lattice arithmetic") {}
};

struct SurfaceMismatch : Error {
  SurfaceMismatch() : Error("divisor classes live on different surfaces") {}
};

struct NonIntegralReflection : Error {
  explicit NonIntegralReflection(const std::string& w) : Error(w) {}
};

struct SingularPlane : Error {
  SingularPlane() : Error("reflection plane has singular Gram matrix") {}
};

struct OracleUnavailable : Error {
  explicit OracleUnavailable(const std::string& w) : Error(w) {}
};

struct InconsistentCohomology : Error {
  explicit InconsistentCohomology(const std::string& w) : Error(w) {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError{};
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError{};
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError{};
  return r;
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Order of side
// effects is unspecified; results must be written to disjoint slots.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) fn(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

}  // namespace pv
