#pragma once

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pf {

// Arbitrary precision throughout: radicands like (mP)^l overflow fixed
// width even at tiny m.
using Int = mpz_class;
using Rat = mpq_class;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad call-site input: maps to CLI exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Factorization exceeded its configured operation budget. Signals the
// caller to shrink desk-scale inputs; never a silent slowdown.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const Int& n, std::uint64_t ops)
      : Error("factorization budget exceeded after " + std::to_string(ops) +
              " operations on n = " + n.get_str()),
        n_(n),
        ops_(ops) {}
  const Int& value() const { return n_; }
  std::uint64_t ops() const { return ops_; }

 private:
  Int n_;
  std::uint64_t ops_;
};

class NonCoprimeModuli : public InvalidArgument {
 public:
  NonCoprimeModuli(std::size_t i, std::size_t j, const Int& mi, const Int& mj)
      : InvalidArgument("crt: moduli at positions " + std::to_string(i) + " and " +
                        std::to_string(j) + " are not coprime (" + mi.get_str() +
                        ", " + mj.get_str() + ")"),
        first(i),
        second(j) {}
  std::size_t first;
  std::size_t second;
};

// The radicand was a perfect l-th power, so Q(a^{1/l}) = Q.
class DegenerateField : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Unit rank (l-1)/2 > 1: no single-unit regulator.
class UnsupportedRank : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class PrecisionError : public Error {
 public:
  PrecisionError(unsigned requested_digits, unsigned required_digits)
      : Error("requested " + std::to_string(requested_digits) +
              " digits; computation needs a working precision of at least " +
              std::to_string(required_digits) + " digits"),
        requested(requested_digits),
        required(required_digits) {}
  unsigned requested;
  unsigned required;
};

// A mathematical guarantee failed at run time. Maps to CLI exit code 4.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

inline Int parse_int(const std::string& s) {
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    throw InvalidArgument("not a valid integer literal: \"" + s + "\"");
  }
}

// Runs body(i) for i in [0, count) over `jobs` threads. Result order is the
// caller's responsibility (index-addressed output keeps runs deterministic).
// The first exception thrown by any body is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::min<std::size_t>(jobs, count);
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace pf
