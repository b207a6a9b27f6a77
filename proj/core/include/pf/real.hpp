#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <mutex>

#include "pf/common.hpp"

namespace pf {

// Variable-precision real for embedding logs, regulator estimates and the
// derived ceilings. Precision is per-call-site via ScopedPrecision.
using Real = boost::multiprecision::mpfr_float;

namespace detail {
inline std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}
}  // namespace detail

// Sets the process default precision (decimal digits) for Reals constructed
// in the current scope; restores on destruction. Boost's default precision
// is a single process-wide value, so the scope also holds a lock: all
// multiprecision blocks are serialized. They are tiny next to the integer
// factorization work, so this costs nothing measurable.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned digits) : lock_(detail::precision_mutex()) {
    saved_ = Real::default_precision();
    Real::default_precision(digits);
  }
  ~ScopedPrecision() { Real::default_precision(saved_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned saved_ = 0;
};

inline Real to_real(const Int& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

inline Int floor_to_int(const Real& x) {
  Real f = boost::multiprecision::floor(x);
  Int z;
  mpfr_get_z(z.get_mpz_t(), f.backend().data(), MPFR_RNDD);
  return z;
}

inline Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

// log of a positive big integer, at the current scoped precision.
inline Real log_int(const Int& z) {
  if (z <= 0) throw InvalidArgument("log_int: argument must be positive");
  return boost::multiprecision::log(to_real(z));
}

}  // namespace pf
