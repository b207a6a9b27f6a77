#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pf/common.hpp"

namespace pf {

// Splitting class of an unramified rational prime in K = Q(a^{1/l}),
// read off the roots of x^l ≡ a (mod p).
enum class LambdaClass {
  SplitComplete,    // p ≡ 1 (mod l), a an l-th power residue: l roots
  OneLinear,        // p ≢ 1 (mod l): x -> x^l bijective, exactly 1 root
  NoLinear,         // p ≡ 1 (mod l), a a non-residue: 0 roots
  SkippedRamified,  // p | l*a: not modeled, excluded from sums
};

const char* to_string(LambdaClass c);

// Dirichlet coefficient of zeta_K/zeta at an unramified prime:
// lambda(p) = #roots of x^l - a over F_p, minus 1. In {-1, 0, l-1}.
struct LambdaValue {
  std::uint64_t p = 0;
  int value = 0;  // unused when skipped
  LambdaClass cls = LambdaClass::SkippedRamified;
};

LambdaValue lambda_coefficient(const Int& a, unsigned l, std::uint64_t p);

struct LambdaTallies {
  std::uint64_t split_complete = 0;
  std::uint64_t one_linear = 0;
  std::uint64_t no_linear = 0;
  std::uint64_t skipped_ramified = 0;
  std::uint64_t total() const {
    return split_complete + one_linear + no_linear + skipped_ramified;
  }
};

// Truncated Euler-log proxy  Σ_{p <= X, p ∤ l·a} lambda(p)/p  for
// log L(1, zeta_K/zeta), with per-class tallies. The approximation carries
// a multiplicative O_eps(1) uncertainty; callers must treat it as an
// estimate, never a certified value.
struct EulerProxy {
  Int a;
  unsigned l = 0;
  std::uint64_t cutoff = 0;
  double sum = 0.0;
  LambdaTallies tallies;
};

EulerProxy log_l1_proxy(const Int& a, unsigned l, std::uint64_t X);

// Same sum over the half-open prime range (lo, hi]; the full proxy is the
// ordered concatenation of subranges.
EulerProxy log_l1_proxy_range(const Int& a, unsigned l, std::uint64_t lo,
                              std::uint64_t hi);

struct SplitDensity {
  std::uint64_t primes_1_mod_l = 0;
  std::uint64_t split_complete = 0;
  std::uint64_t unramified_total = 0;
  double fraction_among_1_mod_l = 0.0;
  double fraction_overall = 0.0;
  // Chebotarev limits in Gal(Q(zeta_l, a^{1/l})/Q), order l(l-1):
  // 1/l among p ≡ 1 (mod l), 1/(l(l-1)) overall.
  double expected_among_1_mod_l = 0.0;
  double expected_overall = 0.0;
};

// Empirical split-complete fractions up to X. Requires at least 100 primes
// p ≡ 1 (mod l) below X; the error message names the smallest sufficient X.
SplitDensity split_density(const Int& a, unsigned l, std::uint64_t X);

// Σ lambda(p)/p over unramified p <= X with p ≢ 1 (mod l). Identically 0
// for prime l (x -> x^l is a bijection on F_p^*), recomputed rather than
// assumed so the hypothesis can be machine-checked.
double nonresidue_partial_sum(const Int& a, unsigned l, std::uint64_t X);

// CSV rows "p,class,lambda,cumulative_sum" for plotting; lambda is blank
// on skipped-ramified rows.
void write_lambda_csv(std::ostream& os, const Int& a, unsigned l, std::uint64_t X);

}  // namespace pf
