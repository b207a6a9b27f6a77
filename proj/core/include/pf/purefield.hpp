#pragma once

#include <vector>

#include "pf/arith.hpp"
#include "pf/common.hpp"
#include "pf/real.hpp"

namespace pf {

// Invariants of K = Q(a^{1/l}) for odd prime l.
//
// discriminant = l^e' * Π_{r | radicand, r != l} r^{l-1}, where
// e' = e + (l-1 if l | radicand), and e = l-2 (tame) exactly when
// l ∤ radicand and radicand^{l-1} ≡ 1 (mod l^2), else e = l (wild).
struct PureField {
  unsigned l = 0;
  Int radicand;        // l-th-power-free, >= 2
  Int radical;         // product of primes dividing radicand
  Int discriminant;    // |d_K|
  bool wild = false;   // e == l
  Int stripped_power;  // S with S^l * radicand = original input a
};

struct FieldOptions {
  // Cross-check the l-exponent (and every repeated radicand prime) against
  // the Dedekind-criterion route; mismatches throw InvariantViolation.
  bool validate = true;
  FactorizeOptions factorize;
};

// Normalizes a by stripping l-th powers, then computes the field data.
// Throws DegenerateField when a is a perfect l-th power.
PureField make_pure_field(const Int& a, unsigned l, const FieldOptions& options = {});

// Same, reusing an existing factorization of a.
PureField make_pure_field_from_factorization(const Int& a, const Factorization& fa,
                                             unsigned l,
                                             const FieldOptions& options = {});

// True iff p divides the index [O_K : Z[a^{1/l}]], by Dedekind's criterion
// on x^l - a mod p (honest polynomial arithmetic, not the distilled
// congruence; this is the independent oracle for discriminant exponents).
// Requires a l-th-power-free.
bool dedekind_index_check(const Int& a, unsigned l, const Int& p);

// Stender's explicit unit u = r / (w - n)^l in Q(w), w = (n^l + r)^{1/l},
// valid when r | l*n^{l-1}. (Hypothesis 1 of the source material uses
// r | l*n^l; that variant is not implemented.)
struct StenderUnit {
  Int n;
  Int r;
  unsigned l = 0;
  Int a;  // n^l + r, not a perfect l-th power
};

StenderUnit make_stender_unit(const Int& n, const Int& r, unsigned l);

// Exact algebraic norm of u as a rational, via resultants:
// N(w - n) = Res(x^l - a, x - n) = r for odd l, so N(u) = r^l / r^l = 1.
// Throws InvalidArgument when r ∤ l*n^{l-1} (u may then fail to be a unit).
Rat stender_unit_norm(const Int& n, const Int& r, unsigned l);

// Logs of the archimedean absolute values of u: entry 0 is log|σ(u)| at the
// real embedding, entries 1..(l-1)/2 are log|σ(u)|^2 at the complex ones.
// Entries sum to 0 (norm-one relation) within 10^-(precision+5).
struct UnitLogVector {
  std::vector<Real> entries;  // length 1 + (l-1)/2
  unsigned precision = 0;     // decimal digits
};

UnitLogVector unit_log_vector(const StenderUnit& u, unsigned precision_digits);

// |first entry| of the log vector; for l = 3 (unit rank 1) this is the
// regulator when u is fundamental and a positive integer multiple of it
// otherwise. Throws UnsupportedRank for l != 3.
Real regulator_rank1(const StenderUnit& u, unsigned precision_digits = 40);

}  // namespace pf
