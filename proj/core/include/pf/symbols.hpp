#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pf/common.hpp"

namespace pf {

// True iff d is an l-th power residue mod p, i.e. d^((p-1)/l) ≡ 1 (mod p).
// Equivalent to the l-th power residue symbol over a prime of Q(sqrt(-l))
// above p being 1, independent of the choice of that prime.
// Requires p ≡ 1 (mod l) and p ∤ d (symbol undefined otherwise).
bool is_lth_power_residue(const Int& d, const Int& p, unsigned l);

// Residue class index of d under the order-l character picked out by the
// least primitive root g of p: the t in {0,...,l-1} with
// d^((p-1)/l) ≡ g^(t(p-1)/l) (mod p). Class 0 is canonical ("is a residue");
// nonzero classes depend on the generator convention.
unsigned residue_class_index(const Int& d, std::uint64_t p, unsigned l);

// Complete character sum  S = Σ_{n=1..p} χ(Π_j (n+j)^{r_j})  held in exact
// cyclotomic form: coefficient_counts[t] is the number of n landing in
// residue class t (terms with p | n+j and r_j > 0 contribute 0 and are not
// counted). χ maps class t to ζ_l^t; the least primitive root of p fixes
// the class labels.
struct CharacterSum {
  std::uint64_t p = 0;
  unsigned l = 0;
  std::vector<unsigned> exponents;
  std::vector<Int> coefficient_counts;  // size l
  std::uint64_t zero_terms = 0;         // n with p | Q(n)

  // Coefficients b_d of |S|^2 = Σ_d b_d ζ^d (b_d = Σ_t c_t c_{t-d mod l}).
  std::vector<Int> magnitude_squared_coefficients() const;
  // |S|^2 as an exact integer, available when the off-diagonal b_d all
  // coincide (always for l = 3: then |S|^2 = b_0 - b_1 via Σ ζ^d = 0).
  // Throws InvalidArgument when |S|^2 is irrational (possible for l >= 5);
  // magnitude() covers that case numerically.
  Int magnitude_squared_exact() const;
  std::complex<double> value() const;
  double magnitude() const;
};

// Exact evaluation of S for the exponent tuple (r_0,...,r_k), each in
// {0,...,l-1}. Requires p ≡ 1 (mod l), p prime, p > k.
CharacterSum character_sum(std::span<const unsigned> exponents, std::uint64_t p,
                           unsigned l);

// Number of n in 1..p-k-1 with n, n+1, ..., n+k all l-th power residues
// mod p (and none divisible by p). Requires p ≡ 1 (mod l), p > k+1.
std::uint64_t count_consecutive_residues(std::uint64_t p, unsigned l, unsigned k);

// Least m0 in 1..p-1 such that (m0*P)^l + j is an l-th power residue mod p
// for every j = 1..k. Existence is guaranteed for p > l^{2k}(lk+1)^2;
// below that threshold an empty result is a legal outcome.
// Requires p ≡ 1 (mod l), p > k, gcd(P, p) = 1.
std::optional<std::uint64_t> find_m0_mod_p(std::uint64_t p, unsigned l, unsigned k,
                                           const Int& P);

}  // namespace pf
