#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pf/common.hpp"

namespace pf {

struct FactorEntry {
  Int prime;
  unsigned exponent = 0;
  friend bool operator==(const FactorEntry&, const FactorEntry&) = default;
};

// Prime factorization, primes strictly ascending, exponents >= 1.
// factorize(1) is the empty product.
struct Factorization {
  std::vector<FactorEntry> entries;

  // Product of prime^exponent; 1 for the empty factorization.
  Int value() const;
  // Exponent of p (0 if p does not occur).
  unsigned exponent_of(const Int& p) const;
  // Product of the distinct primes.
  Int radical() const;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

// power_part^degree * free_part = n, with free_part free of degree-th powers.
struct PowerFreeDecomposition {
  Int power_part;
  Int free_part;
  unsigned degree = 0;
};

// Deterministic for n < 2^64 (fixed Miller-Rabin base set {2,...,37});
// above that, 36 rounds with bases derived from n by a fixed hash, error
// probability < 4^-36 and reproducible across runs.
bool is_prime(const Int& n);

// On-disk cache, CSV lines "n,p1^e1,p2^e2,...". Read-shared during a run;
// the coordinator writes the merged cache once at shutdown.
class FactorCache {
 public:
  FactorCache() = default;

  std::size_t load(const std::string& path);  // returns entries read
  void save(const std::string& path) const;   // single writer

  std::optional<Factorization> find(const Int& n) const;
  void remember(const Int& n, const Factorization& f);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<Int, Factorization> entries_;
};

struct FactorizeOptions {
  // Deterministic effort budget: one unit per trial-division candidate or
  // rho iteration. Wall time would break run-to-run determinism.
  std::uint64_t budget_ops = 50'000'000;
  FactorCache* cache = nullptr;
};

// Trial division below 10^4, then Brent's rho; throws BudgetExceeded when
// the operation budget runs out (desk-scale inputs only).
Factorization factorize(const Int& n, const FactorizeOptions& options = {});

// Largest S with S^l | n, and the l-th-power-free cofactor.
PowerFreeDecomposition power_free_decompose(const Int& n, unsigned degree,
                                            const FactorizeOptions& options = {});

struct CrtPair {
  Int residue;
  Int modulus;
};

// Combined congruence; moduli must be pairwise coprime (NonCoprimeModuli
// identifies the offending pair). Empty input gives (0, 1).
CrtPair crt(std::span<const CrtPair> pairs);

// Visits primes p with lo < p <= hi in ascending order (segmented sieve).
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit);

// Primes p with lo < p <= hi, optionally restricted to p ≡ filter.first
// (mod filter.second), ascending.
std::vector<std::uint64_t> primes_in(
    std::uint64_t lo, std::uint64_t hi,
    std::optional<std::pair<std::uint64_t, std::uint64_t>> residue_filter = {});

}  // namespace pf
