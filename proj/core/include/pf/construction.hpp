#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pf/arith.hpp"
#include "pf/common.hpp"

namespace pf {

struct CeilingOverrides {
  std::optional<Int> small_prime_ceiling;
  std::optional<Int> symbol_prime_ceiling;
  std::optional<Int> z;
  bool any() const {
    return small_prime_ceiling || symbol_prime_ceiling || z;
  }
};

// The run parameters: P = lcm(1..k), Delta(m) = (mP)^l, P_j = P/j,
// M = floor(x^{1/l} / P), q = Π primes in (k, symbol_prime_ceiling].
// Default ceilings are the asymptotic thresholds (l^{2k}(lk+1)^2 and
// floor((log M)^eps), z = q^l (log M)^{k l^2}); at desk scale those leave
// the symbol range empty, so overrides exist and the run is then labeled
// override-regime.
struct ConstructionParams {
  unsigned l = 0;
  unsigned k = 0;
  double epsilon = 0.0;
  Int x;
  Int P;
  Int M;
  Int small_prime_ceiling;
  Int symbol_prime_ceiling;
  Int z;
  Int q;
  CeilingOverrides overrides;
  bool override_regime = false;
  unsigned q_max_bits = 4096;

  Int p_sub(unsigned j) const;              // P_j = P / j
  Int delta(const Int& m) const;            // (mP)^l
  Int lemma_threshold() const;              // l^{2k}(lk+1)^2, never overridden
};

ConstructionParams derive_params(unsigned l, unsigned k, double epsilon, const Int& x,
                                 const CeilingOverrides& overrides = {},
                                 unsigned q_max_bits = 4096);

// F_j(m) = j^{l-1} (m P_j)^l + 1, so that j * F_j(m) = Delta(m) + j.
Int f_value(unsigned j, const Int& m, const ConstructionParams& params);

enum class ResidueProvenance {
  ZeroClass,     // m ≡ 0 (mod p) blocks p | F_j(m) since F_j(0) ≡ 1
  LemmaSearch,   // residue from find_m0_mod_p
  FallbackZero,  // search legally empty below the lemma threshold
};

const char* to_string(ResidueProvenance p);

struct PerPrimeResidue {
  std::uint64_t p = 0;
  std::uint64_t residue = 0;
  ResidueProvenance provenance = ResidueProvenance::ZeroClass;
};

// m0 (mod q) such that every prime in (k, symbol_prime_ceiling] is blocked
// from dividing any F_j(m) for m ≡ m0 (mod q).
struct CongruenceTarget {
  Int m0;
  Int q;
  std::vector<PerPrimeResidue> per_prime;
  std::vector<std::string> warnings;

  std::vector<std::uint64_t> lemma_primes() const;
};

// Zero class for primes in (k, small_prime_ceiling]; lemma search for
// p ≡ 1 (mod l) in (small, symbol]; zero class for p ≢ 1 (mod l) there.
// A failed search above the lemma threshold is an InvariantViolation; below
// it (override regime) the zero class is substituted with a warning.
CongruenceTarget build_congruence_target(const ConstructionParams& params);

enum class SieveMode { Direct, Staged };

const char* to_string(SieveMode m);
SieveMode sieve_mode_from_string(const std::string& s);

// Stage that rejected an m in staged mode, or the offending prime in
// direct mode; kept for the manifest.
struct RejectedM {
  Int m;
  unsigned j = 0;
  std::string reason;
};

struct SkippedM {
  Int m;
  unsigned j = 0;
  std::string reason;  // factorization budget gaps, never silently kept
};

struct AdmissiblePerJ {
  unsigned j = 0;
  Int a;               // Delta(m) + j
  Int free_part;       // l-th-power-free part of a
  Int stripped_power;  // S_j
  Int discriminant;    // D_j
  bool wild = false;
};

struct AdmissibleM {
  Int m;
  Int delta;
  std::vector<AdmissiblePerJ> per_j;
};

struct SieveResult {
  SieveMode mode = SieveMode::Direct;
  std::vector<AdmissibleM> admissible;
  std::vector<RejectedM> rejected;
  std::vector<SkippedM> skipped;
  // Staged mode provably coincides with the power-free condition iff the
  // stage-(ii) range (symbol_ceiling, z] holds no primes and z <= 2^l.
  bool staged_covers_power_free = false;
};

struct SieveOptions {
  FactorizeOptions factorize;
  unsigned jobs = 1;
  bool validate_fields = true;
};

// Scans m ≡ m0 (mod q), 1 <= m <= M.
//
// Direct: factor every F_j(m), keep m iff each is l-th-power-free.
// Staged: (i) assert no prime <= symbol_ceiling divides F_j(m) (the
// congruence construction guarantees it; breach = InvariantViolation),
// (ii) reject on any prime factor in (symbol_ceiling, z], (iii) reject on
// p^l | F_j(m) for z < p with p^l z <= (2MP)^l, (iv) reject survivors with
// F_j(m) a perfect l-th power (direct root test). Staged output is always
// a subset of direct output; see SieveResult::staged_covers_power_free.
SieveResult sieve_admissible(const CongruenceTarget& target,
                             const ConstructionParams& params, SieveMode mode,
                             const SieveOptions& options = {});

}  // namespace pf
