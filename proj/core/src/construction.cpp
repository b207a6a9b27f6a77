#include "pf/construction.hpp"

#include <algorithm>

#include "pf/purefield.hpp"
#include "pf/real.hpp"
#include "pf/symbols.hpp"

namespace pf {
namespace {

void require_params_inputs(unsigned l, unsigned k, double epsilon, const Int& x) {
  if (l < 3 || l % 2 == 0 || !is_prime(Int(l)))
    throw InvalidArgument("l must be an odd prime >= 3, got " + std::to_string(l));
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidArgument("epsilon must lie in (0, 1)");
  if (x < 1) throw InvalidArgument("x must be positive");
}

Int pow_int(const Int& base, unsigned e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// floor((log M)^epsilon) with the floor certified: escalate precision until
// the value is provably on one side of an integer.
Int floor_log_power(const Int& M, double epsilon) {
  if (M <= 1) return 0;
  for (unsigned digits = 40; digits <= 640; digits *= 2) {
    ScopedPrecision scope(digits);
    Real value = boost::multiprecision::pow(log_int(M), Real(epsilon));
    Int lo = floor_to_int(value);
    Real gap = value - to_real(lo);
    Real margin = boost::multiprecision::pow(Real(10), -static_cast<int>(digits / 2));
    if (gap > margin && gap < 1 - margin) return lo;
  }
  throw InvariantViolation("(log M)^epsilon sits on an integer boundary; "
                           "cannot certify the floor");
}

// floor(q^l * (log M)^(k*l^2)), the Lemma 3.2 default for z.
Int default_z(const Int& q, const Int& M, unsigned l, unsigned k) {
  if (M <= 1) return pow_int(q, l);
  ScopedPrecision scope(256);
  Real value = to_real(pow_int(q, l)) *
               boost::multiprecision::pow(log_int(M), Real(k * l * l));
  return floor_to_int(value);
}

struct StagedRanges {
  // p^l z <= (2MP)^l, as exact integers
  Int two_mp_pow_l;
  bool stage3_covers(const Int& p, unsigned l, const Int& z) const {
    return pow_int(p, l) * z <= two_mp_pow_l;
  }
};

}  // namespace

Int ConstructionParams::p_sub(unsigned j) const {
  if (j < 1 || j > k) throw InvalidArgument("P_j needs 1 <= j <= k");
  return P / j;
}

Int ConstructionParams::delta(const Int& m) const { return pow_int(m * P, l); }

Int ConstructionParams::lemma_threshold() const {
  return pow_int(Int(l), 2 * k) * pow_int(Int(l) * k + 1, 2);
}

ConstructionParams derive_params(unsigned l, unsigned k, double epsilon, const Int& x,
                                 const CeilingOverrides& overrides,
                                 unsigned q_max_bits) {
  require_params_inputs(l, k, epsilon, x);
  ConstructionParams params;
  params.l = l;
  params.k = k;
  params.epsilon = epsilon;
  params.x = x;
  params.q_max_bits = q_max_bits;
  params.overrides = overrides;
  params.override_regime = overrides.any();

  params.P = 1;
  for (unsigned j = 2; j <= k; ++j) mpz_lcm_ui(params.P.get_mpz_t(), params.P.get_mpz_t(), j);

  Int x_root;
  mpz_root(x_root.get_mpz_t(), x.get_mpz_t(), l);
  params.M = x_root / params.P;
  if (params.M < 1)
    throw InvalidArgument("x too small for (l=" + std::to_string(l) +
                          ", k=" + std::to_string(k) + "): M = x^{1/l}/P < 1");

  params.small_prime_ceiling =
      overrides.small_prime_ceiling.value_or(params.lemma_threshold());
  params.symbol_prime_ceiling =
      overrides.symbol_prime_ceiling.value_or(floor_log_power(params.M, epsilon));
  if (params.small_prime_ceiling < 0 || params.symbol_prime_ceiling < 0)
    throw InvalidArgument("ceilings must be nonnegative");

  if (params.symbol_prime_ceiling > 10'000'000)
    throw InvalidArgument("symbol_prime_ceiling " +
                          params.symbol_prime_ceiling.get_str() +
                          " exceeds the desk-scale bound 10^7; override it");

  params.q = 1;
  std::uint64_t ceiling = mpz_get_ui(params.symbol_prime_ceiling.get_mpz_t());
  for (std::uint64_t p : primes_in(k, ceiling)) params.q *= p;
  if (mpz_sizeinbase(params.q.get_mpz_t(), 2) > q_max_bits)
    throw InvalidArgument(
        "q = prod of primes in (k, " + params.symbol_prime_ceiling.get_str() +
        "] needs " + std::to_string(mpz_sizeinbase(params.q.get_mpz_t(), 2)) +
        " bits, over the configured cap " + std::to_string(q_max_bits) +
        "; lower the symbol ceiling or raise q_max_bits");

  params.z = overrides.z.value_or(default_z(params.q, params.M, l, k));
  return params;
}

Int f_value(unsigned j, const Int& m, const ConstructionParams& params) {
  if (j < 1 || j > params.k) throw InvalidArgument("f_value needs 1 <= j <= k");
  Int out = pow_int(Int(j), params.l - 1) * pow_int(m * params.p_sub(j), params.l) + 1;
  return out;
}

const char* to_string(ResidueProvenance p) {
  switch (p) {
    case ResidueProvenance::ZeroClass: return "zero-class";
    case ResidueProvenance::LemmaSearch: return "lemma-search";
    case ResidueProvenance::FallbackZero: return "fallback-zero";
  }
  return "?";
}

std::vector<std::uint64_t> CongruenceTarget::lemma_primes() const {
  std::vector<std::uint64_t> out;
  for (const auto& pp : per_prime)
    if (pp.provenance == ResidueProvenance::LemmaSearch) out.push_back(pp.p);
  return out;
}

CongruenceTarget build_congruence_target(const ConstructionParams& params) {
  CongruenceTarget target;
  Int lemma_threshold = params.lemma_threshold();
  std::uint64_t ceiling = mpz_get_ui(params.symbol_prime_ceiling.get_mpz_t());
  std::vector<CrtPair> pairs;
  for (std::uint64_t p : primes_in(params.k, ceiling)) {
    PerPrimeResidue rec;
    rec.p = p;
    if (Int(p) <= params.small_prime_ceiling || p % params.l != 1) {
      rec.residue = 0;
      rec.provenance = ResidueProvenance::ZeroClass;
    } else {
      auto m0 = find_m0_mod_p(p, params.l, params.k, params.P);
      if (m0) {
        rec.residue = *m0;
        rec.provenance = ResidueProvenance::LemmaSearch;
      } else if (Int(p) > lemma_threshold) {
        throw InvariantViolation(
            "find_m0_mod_p found no residue mod " + std::to_string(p) +
            " although p exceeds the guarantee threshold " +
            lemma_threshold.get_str());
      } else {
        rec.residue = 0;
        rec.provenance = ResidueProvenance::FallbackZero;
        target.warnings.push_back(
            "p = " + std::to_string(p) +
            ": residue search legally empty below the lemma threshold " +
            lemma_threshold.get_str() + "; zero class substituted");
      }
    }
    target.per_prime.push_back(rec);
    pairs.push_back({Int(rec.residue), Int(p)});
  }
  CrtPair combined = crt(pairs);
  target.m0 = combined.residue;
  target.q = combined.modulus;
  if (target.q != params.q)
    throw InvariantViolation("q mismatch between params and target");
  return target;
}

const char* to_string(SieveMode m) {
  return m == SieveMode::Direct ? "direct" : "staged";
}

SieveMode sieve_mode_from_string(const std::string& s) {
  if (s == "direct") return SieveMode::Direct;
  if (s == "staged") return SieveMode::Staged;
  throw InvalidArgument("unknown sieve mode \"" + s + "\" (direct|staged)");
}

SieveResult sieve_admissible(const CongruenceTarget& target,
                             const ConstructionParams& params, SieveMode mode,
                             const SieveOptions& options) {
  SieveResult result;
  result.mode = mode;
  StagedRanges ranges{pow_int(2 * params.M * params.P, params.l)};
  {
    // the largest integer whose l-th power can divide some F_j(m)
    Int f_max = pow_int(params.M * params.P, params.l) + 1;
    Int max_p;
    mpz_root(max_p.get_mpz_t(), f_max.get_mpz_t(), params.l);
    bool no_stage2_primes = params.z <= params.symbol_prime_ceiling;
    if (!no_stage2_primes && params.z <= 10'000'000)
      no_stage2_primes =
          primes_in(mpz_get_ui(params.symbol_prime_ceiling.get_mpz_t()),
                    mpz_get_ui(params.z.get_mpz_t()))
              .empty();
    result.staged_covers_power_free =
        no_stage2_primes && pow_int(max_p, params.l) * params.z <= ranges.two_mp_pow_l;
  }

  // candidate list: m ≡ m0 (mod q), 1 <= m <= M
  std::vector<Int> candidates;
  {
    Int m = target.m0 == 0 ? target.q : target.m0;
    for (; m <= params.M; m += target.q) candidates.push_back(m);
  }

  struct Verdict {
    bool kept = false;
    AdmissibleM admissible;
    std::vector<RejectedM> rejected;
    std::vector<SkippedM> skipped;
  };
  std::vector<Verdict> verdicts(candidates.size());

  parallel_for(candidates.size(), options.jobs, [&](std::size_t idx) {
    const Int& m = candidates[idx];
    Verdict& v = verdicts[idx];
    AdmissibleM adm;
    adm.m = m;
    adm.delta = params.delta(m);
    bool keep = true;
    for (unsigned j = 1; j <= params.k && keep; ++j) {
      Int fj = f_value(j, m, params);
      Factorization fact;
      try {
        fact = factorize(fj, options.factorize);
      } catch (const BudgetExceeded&) {
        v.skipped.push_back({m, j, "factorization budget exceeded on F_j = " +
                                       fj.get_str()});
        keep = false;
        break;
      }

      // stage (i) for both modes: the congruence construction promises no
      // prime <= symbol ceiling divides F_j(m); a breach is a bug
      for (const auto& fe : fact.entries) {
        if (fe.prime <= params.symbol_prime_ceiling)
          throw InvariantViolation(
              "congruence shield breached: p = " + fe.prime.get_str() +
              " <= " + params.symbol_prime_ceiling.get_str() +
              " divides F_" + std::to_string(j) + "(" + m.get_str() + ")");
      }

      if (mode == SieveMode::Direct) {
        for (const auto& fe : fact.entries) {
          if (fe.exponent >= params.l) {
            v.rejected.push_back({m, j,
                                  "p^l | F_j for p = " + fe.prime.get_str()});
            keep = false;
            break;
          }
        }
      } else {
        // stage (ii): first-power divisibility in (symbol_ceiling, z]
        for (const auto& fe : fact.entries) {
          if (fe.prime > params.symbol_prime_ceiling && fe.prime <= params.z) {
            v.rejected.push_back({m, j,
                                  "stage 2: p = " + fe.prime.get_str() +
                                      " in (symbol_ceiling, z] divides F_j"});
            keep = false;
            break;
          }
        }
        // stage (iii): p^l with z < p and p^l z <= (2MP)^l
        if (keep) {
          for (const auto& fe : fact.entries) {
            if (fe.exponent >= params.l && fe.prime > params.z &&
                ranges.stage3_covers(fe.prime, params.l, params.z)) {
              v.rejected.push_back({m, j,
                                    "stage 3: p^l | F_j for p = " +
                                        fe.prime.get_str()});
              keep = false;
              break;
            }
          }
        }
        // stage (iv): surviving perfect l-th powers, by direct root test
        if (keep) {
          Int root;
          if (mpz_root(root.get_mpz_t(), fj.get_mpz_t(), params.l) != 0) {
            v.rejected.push_back({m, j, "stage 4: F_j is a perfect l-th power"});
            keep = false;
          }
        }
      }

      if (keep) {
        // per-j field data from Delta(m)+j = j * F_j(m)
        Int a = adm.delta + j;
        Factorization fa = fact;
        for (const auto& fe : factorize(Int(j), options.factorize).entries) {
          bool merged = false;
          for (auto& existing : fa.entries) {
            if (existing.prime == fe.prime) {
              existing.exponent += fe.exponent;
              merged = true;
              break;
            }
          }
          if (!merged) fa.entries.push_back(fe);
        }
        std::sort(fa.entries.begin(), fa.entries.end(),
                  [](const FactorEntry& x, const FactorEntry& y) {
                    return x.prime < y.prime;
                  });
        if (fa.value() != a)
          throw InvariantViolation("j * F_j != Delta(m) + j");
        FieldOptions fopts;
        fopts.validate = options.validate_fields;
        fopts.factorize = options.factorize;
        PureField field = make_pure_field_from_factorization(a, fa, params.l, fopts);
        AdmissiblePerJ pj;
        pj.j = j;
        pj.a = a;
        pj.free_part = field.radicand;
        pj.stripped_power = field.stripped_power;
        pj.discriminant = field.discriminant;
        pj.wild = field.wild;
        adm.per_j.push_back(pj);
      }
    }
    if (keep && adm.per_j.size() == params.k) {
      v.kept = true;
      v.admissible = std::move(adm);
    }
  });

  for (auto& v : verdicts) {
    if (v.kept) result.admissible.push_back(std::move(v.admissible));
    for (auto& r : v.rejected) result.rejected.push_back(std::move(r));
    for (auto& s : v.skipped) result.skipped.push_back(std::move(s));
  }
  return result;
}

}  // namespace pf
