#include <doctest.h>

#include <random>

#include "pf/arith.hpp"
#include "pf/construction.hpp"
#include "pf/symbols.hpp"

using pf::Int;

TEST_CASE("derive_params basics") {
  auto params = pf::derive_params(3, 4, 0.9, Int("1000000000000000"));
  CHECK(params.P == 12);  // lcm(1..4)

  params = pf::derive_params(3, 1, 0.9, 1'000'000'000);
  CHECK(params.small_prime_ceiling == 144);  // 3^2 * 4^2
  CHECK(params.lemma_threshold() == 144);

  params = pf::derive_params(3, 2, 0.9, 1'000'000'000);
  CHECK(params.P == 2);
  CHECK(params.M == 500);
  CHECK(params.delta(2) == 64);
  // M is the exact cutoff: Delta(M) <= x < Delta(M+1)
  CHECK(params.delta(params.M) <= params.x);
  CHECK(params.delta(params.M + 1) > params.x);
  CHECK(params.small_prime_ceiling == 3969);  // 3^4 * 7^2
  // (log 500)^0.9 = 5.17...: the default symbol range is empty at desk scale
  CHECK(params.symbol_prime_ceiling == 5);
  CHECK(params.q == 5 * 3);
}

TEST_CASE("derive_params rejects bad input") {
  CHECK_THROWS_AS(pf::derive_params(4, 1, 0.9, 1000), pf::InvalidArgument);
  CHECK_THROWS_AS(pf::derive_params(3, 0, 0.9, 1000), pf::InvalidArgument);
  CHECK_THROWS_AS(pf::derive_params(3, 1, 1.5, 1000), pf::InvalidArgument);
  CHECK_THROWS_AS(pf::derive_params(3, 2, 0.9, 7), pf::InvalidArgument);  // M < 1
}

TEST_CASE("q bit-length cap fails with guidance") {
  pf::CeilingOverrides o;
  o.symbol_prime_ceiling = 500;
  try {
    pf::derive_params(3, 1, 0.9, 1'000'000'000, o, 64);
    FAIL("expected cap error");
  } catch (const pf::InvalidArgument& e) {
    CHECK(std::string(e.what()).find("q_max_bits") != std::string::npos);
  }
}

TEST_CASE("F identity j*F_j(m) = Delta(m)+j") {
  auto params = pf::derive_params(3, 2, 0.9, 1'000'000'000);
  CHECK(pf::f_value(1, 3, params) == 217);
  CHECK(pf::f_value(2, 3, params) == 109);
  CHECK(pf::f_value(2, 5, params) == 501);
  for (unsigned j = 1; j <= params.k; ++j)
    for (Int m = 1; m <= 20; ++m)
      REQUIRE(Int(j) * pf::f_value(j, m, params) == params.delta(m) + j);
}

TEST_CASE("build_congruence_target: zero classes, lemma residues, CRT contract") {
  pf::CeilingOverrides o;
  o.small_prime_ceiling = 144;
  o.symbol_prime_ceiling = 160;
  auto params = pf::derive_params(3, 1, 0.9, Int("1000000000000000000000000000000"),
                                  o, 4096);
  auto target = pf::build_congruence_target(params);
  // q = product of all primes in (1, 160]
  Int q_expected = 1;
  for (std::uint64_t p : pf::primes_in(1, 160)) q_expected *= p;
  CHECK(target.q == q_expected);

  // 151 and 157 are the primes 1 mod 3 above the threshold: lemma residues
  auto lemma = target.lemma_primes();
  CHECK(lemma == std::vector<std::uint64_t>{151, 157});
  for (const auto& pp : target.per_prime) {
    REQUIRE(target.m0 % pp.p == pp.residue);
    if (pp.provenance == pf::ResidueProvenance::LemmaSearch) {
      Int t = Int(pp.residue) * pp.residue * pp.residue + 1;
      REQUIRE(pf::is_lth_power_residue(t, Int(pp.p), 3));
    } else {
      REQUIRE(pp.residue == 0);
    }
  }
}

TEST_CASE("empty symbol range gives all zero classes") {
  pf::CeilingOverrides o;
  o.small_prime_ceiling = 10;
  o.symbol_prime_ceiling = 10;
  auto params = pf::derive_params(3, 2, 0.9, 1'000'000'000, o);
  auto target = pf::build_congruence_target(params);
  CHECK(target.m0 == 0);
  CHECK(target.lemma_primes().empty());
  for (const auto& pp : target.per_prime)
    CHECK(pp.provenance == pf::ResidueProvenance::ZeroClass);
}

TEST_CASE("fallback below the lemma threshold is recorded") {
  pf::CeilingOverrides o;
  o.small_prime_ceiling = 5;
  o.symbol_prime_ceiling = 7;
  auto params = pf::derive_params(3, 2, 0.9, 1'000'000'000, o);
  auto target = pf::build_congruence_target(params);
  // k=2 search at p=7 finds nothing; 7 < 3969 so the zero class steps in
  REQUIRE(target.warnings.size() == 1);
  CHECK(target.warnings[0].find("p = 7") != std::string::npos);
  bool found = false;
  for (const auto& pp : target.per_prime)
    if (pp.p == 7) {
      found = true;
      CHECK(pp.provenance == pf::ResidueProvenance::FallbackZero);
      CHECK(pp.residue == 0);
    }
  CHECK(found);
}

TEST_CASE("sieve: frozen direct example M=10, P=1, trivial target") {
  pf::CeilingOverrides o;
  o.small_prime_ceiling = 1;
  o.symbol_prime_ceiling = 1;
  o.z = 1;  // no congruence shield here, so stage (ii) must stay empty
  auto params = pf::derive_params(3, 1, 0.9, 1000, o);
  CHECK(params.M == 10);
  CHECK(params.P == 1);
  auto target = pf::build_congruence_target(params);
  CHECK(target.q == 1);
  CHECK(target.m0 == 0);

  auto direct = pf::sieve_admissible(target, params, pf::SieveMode::Direct);
  // F = m^3+1 for m = 1..10; 344 = 2^3*43 and 513 = 3^3*19 are rejected
  std::vector<Int> kept;
  for (const auto& a : direct.admissible) kept.push_back(a.m);
  CHECK(kept == std::vector<Int>{1, 2, 3, 4, 5, 6, 9, 10});
  CHECK(direct.rejected.size() == 2);

  auto staged = pf::sieve_admissible(target, params, pf::SieveMode::Staged);
  CHECK(staged.staged_covers_power_free);
  std::vector<Int> staged_kept;
  for (const auto& a : staged.admissible) staged_kept.push_back(a.m);
  CHECK(staged_kept == kept);
}

TEST_CASE("sieve per-j data satisfies the S_j = s_j invariant") {
  pf::CeilingOverrides o;
  o.small_prime_ceiling = 5;
  o.symbol_prime_ceiling = 7;
  o.z = 8;
  auto params = pf::derive_params(3, 2, 0.9, 1'000'000'000, o);
  auto target = pf::build_congruence_target(params);
  auto result = pf::sieve_admissible(target, params, pf::SieveMode::Direct);
  REQUIRE_FALSE(result.admissible.empty());
  Int prev = 0;
  for (const auto& adm : result.admissible) {
    REQUIRE(adm.m > prev);  // strictly increasing
    prev = adm.m;
    REQUIRE(adm.m % target.q == target.m0 % target.q);
    for (const auto& pj : adm.per_j) {
      // S_j^l is the largest l-th power dividing Delta+j; for admissible m
      // it must equal the one dividing j (here s_j = 1 for j = 1, 2)
      auto d = pf::power_free_decompose(pj.a, params.l);
      REQUIRE(d.power_part == pj.stripped_power);
      REQUIRE(d.power_part == 1);
      REQUIRE(d.free_part == pj.free_part);
    }
  }
}

TEST_CASE("congruence shield: q-primes never divide F_j over a random sample") {
  pf::CeilingOverrides o;
  o.small_prime_ceiling = 5;
  o.symbol_prime_ceiling = 7;
  auto params = pf::derive_params(3, 2, 0.9, Int("1000000000000000000"), o);
  auto target = pf::build_congruence_target(params);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Int m = target.m0 + target.q * Int(static_cast<unsigned long>(rng() % 100000));
    if (m == 0) continue;
    for (unsigned j = 1; j <= params.k; ++j) {
      Int fj = pf::f_value(j, m, params);
      for (const auto& pp : target.per_prime)
        REQUIRE_FALSE(mpz_divisible_ui_p(fj.get_mpz_t(), pp.p));
    }
  }
}

TEST_CASE("staged mode with the asymptotic default z rejects everything") {
  // faithful to the lemma: z default is astronomically larger than any F_j,
  // so stage (ii) rejects every candidate at desk scale
  pf::CeilingOverrides o;
  o.small_prime_ceiling = 5;
  o.symbol_prime_ceiling = 7;
  auto params = pf::derive_params(3, 2, 0.9, 1'000'000'000, o);
  auto target = pf::build_congruence_target(params);
  auto staged = pf::sieve_admissible(target, params, pf::SieveMode::Staged);
  CHECK(staged.admissible.empty());
  CHECK_FALSE(staged.staged_covers_power_free);
  auto direct = pf::sieve_admissible(target, params, pf::SieveMode::Direct);
  CHECK_FALSE(direct.admissible.empty());
}

TEST_CASE("budget exhaustion is a logged gap, not a silent keep") {
  pf::CeilingOverrides o;
  o.small_prime_ceiling = 1;
  o.symbol_prime_ceiling = 1;
  Int x_large;
  mpz_ui_pow_ui(x_large.get_mpz_t(), 10, 90);
  auto params = pf::derive_params(3, 1, 0.9, x_large, o);
  pf::CongruenceTarget target;
  target.m0 = 0;
  target.q = Int("999999999999999999999999999989");  // a single huge candidate
  pf::SieveOptions opts;
  opts.factorize.budget_ops = 200;  // far too small for a 90-digit F_j
  auto result = pf::sieve_admissible(target, params, pf::SieveMode::Direct, opts);
  CHECK(result.admissible.empty());
  REQUIRE(result.skipped.size() == 1);
  CHECK(result.skipped[0].reason.find("budget") != std::string::npos);
}
