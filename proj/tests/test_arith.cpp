#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "pf/arith.hpp"

using pf::Int;

namespace {

// independent oracle: plain trial division
std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

}  // namespace

TEST_CASE("is_prime basics") {
  CHECK(pf::is_prime(2));
  CHECK_FALSE(pf::is_prime(1));
  CHECK_FALSE(pf::is_prime(0));
  CHECK_FALSE(pf::is_prime(144));
  CHECK(pf::is_prime(Int("2305843009213693951")));  // 2^61 - 1
  CHECK_FALSE(pf::is_prime(Int("2305843009213693951") * 7));
  // first prime past 2^64, and a nearby composite
  CHECK(pf::is_prime(Int("18446744073709551629")));
  CHECK_FALSE(pf::is_prime(Int("18446744073709551627")));
}

TEST_CASE("is_prime agrees with a sieve up to 20000") {
  std::vector<bool> composite(20001, false);
  for (std::uint64_t i = 2; i <= 20000; ++i)
    if (!composite[i])
      for (std::uint64_t m = i * i; m <= 20000; m += i) composite[m] = true;
  for (std::uint64_t n = 0; n <= 20000; ++n)
    REQUIRE(pf::is_prime(Int(n)) == (n >= 2 && !composite[n]));
}

TEST_CASE("factorize spot values") {
  auto f = pf::factorize(108);
  REQUIRE(f.entries.size() == 2);
  CHECK(f.entries[0].prime == 2);
  CHECK(f.entries[0].exponent == 2);
  CHECK(f.entries[1].prime == 3);
  CHECK(f.entries[1].exponent == 3);

  CHECK(pf::factorize(1).entries.empty());

  auto g = pf::factorize(13824);  // 24^3
  REQUIRE(g.entries.size() == 2);
  CHECK(g.entries[0].prime == 2);
  CHECK(g.entries[0].exponent == 9);
  CHECK(g.entries[1].prime == 3);
  CHECK(g.entries[1].exponent == 3);
}

TEST_CASE("factorize errors") {
  CHECK_THROWS_AS(pf::factorize(0), pf::InvalidArgument);
  pf::FactorizeOptions tiny;
  tiny.budget_ops = 10;
  // two 31-digit prime factors: cannot finish in 10 operations
  Int hard = Int("1000000000000000000000000000057") *
             Int("1000000000000000000000000000099");
  CHECK_THROWS_AS(pf::factorize(hard, tiny), pf::BudgetExceeded);
}

TEST_CASE("factorize round-trips against trial division up to 10^6") {
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    pf::Factorization f = pf::factorize(Int(n));
    REQUIRE(f.value() == n);
    auto oracle = trial_factor(n);
    REQUIRE(f.entries.size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      REQUIRE(f.entries[i].prime == oracle[i].first);
      REQUIRE(f.entries[i].exponent == oracle[i].second);
    }
  }
}

TEST_CASE("factorize handles semiprimes beyond the trial range") {
  Int p("1000048672023563");  // 30815443 * 32452841
  auto f = pf::factorize(p);
  REQUIRE(f.entries.size() == 2);
  CHECK(f.entries[0].prime == 30815443);
  CHECK(f.entries[1].prime == 32452841);
  CHECK(f.value() == p);
}

TEST_CASE("power_free_decompose") {
  auto d = pf::power_free_decompose(16, 3);
  CHECK(d.power_part == 2);
  CHECK(d.free_part == 2);

  d = pf::power_free_decompose(7, 5);
  CHECK(d.power_part == 1);
  CHECK(d.free_part == 7);

  d = pf::power_free_decompose(972, 3);
  CHECK(d.power_part == 3);
  CHECK(d.free_part == 36);
}

TEST_CASE("power_free_decompose: free part exponents stay below l") {
  for (unsigned l : {3u, 5u, 7u}) {
    for (std::uint64_t n = 1; n <= 100'000; ++n) {
      auto d = pf::power_free_decompose(Int(n), l);
      Int pw;
      mpz_pow_ui(pw.get_mpz_t(), d.power_part.get_mpz_t(), l);
      REQUIRE(pw * d.free_part == n);
      for (const auto& fe : pf::factorize(d.free_part).entries)
        REQUIRE(fe.exponent < l);
    }
  }
}

TEST_CASE("crt spot values") {
  std::vector<pf::CrtPair> pairs{{0, 2}, {1, 3}};
  auto r = pf::crt(pairs);
  CHECK(r.residue == 4);
  CHECK(r.modulus == 6);

  pairs = {{1, 7}};
  r = pf::crt(pairs);
  CHECK(r.residue == 1);
  CHECK(r.modulus == 7);

  pairs = {{1, 31}, {0, 5}};
  r = pf::crt(pairs);
  CHECK(r.residue == 125);
  CHECK(r.modulus == 155);
}

TEST_CASE("crt rejects non-coprime moduli naming the pair") {
  std::vector<pf::CrtPair> pairs{{1, 4}, {0, 9}, {3, 6}};
  try {
    pf::crt(pairs);
    FAIL("expected NonCoprimeModuli");
  } catch (const pf::NonCoprimeModuli& e) {
    CHECK(e.first == 0);
    CHECK(e.second == 2);
  }
}

TEST_CASE("crt randomized reduction property") {
  std::mt19937_64 rng(20240811);
  std::vector<std::uint64_t> moduli{4, 9, 5, 7, 11, 13, 17, 19, 23};
  for (int iter = 0; iter < 10'000; ++iter) {
    std::vector<pf::CrtPair> pairs;
    for (std::uint64_t m : moduli) pairs.push_back({Int(rng() % m), Int(m)});
    auto r = pf::crt(pairs);
    REQUIRE(r.residue >= 0);
    REQUIRE(r.residue < r.modulus);
    for (const auto& p : pairs) REQUIRE(r.residue % p.modulus == p.residue);
  }
}

TEST_CASE("primes_in ranges and filters") {
  CHECK(pf::primes_in(1, 10) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(pf::primes_in(1, 20, {{1, 3}}) == std::vector<std::uint64_t>{7, 13, 19});
  // 151 and 157 are both prime and 1 mod 3 in (144, 160]
  CHECK(pf::primes_in(144, 160, {{1, 3}}) == std::vector<std::uint64_t>{151, 157});
  CHECK(pf::primes_in(10, 10).empty());
  CHECK(pf::primes_in(0, 2) == std::vector<std::uint64_t>{2});
}

TEST_CASE("primes_in matches a simple sieve over a larger window") {
  std::vector<bool> composite(100001, false);
  std::vector<std::uint64_t> expected;
  for (std::uint64_t i = 2; i <= 100000; ++i) {
    if (composite[i]) continue;
    expected.push_back(i);
    for (std::uint64_t m = i * i; m <= 100000; m += i) composite[m] = true;
  }
  CHECK(pf::primes_in(1, 100000) == expected);
}

TEST_CASE("factor cache round-trip") {
  std::filesystem::path path =
      std::filesystem::temp_directory_path() / "pf_cache_test.csv";
  {
    pf::FactorCache cache;
    pf::FactorizeOptions opts;
    opts.cache = &cache;
    pf::factorize(13824, opts);
    pf::factorize(Int("1000048672023563"), opts);
    cache.save(path.string());
  }
  pf::FactorCache loaded;
  CHECK(loaded.load(path.string()) == 2);
  auto hit = loaded.find(13824);
  REQUIRE(hit.has_value());
  CHECK(hit->value() == 13824);
  std::filesystem::remove(path);
}
