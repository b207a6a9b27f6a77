#include <doctest.h>

#include <complex>
#include <set>

#include "pf/arith.hpp"
#include "pf/symbols.hpp"

using pf::Int;

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 acc = 1, base = b % m;
  while (e) {
    if (e & 1) acc = acc * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(acc);
}

std::set<std::uint64_t> power_set(std::uint64_t p, unsigned l) {
  std::set<std::uint64_t> s;
  for (std::uint64_t x = 1; x < p; ++x) s.insert(powmod(x, l, p));
  return s;
}

}  // namespace

TEST_CASE("is_lth_power_residue spot values") {
  CHECK(pf::is_lth_power_residue(6, 7, 3));    // cubes mod 7 = {1, 6}
  CHECK_FALSE(pf::is_lth_power_residue(2, 7, 3));
  CHECK(pf::is_lth_power_residue(2, 31, 3));   // 4^3 = 64 = 2 mod 31
}

TEST_CASE("is_lth_power_residue errors") {
  CHECK_THROWS_AS(pf::is_lth_power_residue(2, 5, 3), pf::InvalidArgument);   // 5 != 1 mod 3
  CHECK_THROWS_AS(pf::is_lth_power_residue(14, 7, 3), pf::InvalidArgument);  // p | d
  CHECK_THROWS_AS(pf::is_lth_power_residue(2, 7, 4), pf::InvalidArgument);   // l not odd prime
}

TEST_CASE("symbol matches brute force for p <= 200, l in {3,5}") {
  for (unsigned l : {3u, 5u}) {
    for (std::uint64_t p : pf::primes_in(l, 200, {{1, l}})) {
      auto powers = power_set(p, l);
      for (std::uint64_t d = 1; d < p; ++d)
        REQUIRE(pf::is_lth_power_residue(Int(d), Int(p), l) == (powers.count(d) > 0));
    }
  }
}

TEST_CASE("residue_class_index is 0 exactly on residues and multiplicative") {
  std::uint64_t p = 31;
  unsigned l = 3;
  auto powers = power_set(p, l);
  for (std::uint64_t d = 1; d < p; ++d) {
    unsigned c = pf::residue_class_index(Int(d), p, l);
    REQUIRE((c == 0) == (powers.count(d) > 0));
  }
  for (std::uint64_t a = 1; a < p; ++a)
    for (std::uint64_t b = 1; b < p; ++b) {
      unsigned ab = pf::residue_class_index(Int(a * b % p), p, l);
      unsigned sum = (pf::residue_class_index(Int(a), p, l) +
                      pf::residue_class_index(Int(b), p, l)) %
                     l;
      REQUIRE(ab == sum);
    }
}

TEST_CASE("character_sum trivial character counts terms") {
  std::vector<unsigned> zeros{0, 0};
  auto s = pf::character_sum(zeros, 13, 3);
  CHECK(s.magnitude_squared_exact() == 13 * 13);
  CHECK(s.coefficient_counts[0] == 13);
  CHECK(s.zero_terms == 0);
}

TEST_CASE("character_sum single factor sums to zero") {
  std::vector<unsigned> e{1, 0};
  auto s = pf::character_sum(e, 13, 3);
  CHECK(s.magnitude_squared_exact() == 0);
  CHECK(s.magnitude() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("character_sum matches a complex-arithmetic oracle") {
  // independent evaluation with doubles and explicit discrete logs
  for (std::uint64_t p : {7ull, 13ull, 31ull}) {
    std::uint64_t g = 0;
    for (std::uint64_t cand = 2; cand < p && !g; ++cand) {
      std::set<std::uint64_t> seen;
      std::uint64_t v = 1;
      for (std::uint64_t i = 0; i + 1 < p; ++i) {
        v = v * cand % p;
        seen.insert(v);
      }
      if (seen.size() == p - 1) g = cand;
    }
    std::vector<std::uint64_t> ind(p, 0);
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i + 1 < p; ++i) {
      ind[v] = i;
      v = v * g % p;
    }
    std::vector<unsigned> exps{1, 1};
    auto s = pf::character_sum(exps, p, 3);
    std::complex<double> oracle{0.0, 0.0};
    const double tau = 6.283185307179586476925287;
    for (std::uint64_t n = 1; n <= p; ++n) {
      std::uint64_t q = (n % p) * ((n + 1) % p) % p;
      if (q == 0) continue;
      double angle = tau * (ind[q] % 3) / 3.0;
      oracle += std::complex<double>{std::cos(angle), std::sin(angle)};
    }
    CHECK(std::abs(s.value() - oracle) < 1e-9);
    CHECK(s.magnitude() == doctest::Approx(std::abs(oracle)).epsilon(1e-9));
  }
}

TEST_CASE("Weil bound with exact magnitudes, l=3, k in {1,2}") {
  for (unsigned k : {1u, 2u}) {
    unsigned total = 1;
    for (unsigned i = 0; i <= k; ++i) total *= 3;
    for (std::uint64_t p : pf::primes_in(6, 499, {{1, 3}})) {
      for (unsigned code = 1; code < total; ++code) {
        std::vector<unsigned> tuple(k + 1);
        unsigned c = code;
        for (unsigned i = 0; i <= k; ++i) {
          tuple[i] = c % 3;
          c /= 3;
        }
        auto s = pf::character_sum(tuple, p, 3);
        REQUIRE(s.magnitude_squared_exact() <= Int(k) * k * p);
      }
    }
  }
}

TEST_CASE("Weil bound numerically for l = 5") {
  for (std::uint64_t p : pf::primes_in(5, 300, {{1, 5}})) {
    std::vector<unsigned> tuple{1, 2};
    auto s = pf::character_sum(tuple, p, 5);
    CHECK(s.magnitude() <= std::sqrt(static_cast<double>(p)) + 1e-9);
  }
}

TEST_CASE("count_consecutive_residues spot values") {
  CHECK(pf::count_consecutive_residues(7, 3, 1) == 0);
  CHECK(pf::count_consecutive_residues(31, 3, 1) == 3);  // (1,2) (15,16) (29,30)
  CHECK(pf::count_consecutive_residues(13, 3, 1) == 0);
}

TEST_CASE("counting identity: |count - p/l^{k+1}| within the explicit bound") {
  for (unsigned k : {1u, 2u}) {
    for (std::uint64_t p : pf::primes_in(k + 1, 1000, {{1, 3}})) {
      long double count = pf::count_consecutive_residues(p, 3, k);
      long double main_term = static_cast<long double>(p) / std::pow(3.0L, k + 1);
      long double weight = (std::pow(3.0L, k + 1) - 1) / std::pow(3.0L, k + 1);
      long double bound =
          weight * k * std::sqrt(static_cast<long double>(p)) + (k + 1);
      REQUIRE(std::abs(count - main_term) <= bound);
    }
  }
}

TEST_CASE("character_sum accounts for p | Q(n) terms") {
  std::vector<unsigned> e{1, 1};
  auto s = pf::character_sum(e, 13, 3);
  // n = 12 hits n+1 ≡ 0 and n = 13 hits n ≡ 0
  CHECK(s.zero_terms == 2);
  Int counted = 0;
  for (const auto& c : s.coefficient_counts) counted += c;
  CHECK(counted + s.zero_terms == 13);
}

TEST_CASE("find_m0_mod_p spot values") {
  auto m0 = pf::find_m0_mod_p(31, 3, 1, 1);
  REQUIRE(m0.has_value());
  CHECK(*m0 == 1);  // 1^3 + 1 = 2 is a cube mod 31

  CHECK_FALSE(pf::find_m0_mod_p(7, 3, 1, 1).has_value());

  auto m157 = pf::find_m0_mod_p(157, 3, 1, 1);
  REQUIRE(m157.has_value());  // 157 > 144, existence guaranteed
  CHECK(pf::is_lth_power_residue(Int(*m157) * *m157 * *m157 + 1, 157, 3));
  // deterministic tie-break: the least qualifying residue
  for (std::uint64_t cand = 1; cand < *m157; ++cand) {
    Int t = Int(cand) * cand * cand + 1;
    bool works = t % 157 != 0 && pf::is_lth_power_residue(t, 157, 3);
    REQUIRE_FALSE(works);
  }
}

TEST_CASE("find_m0_mod_p respects the period P") {
  for (std::uint64_t p : {151ull, 157ull, 163ull}) {
    auto m0 = pf::find_m0_mod_p(p, 3, 1, 2);
    REQUIRE(m0.has_value());
    Int t = Int(2 * *m0) * (2 * *m0) * (2 * *m0) + 1;
    CHECK(pf::is_lth_power_residue(t, Int(p), 3));
  }
  CHECK_THROWS_AS(pf::find_m0_mod_p(7, 3, 1, 7), pf::InvalidArgument);  // gcd(P,p)>1
}

TEST_CASE("existence across the threshold window (144, 2000]") {
  for (std::uint64_t p : pf::primes_in(144, 2000, {{1, 3}}))
    REQUIRE(pf::find_m0_mod_p(p, 3, 1, 1).has_value());
}
