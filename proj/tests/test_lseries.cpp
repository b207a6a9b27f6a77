#include <doctest.h>

#include <sstream>

#include "pf/arith.hpp"
#include "pf/lseries.hpp"

using pf::Int;
using pf::LambdaClass;

namespace {

// oracle: count roots of x^l = a over F_p by exhaustion
unsigned root_count(std::uint64_t a, unsigned l, std::uint64_t p) {
  unsigned count = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < l; ++i) acc = acc * x % p;
    if (acc == a % p) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("lambda spot values for a = 2, l = 3") {
  CHECK(pf::lambda_coefficient(2, 3, 5).value == 0);
  CHECK(pf::lambda_coefficient(2, 3, 5).cls == LambdaClass::OneLinear);
  CHECK(pf::lambda_coefficient(2, 3, 31).value == 2);
  CHECK(pf::lambda_coefficient(2, 3, 31).cls == LambdaClass::SplitComplete);
  CHECK(pf::lambda_coefficient(2, 3, 7).value == -1);
  CHECK(pf::lambda_coefficient(2, 3, 7).cls == LambdaClass::NoLinear);
  CHECK(pf::lambda_coefficient(2, 3, 2).cls == LambdaClass::SkippedRamified);
  CHECK(pf::lambda_coefficient(2, 3, 3).cls == LambdaClass::SkippedRamified);
}

TEST_CASE("lambda equals root count minus one (brute-force oracle)") {
  for (unsigned l : {3u, 5u}) {
    for (std::uint64_t a = 2; a <= 20; ++a) {
      for (std::uint64_t p : pf::primes_in(1, 500)) {
        if (p == l || a % p == 0) continue;
        auto lv = pf::lambda_coefficient(Int(a), l, p);
        REQUIRE(lv.value == static_cast<int>(root_count(a, l, p)) - 1);
      }
    }
  }
}

TEST_CASE("proxy over tiny cutoffs") {
  // a = 2, l = 3, X = 4: both 2 and 3 are ramified, so the sum is empty
  auto proxy = pf::log_l1_proxy(2, 3, 4);
  CHECK(proxy.sum == 0.0);
  CHECK(proxy.tallies.skipped_ramified == 2);
  CHECK(pf::log_l1_proxy(2, 3, 1).sum == 0.0);
}

TEST_CASE("proxy X=100 matches a direct evaluation") {
  auto proxy = pf::log_l1_proxy(2, 3, 100);
  double expected = 0.0;
  for (std::uint64_t p : pf::primes_in(1, 100)) {
    if (p == 2 || p == 3) continue;
    expected += (root_count(2, 3, p) - 1.0) / p;
  }
  CHECK(proxy.sum == doctest::Approx(expected).epsilon(1e-15));
  CHECK(proxy.tallies.total() == pf::primes_in(1, 100).size());
}

TEST_CASE("proxy is additive over disjoint ranges") {
  auto whole = pf::log_l1_proxy(10, 3, 2000);
  auto lo = pf::log_l1_proxy_range(10, 3, 1, 700);
  auto hi = pf::log_l1_proxy_range(10, 3, 700, 2000);
  CHECK(whole.sum == doctest::Approx(lo.sum + hi.sum).epsilon(1e-13));
  CHECK(whole.tallies.total() == lo.tallies.total() + hi.tallies.total());
}

TEST_CASE("tallies account for every prime below the cutoff") {
  auto proxy = pf::log_l1_proxy(50, 5, 10'000);
  CHECK(proxy.tallies.total() == pf::primes_in(1, 10'000).size());
}

TEST_CASE("trichotomy: nonresidue primes give lambda 0, residue primes ±") {
  for (unsigned l : {3u, 5u, 7u}) {
    for (std::uint64_t a = 2; a <= 12; ++a) {
      for (std::uint64_t p : pf::primes_in(1, 2000)) {
        auto lv = pf::lambda_coefficient(Int(a), l, p);
        if (lv.cls == LambdaClass::SkippedRamified) continue;
        if ((p - 1) % l != 0) {
          REQUIRE(lv.value == 0);
        } else {
          REQUIRE((lv.value == -1 || lv.value == static_cast<int>(l) - 1));
        }
      }
    }
  }
}

TEST_CASE("nonresidue_partial_sum vanishes identically") {
  CHECK(pf::nonresidue_partial_sum(2, 3, 10'000) == 0.0);
  CHECK(pf::nonresidue_partial_sum(10, 5, 10'000) == 0.0);
  CHECK(pf::nonresidue_partial_sum(7, 7, 1) == 0.0);
}

TEST_CASE("split_density needs enough primes") {
  CHECK_THROWS_AS(pf::split_density(2, 3, 100), pf::InvalidArgument);
  try {
    pf::split_density(2, 3, 100);
  } catch (const pf::InvalidArgument& e) {
    CHECK(std::string(e.what()).find("need X >=") != std::string::npos);
  }
}

TEST_CASE("split_density fractions at desk scale") {
  auto d = pf::split_density(2, 3, 100'000);
  CHECK(std::abs(d.fraction_among_1_mod_l - 1.0 / 3) <= 0.03);
  CHECK(std::abs(d.fraction_overall - 1.0 / 6) <= 0.03);
  CHECK(d.expected_among_1_mod_l == doctest::Approx(1.0 / 3));
  CHECK(d.expected_overall == doctest::Approx(1.0 / 6));

  // for l = 5 the closure has degree l(l-1) = 20, not 2l
  auto d5 = pf::split_density(2, 5, 100'000);
  CHECK(std::abs(d5.fraction_among_1_mod_l - 0.2) <= 0.03);
  CHECK(std::abs(d5.fraction_overall - 0.05) <= 0.02);
  CHECK(d5.expected_overall == doctest::Approx(0.05));
}

TEST_CASE("lambda CSV export shape") {
  std::ostringstream os;
  pf::write_lambda_csv(os, 2, 3, 20);
  std::string text = os.str();
  CHECK(text.find("p,class,lambda,cumulative_sum\n") == 0);
  CHECK(text.find("2,skipped-ramified,,") != std::string::npos);
  CHECK(text.find("7,no-linear,-1,") != std::string::npos);
  CHECK(text.find("5,one-linear,0,") != std::string::npos);
}
