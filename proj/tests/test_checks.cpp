#include <doctest.h>

#include "pf/checks.hpp"
#include "pf/common.hpp"

TEST_CASE("size-ratio echo: constructed fields beat random radicands") {
  auto result = pf::checks::size_ratio_echo();
  INFO(result.detail);
  CHECK(result.passed);
}

TEST_CASE("suite dispatch resolves names and rejects unknowns") {
  auto results = pf::checks::run_suite("weil");
  REQUIRE(results.size() == 1);
  CHECK(results[0].passed);
  CHECK_THROWS_AS(pf::checks::run_suite("nope"), pf::InvalidArgument);
}
