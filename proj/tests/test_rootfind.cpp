#include <doctest.h>

#include <cmath>

#include "cvsteer/rootfind.hpp"

using namespace cvsteer;

TEST_CASE("bisect finds a simple root") {
  const auto result = bisect([](double x) { return x * x - 9.0; }, 2.4, 4.5);
  REQUIRE(result.root.has_value());
  CHECK(std::abs(*result.root - 3.0) < 1e-12);
  CHECK(std::abs(result.residual) < 1e-12);
  CHECK(result.iterations > 0);
}

TEST_CASE("bisect reports a missing sign change") {
  const auto result = bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0);
  CHECK_FALSE(result.root.has_value());
  CHECK(result.bracket_width == 2.0);
}

TEST_CASE("bisect accepts a root at the bracket edge") {
  const auto result = bisect([](double x) { return x; }, 0.0, 1.0);
  REQUIRE(result.root.has_value());
  CHECK(*result.root == 0.0);
}

TEST_CASE("bisect rejects an empty bracket") {
  CHECK_THROWS_AS(bisect([](double x) { return x; }, 1.0, 1.0), ContractViolation);
}

TEST_CASE("golden_section_max on a smooth peak") {
  const auto result = golden_section_max([](double x) { return -(x - 2.0) * (x - 2.0); }, 0.0, 5.0);
  CHECK(std::abs(result.arg_max - 2.0) < 1e-8);
  CHECK(std::abs(result.max_value) < 1e-15);
}

TEST_CASE("golden_section_max on a kinked peak") {
  const auto result = golden_section_max([](double x) { return -std::abs(x - 1.3); }, 0.0, 3.0);
  CHECK(std::abs(result.arg_max - 1.3) < 1e-8);
}
