#include <catch2/catch_amalgamated.hpp>

#include "forksettle/enumerate.hpp"
#include "forksettle/errors.hpp"

using namespace forksettle;

TEST_CASE("closed fork counts on tiny strings", "[enumerate]") {
  CHECK(enumerate_closed_forks(CharString()).size() == 1);
  CHECK(enumerate_closed_forks(CharString::parse("1")).size() == 1);
  CHECK(enumerate_closed_forks(CharString::parse("0")).size() == 1);
  const auto two = enumerate_closed_forks(CharString::parse("00"));
  REQUIRE(two.size() == 1);
  CHECK(two[0].height() == 2);
  CHECK(enumerate_closed_forks(CharString::parse("01")).size() == 1);
  CHECK(enumerate_closed_forks(CharString::parse("10")).size() == 2);
  CHECK(enumerate_closed_forks(CharString::parse("010")).size() == 3);
}

TEST_CASE("enumerated forks are closed and valid", "[enumerate]") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& w : all_strings(n)) {
      for_each_closed_fork(w, [&](const Fork& f) {
        REQUIRE(validate(f, w).ok());
        REQUIRE(is_closed(f, w));
      });
    }
  }
}

TEST_CASE("brute-force margins on small strings", "[enumerate]") {
  CHECK(brute_rho(CharString::parse("1")) == 1);
  CHECK(brute_rho(CharString()) == 0);
  CHECK(brute_relative_margin(CharString(), CharString::parse("0")) == -1);
  CHECK(brute_relative_margin(CharString::parse("11"), CharString()) == 2);
  CHECK(brute_relative_margin(CharString::parse("0"), CharString::parse("10")) == 0);
}

TEST_CASE("the exhaustive scan agrees with the per-fork margin", "[enumerate]") {
  const auto w = CharString::parse("0101101");
  const auto forks = enumerate_closed_forks(w);
  const auto brute = brute_margins(w);
  for (std::size_t m = 0; m <= w.size(); ++m) {
    int best = fork_relative_margin(forks.front(), w, m);
    for (const auto& f : forks) best = std::max(best, fork_relative_margin(f, w, m));
    CHECK(best == brute.relative[m]);
  }
  int best_rho = 0;
  for (const auto& f : forks) best_rho = std::max(best_rho, fork_rho(f, w));
  CHECK(best_rho == brute.rho);
}

TEST_CASE("enumeration guards", "[enumerate]") {
  CHECK_THROWS_AS(brute_rho(CharString::zeros(11)), TooLong);
  CHECK_THROWS_AS(enumerate_closed_forks(CharString::ones(11)), TooLong);
  CHECK_THROWS_AS(enumerate_closed_forks(CharString::parse("010"), 2), TooManyForks);
}
