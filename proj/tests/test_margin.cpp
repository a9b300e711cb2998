#include <catch2/catch_amalgamated.hpp>

#include "forksettle/enumerate.hpp"
#include "forksettle/margin.hpp"

using namespace forksettle;

TEST_CASE("reach recursion", "[margin]") {
  CHECK(rho(CharString()) == 0);
  CHECK(rho(CharString::parse("10")) == 0);
  CHECK(rho(CharString::parse("0101")) == 1);
  CHECK(rho(CharString::ones(7)) == 7);
}

TEST_CASE("margin recursion", "[margin]") {
  CHECK(mu(CharString()) == 0);
  CHECK(mu(CharString::parse("0")) == -1);
  CHECK(mu(CharString::parse("010100110")) == 0);
  CHECK(mu(CharString::ones(5)) == 5);
  CHECK(is_forkable(CharString()));
  CHECK_FALSE(is_forkable(CharString::parse("0")));
  CHECK(is_forkable(CharString::parse("010100110")));
}

TEST_CASE("relative margin recursion", "[margin]") {
  CHECK(relative_margin(CharString::parse("11"), CharString()) == 2);
  CHECK(relative_margin(CharString::parse("0"), CharString::parse("10")) == 0);
  for (std::size_t n = 0; n <= 8; ++n) {
    for (const auto& w : all_strings(n)) REQUIRE(relative_margin(CharString(), w) == mu(w));
  }
}

TEST_CASE("single walk steps", "[margin]") {
  MarginWalk past{0, 4, 0, 0};
  auto s = walk_step(past, 0);
  CHECK(s.rho == 0);
  CHECK(s.mu == -1);

  MarginWalk ahead{0, 4, 3, 0};
  s = walk_step(ahead, 0);
  CHECK(s.rho == 2);
  CHECK(s.mu == 0);

  MarginWalk any{2, 5, 4, -3};
  s = walk_step(any, 1);
  CHECK(s.rho == 5);
  CHECK(s.mu == -2);

  // Before the split mu shadows rho.
  auto w = MarginWalk::start(3);
  w = walk_step(w, 1);
  w = walk_step(w, 1);
  w = walk_step(w, 0);
  CHECK(w.rho == 1);
  CHECK(w.mu == 1);
}

TEST_CASE("walk invariants", "[margin]") {
  const auto w = sample_bernoulli({0.45, 400}, 3);
  for (std::size_t split : {0, 17, 200, 400}) {
    auto st = MarginWalk::start(split);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto next = walk_step(st, w[i]);
      REQUIRE(next.rho >= 0);
      REQUIRE(next.mu <= next.rho);
      REQUIRE(std::abs(next.rho - st.rho) <= 1);
      if (next.position <= next.split) REQUIRE(next.mu == next.rho);
      st = next;
    }
  }
}

TEST_CASE("all-split margins match the single-split recursion", "[margin]") {
  const auto w = sample_bernoulli({0.4, 60}, 9);
  const auto all = relative_margins(w);
  REQUIRE(all.size() == w.size() + 1);
  for (std::size_t m = 0; m <= w.size(); ++m) CHECK(all[m] == relative_margin(w.prefix(m), w.suffix_from(m)));
}

TEST_CASE("recursions agree with exhaustive fork search", "[margin][oracle]") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& w : all_strings(n)) {
      const auto brute = brute_margins(w);
      const auto rec = relative_margins(w);
      REQUIRE(brute.rho == rho(w));
      for (std::size_t m = 0; m <= n; ++m) {
        INFO(w.to_string() << " split " << m);
        REQUIRE(brute.relative[m] == rec[m]);
      }
    }
  }
}
