#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <bit>
#include <cmath>

#include "forksettle/charstring.hpp"
#include "forksettle/errors.hpp"
#include "forksettle/margin.hpp"

using namespace forksettle;

TEST_CASE("parse and print round-trip", "[charstring]") {
  auto w = CharString::parse("010100110\n");
  CHECK(w.size() == 9);
  CHECK(w.to_string() == "010100110");
  CHECK(w.slot(2) == 1);
  CHECK(w.honest(1));
  CHECK(CharString::parse("").empty());
  CHECK_THROWS_AS(CharString::parse("01x"), ParseError);
}

TEST_CASE("degenerate Bernoulli parameters", "[charstring]") {
  CHECK(sample_bernoulli({0.0, 5}, 17).to_string() == "00000");
  CHECK(sample_bernoulli({1.0, 3}, 99).to_string() == "111");
  CHECK(sample_bernoulli({0.2, 0}, 1).empty());
  CHECK_THROWS_AS(sample_bernoulli({1.5, 3}, 1), BadParams);
}

TEST_CASE("Bernoulli frequency concentrates", "[charstring]") {
  const std::size_t n = 100000;
  const auto w = sample_bernoulli({0.3, n}, 1);
  const double freq = static_cast<double>(w.count_ones()) / static_cast<double>(n);
  CHECK(std::abs(freq - 0.3) <= 3.0 * std::sqrt(0.3 * 0.7 / static_cast<double>(n)));
}

TEST_CASE("sampling is a function of the seed", "[charstring]") {
  CHECK(sample_bernoulli({0.4, 200}, 7) == sample_bernoulli({0.4, 200}, 7));
  CHECK(sample_bernoulli({0.4, 200}, 7) != sample_bernoulli({0.4, 200}, 8));
}

TEST_CASE("constant martingale source matches Bernoulli", "[charstring]") {
  const double alpha = 0.3;
  MartingaleSource src{[=](const CharString&) { return alpha; }, 0.4};
  CHECK(sample_martingale(src, 64, 5) == sample_bernoulli({alpha, 64}, 5));

  // Goodness of fit of length-4 blocks against the product distribution.
  const int trials = 100000;
  std::array<int, 16> counts{};
  for (int i = 0; i < trials; ++i) {
    const auto w = sample_martingale(src, 4, 1000 + static_cast<std::uint64_t>(i));
    int code = 0;
    for (std::size_t j = 0; j < 4; ++j) code = code * 2 + w[j];
    ++counts[static_cast<std::size_t>(code)];
  }
  double chi2 = 0.0;
  for (int code = 0; code < 16; ++code) {
    const int ones = std::popcount(static_cast<unsigned>(code));
    const double expected = trials * std::pow(alpha, ones) * std::pow(1 - alpha, 4 - ones);
    chi2 += std::pow(counts[static_cast<std::size_t>(code)] - expected, 2) / expected;
  }
  // 15 degrees of freedom; 37.7 is the 0.999 quantile.
  CHECK(chi2 < 37.7);
}

TEST_CASE("martingale bound is enforced", "[charstring]") {
  const double eps = 0.2;
  MartingaleSource over{[=](const CharString&) { return (1 - eps) / 2 + 0.01; }, eps};
  CHECK_THROWS_AS(sample_martingale(over, 10, 1), MartingaleViolation);

  MartingaleSource zero{[](const CharString&) { return 0.0; }, eps};
  CHECK(sample_martingale(zero, 12, 3) == CharString::zeros(12));

  MartingaleSource missing{nullptr, eps};
  CHECK_THROWS_AS(sample_martingale(missing, 1, 1), BadParams);
}

TEST_CASE("prefix-dependent martingale stays under the bound", "[charstring]") {
  const double eps = 0.2;
  const double cap = (1 - eps) / 2;
  // Adversarial rate at the cap after a 0, lower after a 1.
  MartingaleSource src{[=](const CharString& p) { return (p.empty() || p[p.size() - 1] == 0) ? cap : cap / 2; }, eps};
  const std::size_t n = 100000;
  const auto w = sample_martingale(src, n, 11);
  const double freq = static_cast<double>(w.count_ones()) / static_cast<double>(n);
  CHECK(freq <= cap + 4.0 * std::sqrt(cap * (1 - cap) / static_cast<double>(n)));
}

TEST_CASE("pointwise order", "[charstring]") {
  CHECK(leq(CharString::parse("010"), CharString::parse("011")));
  CHECK_FALSE(leq(CharString::parse("010"), CharString::parse("001")));
  CHECK(leq(CharString(), CharString()));
  CHECK_THROWS_AS(leq(CharString::parse("0"), CharString::parse("01")), LengthMismatch);
}

TEST_CASE("reach and margin are monotone in the pointwise order", "[charstring][margin]") {
  for (std::size_t n = 0; n <= 8; ++n) {
    const auto all = all_strings(n);
    for (const auto& a : all) {
      for (const auto& b : all) {
        if (!leq(a, b)) continue;
        REQUIRE(rho(a) <= rho(b));
        REQUIRE(mu(a) <= mu(b));
      }
    }
  }
}

TEST_CASE("all_strings counts in binary", "[charstring]") {
  const auto s = all_strings(3);
  REQUIRE(s.size() == 8);
  CHECK(s[0].to_string() == "000");
  CHECK(s[1].to_string() == "001");
  CHECK(s[6].to_string() == "110");
}
