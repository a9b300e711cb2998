#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "forksettle/errors.hpp"
#include "forksettle/exactprob.hpp"
#include "forksettle/gfbounds.hpp"

using namespace forksettle;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double catalan(int j) {
  double c = 1.0;
  for (int i = 0; i < j; ++i) c = c * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
  return c;
}

}  // namespace

TEST_CASE("series arithmetic", "[gfbounds]") {
  const PowerSeries one_plus_z(std::vector<double>{1, 1, 0, 0, 0});
  const auto sq = multiply(one_plus_z, one_plus_z);
  CHECK(sq.coefficients() == std::vector<double>{1, 2, 1, 0, 0});

  const PowerSeries one_minus_z(std::vector<double>{1, -1, 0, 0, 0, 0, 0});
  const auto prod = multiply(one_minus_z, PowerSeries::geometric(6));
  CHECK(prod.coefficients() == std::vector<double>{1, 0, 0, 0, 0, 0, 0});

  const PowerSeries f(std::vector<double>{0, 0.5, 0.25, -1, 2});
  CHECK(compose(PowerSeries::identity(4), f).coefficients() == f.coefficients());
  CHECK(compose(f, PowerSeries::identity(4)).coefficients() == f.coefficients());
  CHECK_THROWS_AS(compose(f, PowerSeries::geometric(4)), ComposeConstantTerm);

  // (1 + Z)^2 composed with 2Z is 1 + 4Z + 4Z^2.
  const auto c = compose(sq, scale(PowerSeries::identity(4), 2.0));
  CHECK(c.coefficients() == std::vector<double>{1, 4, 4, 0, 0});
  CHECK(add(f, one_plus_z).order() == 4);
  CHECK(shift(one_plus_z).coefficients() == std::vector<double>{0, 1, 1, 0, 0});
  CHECK_THAT(sq.evaluate(0.5), WithinAbs(2.25, 1e-15));
}

TEST_CASE("descent and ascent series", "[gfbounds]") {
  const double p = 0.3;
  const double q = 0.7;
  const auto d = descent_series(61, p);
  const auto a = ascent_series(61, p);
  CHECK_THAT(d[1], WithinAbs(q, 1e-15));
  CHECK_THAT(d[3], WithinAbs(p * q * q, 1e-15));
  for (int j = 0; j <= 30; ++j) {
    const auto n = static_cast<std::size_t>(2 * j + 1);
    CHECK_THAT(d[n], WithinRel(catalan(j) * std::pow(p, j) * std::pow(q, j + 1), 1e-10));
    CHECK_THAT(a[n], WithinRel(catalan(j) * std::pow(q, j) * std::pow(p, j + 1), 1e-10));
    CHECK(d[n - 1] == 0.0);
  }
  // Closed forms inside the disc of convergence.
  const double z = 0.5;
  const double disc = std::sqrt(1 - 4 * p * q * z * z);
  CHECK_THAT(d.evaluate(z), WithinRel((1 - disc) / (2 * p * z), 1e-12));
  CHECK_THAT(a.evaluate(z), WithinRel((1 - disc) / (2 * q * z), 1e-12));

  const auto big_d = descent_series(20000, p);
  const auto big_a = ascent_series(20000, p);
  CHECK_THAT(big_d.partial_sum(20001), WithinAbs(1.0, 1e-9));
  CHECK_THAT(big_a.partial_sum(20001), WithinAbs(p / q, 1e-9));
  CHECK_THROWS_AS(descent_series(5, 0.0), BadParams);
}

TEST_CASE("epoch series matches literal composition", "[gfbounds]") {
  const double eps = 0.3;
  const double p = (1 - eps) / 2;
  const double q = 1 - p;
  const std::size_t n = 40;
  const auto d = descent_series(n, p);
  const auto zd = shift(d);
  const auto literal = add(scale(zd, p), scale(shift(multiply(d, compose(ascent_series(n, p), zd))), q));
  const auto fast = epoch_series(n, eps);
  for (std::size_t i = 0; i <= n; ++i) CHECK_THAT(fast[i], WithinAbs(literal[i], 1e-15));
  CHECK(fast[0] == 0.0);
  // M̂(1) = 1 - eps.
  CHECK_THAT(epoch_series(30000, eps).partial_sum(30001), WithinAbs(1 - eps, 1e-6));
}

TEST_CASE("dominating last-zero series", "[gfbounds]") {
  for (double eps : {0.1, 0.3, 0.5, 0.9}) {
    const GfBounds gf(eps, 3000);
    CHECK_THAT(gf.lhat()[0], WithinAbs(eps, 1e-15));
    double prev = -1;
    for (std::size_t k = 0; k <= 3000; k += 50) {
      const double ps = gf.lhat().partial_sum(k);
      CHECK(ps >= prev);
      CHECK(ps <= 1 + 1e-12);
      prev = ps;
    }
    for (double c : gf.lhat().coefficients()) REQUIRE(c >= -1e-15);
    for (double c : gf.relative().coefficients()) REQUIRE(c >= -1e-15);
  }
  CHECK_THAT(GfBounds(0.5, 2000).lhat().partial_sum(2001), WithinAbs(1.0, 1e-10));
}

TEST_CASE("tail bounds", "[gfbounds]") {
  CHECK(forkable_tail_bound(0, 0.3) == 1.0);
  CHECK(relative_tail_bound(0, 0.3) == 1.0);
  CHECK(forkable_tail_bound(50, 0.5) >= 1.96e-3);
  CHECK(relative_tail_bound(50, 0.9) >= 5.37e-15);

  const GfBounds gf(0.5, 800);
  double prev = 2.0;
  for (std::size_t k = 0; k <= 200; ++k) {
    const double f = gf.forkable_tail(k);
    REQUIRE(f <= prev);
    REQUIRE(gf.relative_tail(k) >= f * (1 - 1e-9));
    prev = f;
  }
  CHECK_THROWS_AS(gf.forkable_tail(801), BadParams);
  CHECK_THROWS_AS(forkable_tail_bound(10, 1.0), BadParams);
}

TEST_CASE("bounds dominate the exact probabilities", "[gfbounds]") {
  for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double alpha = (1 - eps) / 2;
    const GfBounds gf(eps, 1600);
    const auto stat = nonneg_margin_series(400, alpha, stationary_pmf(eps, 464));
    const auto point = nonneg_margin_series(400, alpha, finite_reach_pmf(0, alpha));
    for (std::size_t k = 1; k <= 400; k += 7) {
      CHECK(gf.forkable_tail(k) >= point[k] * (1 - 1e-9));
      CHECK(gf.relative_tail(k) >= stat[k] * (1 - 1e-9));
      if (k >= 50) CHECK(azuma_bound(k, eps) >= stat[k]);
    }
  }
}

TEST_CASE("convergence radius", "[gfbounds]") {
  CHECK_THAT(convergence_radius(1e-4), WithinAbs(1.0, 1e-9));
  CHECK(std::abs(convergence_radius(0.1) - 1 - 0.0005) <= 0.0002);
  for (double eps : {0.1, 0.3, 0.5}) {
    // The radius of L̂ is below that of D.
    CHECK(convergence_radius(eps) > 1.0);
    CHECK(convergence_radius(eps) < 1.0 / std::sqrt(1 - eps * eps));
  }

  // Measured decay of the tail at eps = 0.5 against -log(radius).
  const GfBounds gf(0.5, 8000);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 1000; k <= 2000; k += 10) {
    const double x = static_cast<double>(k);
    const double y = std::log(gf.forkable_tail(k));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK_THAT(slope, WithinRel(-std::log(convergence_radius(0.5)), 0.10));
}

TEST_CASE("azuma bounds", "[gfbounds]") {
  CHECK(azuma_bound(0, 0.4) == 1.0);
  CHECK(azuma_forkable_bound(0, 0.4) == 1.0);
  CHECK_THAT(azuma_forkable_bound(1000, 0.5), WithinRel(std::exp(-2 * 0.0625 * 1000 / 18.5), 1e-14));
  CHECK_THAT(azuma_bound(100000, 0.5), WithinRel(3 * std::exp(-100000 * 0.0625 / 81.5), 1e-14));
  CHECK_THROWS_AS(azuma_bound(10, 0.0), BadParams);
}
