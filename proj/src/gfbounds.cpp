#include "forksettle/gfbounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "forksettle/errors.hpp"
#include "numeric.hpp"

namespace forksettle {

namespace {

void check_open_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw BadParams("eps must lie in (0, 1), got " + std::to_string(eps));
}

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw BadParams("p must lie in (0, 1), got " + std::to_string(p));
}

// Solves F = a L + b G F^2 term by term, where g_0 = 0. Descent and
// ascent use L = G = Z; the composed ascent A(Z D) uses L = G = Z D.
PowerSeries quadratic_fixed_point(std::size_t order, double a, double b, const std::vector<double>& lin,
                                  const std::vector<double>& g) {
  std::vector<double> f(order + 1, 0.0);
  std::vector<double> sq(order + 1, 0.0);  // F^2, filled as f becomes known
  std::size_t sq_known = 0;                // sq[0..sq_known) final
  for (std::size_t n = 0; n <= order; ++n) {
    // (G F^2)_n uses sq up to n - j with g_j != 0 only for j >= 1.
    while (sq_known < n) {
      const std::size_t m = sq_known;
      double s = 0.0;
      for (std::size_t i = 0; i <= m; ++i) s += f[i] * f[m - i];
      sq[m] = s;
      ++sq_known;
    }
    double conv = 0.0;
    for (std::size_t j = 1; j <= n; ++j) conv += g[j] * sq[n - j];
    f[n] = a * lin[n] + b * conv;
  }
  return PowerSeries(std::move(f));
}

// c0 / (1 - factor s) for s with s_0 = 0: x_0 = c0, x_n = factor Σ s_j x_{n-j}.
PowerSeries geometric_inverse(const PowerSeries& s, double c0, double factor) {
  const std::size_t n_max = s.order();
  std::vector<double> x(n_max + 1, 0.0);
  x[0] = c0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double v = 0.0;
    for (std::size_t j = 1; j <= n; ++j) v += s[j] * x[n - j];
    x[n] = factor * v;
  }
  return PowerSeries(std::move(x));
}

// R∞(D(Z)) = (1 - β) / (1 - β D(Z)).
PowerSeries stationary_start(std::size_t order, double eps) {
  const double beta = (1.0 - eps) / (1.0 + eps);
  return geometric_inverse(descent_series(order, (1.0 - eps) / 2.0), 1.0 - beta, beta);
}

}  // namespace

PowerSeries::PowerSeries(std::vector<double> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) c_.push_back(0.0);
}

PowerSeries PowerSeries::identity(std::size_t order) {
  PowerSeries s(order);
  if (order >= 1) s.c_[1] = 1.0;
  return s;
}

PowerSeries PowerSeries::geometric(std::size_t order) { return PowerSeries(std::vector<double>(order + 1, 1.0)); }

double PowerSeries::partial_sum(std::size_t k) const {
  detail::CompensatedSum sum;
  for (std::size_t i = 0; i < std::min(k, c_.size()); ++i) sum.add(c_[i]);
  return sum.value();
}

double PowerSeries::evaluate(double z) const {
  double v = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) v = v * z + c_[i];
  return v;
}

PowerSeries add(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries out(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= out.order(); ++i) out[i] = a[i] + b[i];
  return out;
}

PowerSeries scale(const PowerSeries& a, double k) {
  PowerSeries out(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) out[i] = k * a[i];
  return out;
}

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t n_max = std::min(a.order(), b.order());
  std::vector<double> out(n_max + 1, 0.0);
  const auto& ac = a.coefficients();
  const auto& bc = b.coefficients();
  const auto n_int = static_cast<long long>(n_max);
  FORKSETTLE_OMP_FOR_DYNAMIC
  for (long long n = 0; n <= n_int; ++n) {
    double v = 0.0;
    for (long long i = 0; i <= n; ++i) v += ac[static_cast<std::size_t>(i)] * bc[static_cast<std::size_t>(n - i)];
    out[static_cast<std::size_t>(n)] = v;
  }
  return PowerSeries(std::move(out));
}

PowerSeries shift(const PowerSeries& a) {
  PowerSeries out(a.order());
  for (std::size_t i = 1; i <= a.order(); ++i) out[i] = a[i - 1];
  return out;
}

PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner) {
  if (inner[0] != 0.0) throw ComposeConstantTerm("inner series must have zero constant term");
  const std::size_t n_max = std::min(outer.order(), inner.order());
  PowerSeries acc(n_max);
  for (std::size_t i = outer.order() + 1; i-- > 0;) {
    acc = multiply(acc, inner);
    acc[0] += outer[i];
  }
  return acc;
}

PowerSeries descent_series(std::size_t order, double p) {
  check_p(p);
  const PowerSeries z = PowerSeries::identity(order);
  return quadratic_fixed_point(order, 1.0 - p, p, z.coefficients(), z.coefficients());
}

PowerSeries ascent_series(std::size_t order, double p) {
  check_p(p);
  const PowerSeries z = PowerSeries::identity(order);
  return quadratic_fixed_point(order, p, 1.0 - p, z.coefficients(), z.coefficients());
}

PowerSeries epoch_series(std::size_t order, double eps) {
  check_open_eps(eps);
  const double p = (1.0 - eps) / 2.0;
  const double q = 1.0 - p;
  const PowerSeries d = descent_series(order, p);
  const PowerSeries zd = shift(d);
  // H = A(Z D) satisfies H = p (Z D) + q (Z D) H^2.
  const PowerSeries h = quadratic_fixed_point(order, p, q, zd.coefficients(), zd.coefficients());
  return add(scale(zd, p), scale(shift(multiply(d, h)), q));
}

PowerSeries lhat_series(std::size_t order, double eps) {
  return geometric_inverse(epoch_series(order, eps), eps, 1.0);
}

PowerSeries relative_series(std::size_t order, double eps) {
  check_open_eps(eps);
  return multiply(lhat_series(order, eps), stationary_start(order, eps));
}

double series_tail(const PowerSeries& s, std::size_t k) {
  const std::size_t n = s.order();
  if (k > n) {
    throw BadParams("tail at k = " + std::to_string(k) + " needs a series of order >= k, have " + std::to_string(n));
  }
  const double complement = 1.0 - s.partial_sum(k);
  if (complement >= 1e-3 || n < 4) return std::clamp(complement, 0.0, 1.0);

  detail::CompensatedSum direct;
  for (std::size_t t = k; t <= n; ++t) direct.add(s[t]);
  // Coefficients may alternate in size with parity, so compare pairs.
  const double last = s[n] + s[n - 1];
  const double prev = s[n - 2] + s[n - 3];
  if (prev > 0.0 && last > 0.0) {
    const double r = last / prev;
    if (r >= 1.0) return std::clamp(complement, 0.0, 1.0);
    direct.add(last * r / (1.0 - r));
  }
  return std::clamp(direct.value(), 0.0, 1.0);
}

GfBounds::GfBounds(double eps, std::size_t order) : eps_(eps) {
  check_open_eps(eps);
  lhat_ = lhat_series(order, eps);
  bhat_ = multiply(lhat_, stationary_start(order, eps));
}

std::size_t default_order(std::size_t k) { return std::max<std::size_t>(4 * k, 64); }

double forkable_tail_bound(std::size_t k, double eps) {
  if (k == 0) return 1.0;
  check_open_eps(eps);
  return series_tail(lhat_series(default_order(k), eps), k);
}

double relative_tail_bound(std::size_t k, double eps) {
  if (k == 0) return 1.0;
  return series_tail(relative_series(default_order(k), eps), k);
}

double convergence_radius(double eps) {
  check_open_eps(eps);
  const double a = 1.0 / (1.0 + eps);
  return std::sqrt(a * (2.0 / std::sqrt(1.0 - eps * eps) - a));
}

double azuma_bound(std::size_t k, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw BadParams("eps must lie in (0, 1]");
  const double e4 = std::pow(eps, 4);
  return std::min(1.0, 3.0 * std::exp(-static_cast<double>(k) * e4 / (64.0 + 35.0 * eps)));
}

double azuma_forkable_bound(std::size_t k, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw BadParams("eps must lie in (0, 1]");
  const double e4 = std::pow(eps, 4);
  return std::min(1.0, std::exp(-2.0 * e4 * static_cast<double>(k) / (1.0 + 35.0 * eps)));
}

}  // namespace forksettle
