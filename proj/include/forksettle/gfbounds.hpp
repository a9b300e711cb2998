#pragma once

#include <cstddef>
#include <vector>

namespace forksettle {

/// Truncated formal power series c_0 + c_1 Z + ... + c_N Z^N.
class PowerSeries {
 public:
  PowerSeries() = default;
  /// Zero series of order N.
  explicit PowerSeries(std::size_t order) : c_(order + 1, 0.0) {}
  explicit PowerSeries(std::vector<double> coefficients);

  static PowerSeries identity(std::size_t order);
  /// 1 + Z + Z^2 + ... truncated at `order`.
  static PowerSeries geometric(std::size_t order);

  std::size_t order() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
  double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
  double& operator[](std::size_t i) { return c_.at(i); }
  const std::vector<double>& coefficients() const noexcept { return c_; }

  /// c_0 + ... + c_{k-1}, compensated.
  double partial_sum(std::size_t k) const;
  double evaluate(double z) const;

 private:
  std::vector<double> c_;
};

/// Results keep the smaller of the two orders.
PowerSeries add(const PowerSeries& a, const PowerSeries& b);
PowerSeries scale(const PowerSeries& a, double k);
PowerSeries multiply(const PowerSeries& a, const PowerSeries& b);
/// Z * a, keeping a's order.
PowerSeries shift(const PowerSeries& a);
/// outer(inner(Z)) by Horner's rule, O(N^3). Throws ComposeConstantTerm
/// unless inner[0] == 0.
PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner);

/// First-passage time to -1 of the walk stepping +1 w.p. p and -1 w.p. 1 - p:
/// D = qZ + pZ D^2.
PowerSeries descent_series(std::size_t order, double p);
/// First-passage time to +1 of the same walk: A = pZ + qZ A^2.
PowerSeries ascent_series(std::size_t order, double p);

/// Epoch series M̂(Z) = pZ D(Z) + qZ D(Z) A(Z D(Z)) with p = (1 - eps) / 2.
/// A(Z D) is built from its own quadratic equation rather than compose().
PowerSeries epoch_series(std::size_t order, double eps);
/// L̂ = eps / (1 - M̂): dominating law of the last time the margin is zero.
PowerSeries lhat_series(std::size_t order, double eps);
/// B̂ = L̂(Z) (1 - β) / (1 - β D(Z)), β = (1 - eps) / (1 + eps): the same
/// law when the walk starts from the stationary reach distribution.
PowerSeries relative_series(std::size_t order, double eps);

/// Σ_{t >= k} c_t for a series whose coefficients sum to 1. Uses 1 - Σ_{t<k}
/// while that is not dominated by rounding, otherwise sums c_k..c_N and
/// extrapolates past N from the decay of the last coefficients. Clamped
/// to [0, 1]. Throws BadParams if k > order.
double series_tail(const PowerSeries& s, std::size_t k);

/// Both dominating series for one eps, for answering many k at once.
class GfBounds {
 public:
  GfBounds(double eps, std::size_t order);

  double eps() const noexcept { return eps_; }
  std::size_t order() const noexcept { return lhat_.order(); }
  const PowerSeries& lhat() const noexcept { return lhat_; }
  const PowerSeries& relative() const noexcept { return bhat_; }

  double forkable_tail(std::size_t k) const { return series_tail(lhat_, k); }
  double relative_tail(std::size_t k) const { return series_tail(bhat_, k); }

 private:
  double eps_;
  PowerSeries lhat_;
  PowerSeries bhat_;
};

/// Default truncation for a query at k.
std::size_t default_order(std::size_t k);

/// Upper bound on Pr[a length-k string is forkable]. Throws BadParams unless 0 < eps < 1.
double forkable_tail_bound(std::size_t k, double eps);
/// Upper bound on Pr[μ_x(y) >= 0], |y| = k, for any |x|.
double relative_tail_bound(std::size_t k, double eps);

/// Radius of convergence of L̂; the tail bounds decay like radius^-k.
double convergence_radius(double eps);

/// min(1, 3 exp(-k eps^4 / (64 + 35 eps))).
double azuma_bound(std::size_t k, double eps);
/// min(1, exp(-2 eps^4 k / (1 + 35 eps))).
double azuma_forkable_bound(std::size_t k, double eps);

}  // namespace forksettle
