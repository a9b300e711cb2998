#pragma once

#include <cstddef>
#include <vector>

namespace forksettle {

/// Distribution of the reach ρ(x). Entry r is Pr[ρ = r] for r <= r_max();
/// `tail_mass` is the probability above r_max.
struct ReachPmf {
  std::vector<double> p;
  double tail_mass = 0.0;
  double alpha = 0.0;

  std::size_t r_max() const noexcept { return p.empty() ? 0 : p.size() - 1; }
  double total() const;
};

/// Limit distribution of the reflecting walk: (1 - β) β^r with
/// β = (1 - eps) / (1 + eps). Throws BadParams unless 0 < eps <= 1.
ReachPmf stationary_pmf(double eps, std::size_t r_max);

/// ρ after m Bernoulli(alpha) slots, i.e. m steps of the reflecting walk
/// from 0. Exact: r_max() == m and tail_mass == 0.
ReachPmf finite_reach_pmf(std::size_t m, double alpha);

/// Total-variation distance between two reach distributions; tails are
/// compared as one extra outcome.
double total_variation(const ReachPmf& a, const ReachPmf& b);

/// Dense joint table M_t(r, s) = Pr[ρ(xy) = r, μ_x(y) = s] with |y| = t.
struct ProbMatrix {
  std::size_t t = 0;
  double alpha = 0.0;
  int r_max = 0;
  int s_min = 0;
  int s_max = 0;
  std::vector<double> cells;

  double at(int r, int s) const;
  double total() const;
  /// Compensated sum over r >= 0, s >= 0.
  double nonneg_mass() const;
};

/// The literal recursion on the full (r, s) grid, one step at a time, with
/// no pruning. r ranges over [0, initial.r_max + k]; the initial tail mass,
/// if any, sits at r = initial.r_max + 1. Intended for checks and small k.
ProbMatrix margin_dp(std::size_t k, double alpha, const ReachPmf& initial);

enum class DpBackend { Serial, Parallel };

/// Streaming (ρ, μ_x) recursion for all |y| up to a fixed horizon.
///
/// Only the window that can still change the event μ_x(y) >= 0 before the
/// horizon is stored: states whose μ sits so high (low) that it cannot dip
/// below (climb back to) zero in the remaining steps are absorbed into two
/// scalar masses, and reaches too large to return to zero are merged.
/// Results are exact for every t <= horizon. Initial tail mass is counted
/// as permanently non-negative, which can only overstate the probability.
///
/// The Serial backend scatters each source cell; the Parallel backend
/// gathers each destination row and splits rows across OpenMP threads.
class MarginDp {
 public:
  MarginDp(double alpha, const ReachPmf& initial, std::size_t horizon, DpBackend backend = DpBackend::Parallel);

  void step();
  std::size_t t() const noexcept { return t_; }
  std::size_t horizon() const noexcept { return horizon_; }

  /// Pr[μ_x(y) >= 0] for |y| = t().
  double prob_nonneg() const;
  /// Mass in the window plus both absorbed masses; 1 up to rounding.
  double total_mass() const;
  /// Mass absorbed as permanently non-negative, excluding the folded initial tail.
  double safe_mass() const noexcept { return safe_; }
  double dead_mass() const noexcept { return dead_; }
  double initial_tail() const noexcept { return tail_; }

 private:
  int window() const noexcept { return static_cast<int>(horizon_ - t_); }
  std::size_t index(int r, int s) const noexcept {
    return static_cast<std::size_t>(r) * cols_ + static_cast<std::size_t>(s + offset_);
  }
  void step_serial();
  void step_parallel();

  double alpha_;
  std::size_t horizon_;
  DpBackend backend_;
  std::size_t t_ = 0;
  int rows_ = 0;
  std::size_t cols_ = 0;
  int offset_ = 0;
  int r_top_ = 0;
  std::vector<double> cur_;
  std::vector<double> next_;
  double safe_ = 0.0;
  double dead_ = 0.0;
  double tail_ = 0.0;
};

/// Pr[μ_x(y) >= 0] for |y| = k with ρ(x) ~ initial.
double prob_nonneg_margin(std::size_t k, double alpha, const ReachPmf& initial,
                          DpBackend backend = DpBackend::Parallel);

/// Pr[μ_x(y) >= 0] for |y| = 0..k_max from a single streaming pass.
std::vector<double> nonneg_margin_series(std::size_t k_max, double alpha, const ReachPmf& initial,
                                         DpBackend backend = DpBackend::Parallel);

/// Σ_{t >= k_min} Pr[μ_x(y) >= 0, |y| = t], stopped once a term drops
/// below rel_tol times the running sum and finished with a geometric tail
/// estimate from the last term ratio. Throws NonConvergent if the ratio
/// stays >= 1 for 50 consecutive terms or no stop happens by k_min + 4096.
double settlement_tail(std::size_t k_min, double alpha, const ReachPmf& initial, double rel_tol = 1e-6);

/// Pr[∃ t in [min_suffix, max_suffix]: μ_x(y) >= 0 with |y| = t], where
/// x is `prefix_len` Bernoulli(alpha) slots and y continues the same
/// string. This is the string-level settlement-violation probability for
/// slot prefix_len + 1.
double prob_settlement_violation(double alpha, std::size_t prefix_len, std::size_t min_suffix,
                                 std::size_t max_suffix);

}  // namespace forksettle
