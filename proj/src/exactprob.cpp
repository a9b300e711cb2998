#include "forksettle/exactprob.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "forksettle/errors.hpp"
#include "numeric.hpp"

namespace forksettle {

using detail::CompensatedSum;

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw BadParams("alpha must lie in [0, 1/2], got " + std::to_string(alpha));
}

}  // namespace

double ReachPmf::total() const {
  CompensatedSum s;
  for (double x : p) s.add(x);
  s.add(tail_mass);
  return s.value();
}

ReachPmf stationary_pmf(double eps, std::size_t r_max) {
  if (!(eps > 0.0 && eps <= 1.0)) throw BadParams("eps must lie in (0, 1]");
  const double beta = (1.0 - eps) / (1.0 + eps);
  ReachPmf out;
  out.alpha = (1.0 - eps) / 2.0;
  out.p.resize(r_max + 1);
  double pw = 1.0;
  for (std::size_t r = 0; r <= r_max; ++r) {
    out.p[r] = (1.0 - beta) * pw;
    pw *= beta;
  }
  out.tail_mass = pw;
  return out;
}

ReachPmf finite_reach_pmf(std::size_t m, double alpha) {
  check_alpha(alpha);
  ReachPmf out;
  out.alpha = alpha;
  out.p.assign(m + 1, 0.0);
  out.p[0] = 1.0;
  std::vector<double> next(m + 1);
  for (std::size_t step = 0; step < m; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t r = 0; r <= step; ++r) {
      next[r + 1] += alpha * out.p[r];
      next[r == 0 ? 0 : r - 1] += (1.0 - alpha) * out.p[r];
    }
    out.p.swap(next);
  }
  return out;
}

double total_variation(const ReachPmf& a, const ReachPmf& b) {
  const std::size_t n = std::max(a.p.size(), b.p.size());
  CompensatedSum s;
  for (std::size_t r = 0; r < n; ++r) {
    const double x = r < a.p.size() ? a.p[r] : 0.0;
    const double y = r < b.p.size() ? b.p[r] : 0.0;
    s.add(std::abs(x - y));
  }
  s.add(std::abs(a.tail_mass - b.tail_mass));
  return 0.5 * s.value();
}

double ProbMatrix::at(int r, int s) const {
  if (r < 0 || r > r_max || s < s_min || s > s_max) return 0.0;
  const auto cols = static_cast<std::size_t>(s_max - s_min + 1);
  return cells[static_cast<std::size_t>(r) * cols + static_cast<std::size_t>(s - s_min)];
}

double ProbMatrix::total() const {
  CompensatedSum s;
  for (double x : cells) s.add(x);
  return s.value();
}

double ProbMatrix::nonneg_mass() const {
  CompensatedSum sum;
  for (int r = 0; r <= r_max; ++r) {
    for (int s = std::max(0, s_min); s <= s_max; ++s) sum.add(at(r, s));
  }
  return sum.value();
}

ProbMatrix margin_dp(std::size_t k, double alpha, const ReachPmf& initial) {
  check_alpha(alpha);
  ProbMatrix m;
  m.alpha = alpha;
  m.t = k;
  const int r0 = static_cast<int>(initial.r_max()) + 1;
  m.r_max = r0 + static_cast<int>(k);
  m.s_min = -static_cast<int>(k);
  m.s_max = m.r_max;
  const auto cols = static_cast<std::size_t>(m.s_max - m.s_min + 1);
  const auto rows = static_cast<std::size_t>(m.r_max + 1);
  auto idx = [&](int r, int s) { return static_cast<std::size_t>(r) * cols + static_cast<std::size_t>(s - m.s_min); };
  std::vector<double> cur(rows * cols, 0.0);
  for (std::size_t r = 0; r < initial.p.size(); ++r) cur[idx(static_cast<int>(r), static_cast<int>(r))] = initial.p[r];
  cur[idx(r0, r0)] += initial.tail_mass;
  std::vector<double> next(rows * cols);
  const double q = 1.0 - alpha;
  for (std::size_t step = 0; step < k; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int r = 0; r <= m.r_max; ++r) {
      for (int s = m.s_min; s <= m.s_max; ++s) {
        const double v = cur[idx(r, s)];
        if (v == 0.0) continue;
        next[idx(std::min(r + 1, m.r_max), std::min(s + 1, m.s_max))] += alpha * v;
        const int s0 = (r > 0 && s == 0) ? 0 : s - 1;
        next[idx(std::max(r - 1, 0), std::max(s0, m.s_min))] += q * v;
      }
    }
    cur.swap(next);
  }
  m.cells = std::move(cur);
  return m;
}

MarginDp::MarginDp(double alpha, const ReachPmf& initial, std::size_t horizon, DpBackend backend)
    : alpha_(alpha), horizon_(horizon), backend_(backend) {
  check_alpha(alpha);
  const int h = static_cast<int>(horizon);
  rows_ = h + 2;
  cols_ = static_cast<std::size_t>(std::max(2 * h, 1));
  offset_ = h;
  cur_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
  next_.assign(cur_.size(), 0.0);
  tail_ = initial.tail_mass;
  r_top_ = 0;
  for (std::size_t r = 0; r < initial.p.size(); ++r) {
    const int ri = static_cast<int>(r);
    if (ri >= h) {
      safe_ += initial.p[r];
    } else if (initial.p[r] != 0.0) {
      cur_[index(ri, ri)] = initial.p[r];
      r_top_ = std::max(r_top_, ri);
    }
  }
}

void MarginDp::step() {
  if (t_ >= horizon_) throw BadParams("margin DP stepped past its horizon");
  if (backend_ == DpBackend::Serial) {
    step_serial();
  } else {
    step_parallel();
  }
  ++t_;
}

// Serial reference: push every source cell to its two successors.
void MarginDp::step_serial() {
  const int w = window();
  const int wn = w - 1;
  const double q = 1.0 - alpha_;
  const int top = std::max(std::min(r_top_ + 1, wn + 1), 0);
  for (int r = 0; r <= top && wn > 0; ++r) {
    std::fill_n(next_.data() + index(r, -wn), static_cast<std::size_t>(2 * wn), 0.0);
  }
  auto place = [&](int r, int s, double m) {
    if (s >= wn) {
      safe_ += m;
    } else if (s < -wn) {
      dead_ += m;
    } else {
      next_[index(std::min(r, wn + 1), s)] += m;
    }
  };
  for (int r = 0; r <= r_top_; ++r) {
    for (int s = -w; s <= w - 1; ++s) {
      const double v = cur_[index(r, s)];
      if (v == 0.0) continue;
      place(r + 1, s + 1, alpha_ * v);
      place(r > 0 ? r - 1 : 0, (r > 0 && s == 0) ? 0 : s - 1, q * v);
    }
  }
  cur_.swap(next_);
  r_top_ = top;
}

// Parallel kernel: each destination row gathers from at most four source
// cells, so rows are independent. Flows leaving the window only touch a
// few boundary columns and are accumulated separately.
void MarginDp::step_parallel() {
  const int w = window();
  const int wn = w - 1;
  const double a = alpha_;
  const double q = 1.0 - alpha_;
  const int src_top = r_top_;
  const int top = std::max(std::min(src_top + 1, wn + 1), 0);

  // Boundary flows into the absorbed masses.
  const int boundary[] = {-w, -w + 1, 0, 1, w - 2, w - 1};
  for (int r = 0; r <= src_top; ++r) {
    for (std::size_t bi = 0; bi < std::size(boundary); ++bi) {
      const int s = boundary[bi];
      if (s < -w || s > w - 1) continue;
      bool repeated = false;
      for (std::size_t bj = 0; bj < bi; ++bj) repeated = repeated || boundary[bj] == s;
      if (repeated) continue;
      const double v = cur_[index(r, s)];
      if (v == 0.0) continue;
      const int up = s + 1;
      const int down = (r > 0 && s == 0) ? 0 : s - 1;
      if (up >= wn) safe_ += a * v;
      if (down >= wn) {
        safe_ += q * v;
      } else if (down < -wn) {
        dead_ += q * v;
      }
    }
  }

  if (wn > 0) {
    const int rows = top + 1;
    const int width = 2 * wn;
    // Source columns sn - 1 and sn + 1 for sn in [-wn, wn - 1] always lie
    // inside the source window [-w, w - 1], so rows are plain shifted copies.
    FORKSETTLE_OMP_FOR
    for (int rn = 0; rn < rows; ++rn) {
      double* out = next_.data() + index(rn, -wn);
      std::fill_n(out, width, 0.0);
      auto add_up = [&](int r) {
        const double* in = cur_.data() + index(r, -wn - 1);
        for (int i = 0; i < width; ++i) out[i] += a * in[i];
      };
      // Up moves: r -> min(r + 1, wn + 1) == rn.
      if (rn == wn + 1) {
        for (int r = wn; r <= src_top; ++r) add_up(r);
      } else if (rn >= 1 && rn - 1 <= src_top) {
        add_up(rn - 1);
      }
      // Down moves from r = rn + 1 > 0; (r, 0) keeps μ at 0 instead of -1.
      if (rn + 1 <= src_top) {
        const double* in = cur_.data() + index(rn + 1, -wn + 1);
        for (int i = 0; i < wn - 1; ++i) out[i] += q * in[i];
        for (int i = wn; i < width; ++i) out[i] += q * in[i];
        out[wn] += q * in[wn - 1];
      }
      // Down moves from r = 0 stay on row 0.
      if (rn == 0) {
        const double* in = cur_.data() + index(0, -wn + 1);
        for (int i = 0; i < width; ++i) out[i] += q * in[i];
      }
    }
  }
  // Cells outside rows [0, top] x window keep stale values; nothing reads them.
  cur_.swap(next_);
  r_top_ = top;
}

double MarginDp::prob_nonneg() const {
  CompensatedSum sum;
  sum.add(safe_);
  sum.add(tail_);
  const int w = window();
  for (int r = 0; r <= r_top_; ++r) {
    for (int s = 0; s <= w - 1; ++s) sum.add(cur_[index(r, s)]);
  }
  return sum.value();
}

double MarginDp::total_mass() const {
  CompensatedSum sum;
  sum.add(safe_);
  sum.add(dead_);
  sum.add(tail_);
  const int w = window();
  for (int r = 0; r <= r_top_; ++r) {
    for (int s = -w; s <= w - 1; ++s) sum.add(cur_[index(r, s)]);
  }
  return sum.value();
}

double prob_nonneg_margin(std::size_t k, double alpha, const ReachPmf& initial, DpBackend backend) {
  MarginDp dp(alpha, initial, k, backend);
  for (std::size_t t = 0; t < k; ++t) dp.step();
  return dp.prob_nonneg();
}

std::vector<double> nonneg_margin_series(std::size_t k_max, double alpha, const ReachPmf& initial,
                                         DpBackend backend) {
  MarginDp dp(alpha, initial, k_max, backend);
  std::vector<double> out;
  out.reserve(k_max + 1);
  out.push_back(dp.prob_nonneg());
  for (std::size_t t = 0; t < k_max; ++t) {
    dp.step();
    out.push_back(dp.prob_nonneg());
  }
  return out;
}

double settlement_tail(std::size_t k_min, double alpha, const ReachPmf& initial, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw BadParams("rel_tol must lie in (0, 1)");
  constexpr std::size_t kFirstSpan = 256;
  constexpr std::size_t kMaxSpan = 4096;
  constexpr int kRisingLimit = 50;
  for (std::size_t span = kFirstSpan;; span = std::min(2 * span, kMaxSpan)) {
    const auto series = nonneg_margin_series(k_min + span, alpha, initial);
    CompensatedSum sum;
    double prev = 0.0;
    int rising = 0;
    for (std::size_t t = k_min; t <= k_min + span; ++t) {
      const double term = series[t];
      double ratio = 0.0;
      if (t > k_min) {
        ratio = prev > 0.0 ? term / prev : 0.0;
        rising = ratio >= 1.0 ? rising + 1 : 0;
        if (rising >= kRisingLimit) {
          throw NonConvergent("settlement tail terms stopped decreasing near |y| = " + std::to_string(t));
        }
      }
      sum.add(term);
      const double total = sum.value();
      if (t > k_min && total > 0.0 && term < rel_tol * total && ratio < 1.0) {
        return total + term * ratio / (1.0 - ratio);
      }
      if (total == 0.0 && t > k_min + initial.r_max()) return 0.0;
      prev = term;
    }
    if (span == kMaxSpan) {
      throw NonConvergent("settlement tail did not reach relative tolerance within " + std::to_string(kMaxSpan) +
                          " terms");
    }
  }
}

double prob_settlement_violation(double alpha, std::size_t prefix_len, std::size_t min_suffix,
                                 std::size_t max_suffix) {
  check_alpha(alpha);
  if (min_suffix > max_suffix) throw BadParams("min_suffix exceeds max_suffix");
  const auto init = finite_reach_pmf(prefix_len, alpha);
  const int rmax = static_cast<int>(prefix_len + max_suffix);
  const int smin = -static_cast<int>(max_suffix);
  const int smax = rmax;
  const auto cols = static_cast<std::size_t>(smax - smin + 1);
  auto idx = [&](int r, int s) { return static_cast<std::size_t>(r) * cols + static_cast<std::size_t>(s - smin); };
  std::vector<double> cur(static_cast<std::size_t>(rmax + 1) * cols, 0.0);
  std::vector<double> next(cur.size());
  for (std::size_t r = 0; r < init.p.size(); ++r) cur[idx(static_cast<int>(r), static_cast<int>(r))] = init.p[r];
  CompensatedSum hit;
  auto absorb = [&] {
    for (int r = 0; r <= rmax; ++r) {
      for (int s = 0; s <= smax; ++s) {
        hit.add(cur[idx(r, s)]);
        cur[idx(r, s)] = 0.0;
      }
    }
  };
  if (min_suffix == 0) absorb();
  const double q = 1.0 - alpha;
  for (std::size_t t = 1; t <= max_suffix; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int r = 0; r < rmax; ++r) {
      for (int s = smin + 1; s <= smax - 1; ++s) {
        const double v = cur[idx(r, s)];
        if (v == 0.0) continue;
        next[idx(r + 1, s + 1)] += alpha * v;
        next[idx(r > 0 ? r - 1 : 0, (r > 0 && s == 0) ? 0 : s - 1)] += q * v;
      }
    }
    cur.swap(next);
    if (t >= min_suffix) absorb();
  }
  return hit.value();
}

}  // namespace forksettle
