#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "forksettle/charstring.hpp"

namespace forksettle {

/// Joint state of the reach and relative-margin recursions.
///
/// While position <= split the walk is still inside x and mu mirrors rho;
/// past the split mu follows the relative-margin rule.
struct MarginWalk {
  std::int64_t split = 0;
  std::int64_t position = 0;
  std::int64_t rho = 0;
  std::int64_t mu = 0;

  static MarginWalk start(std::size_t split) { return {static_cast<std::int64_t>(split), 0, 0, 0}; }
  bool past_split() const noexcept { return position >= split; }

  friend bool operator==(const MarginWalk&, const MarginWalk&) = default;
};

/// ρ(w1) = ρ(w) + 1, ρ(w0) = max(ρ(w) - 1, 0).
constexpr std::int64_t rho_step(std::int64_t rho, int bit) noexcept {
  return bit ? rho + 1 : (rho > 0 ? rho - 1 : 0);
}

/// μ(w1) = μ(w) + 1; μ(w0) = 0 if ρ(w) > μ(w) = 0, else μ(w) - 1.
/// `rho` is the reach before the step.
constexpr std::int64_t mu_step(std::int64_t rho, std::int64_t mu, int bit) noexcept {
  if (bit) return mu + 1;
  return (rho > 0 && mu == 0) ? 0 : mu - 1;
}

MarginWalk walk_step(MarginWalk state, int bit);

std::int64_t rho(const CharString& w);
std::int64_t mu(const CharString& w);
std::int64_t relative_margin(const CharString& x, const CharString& y);

/// μ_x(y) for w = xy at every split |x| = 0..|w|.
std::vector<std::int64_t> relative_margins(const CharString& w);

inline bool is_forkable(const CharString& w) { return mu(w) >= 0; }

}  // namespace forksettle
