#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "forksettle/charstring.hpp"
#include "forksettle/fork.hpp"

namespace forksettle {

/// Longest string the brute-force enumerators accept.
inline constexpr std::size_t kMaxEnumerationLength = 10;

/// Visits every closed fork for w in which each honest vertex hangs off an
/// earlier vertex through a chain of fresh adversarial vertices. Every
/// closed fork is produced at least once up to isomorphism; isomorphic
/// copies may repeat. The visited Fork is only valid during the callback.
/// Throws TooLong when |w| exceeds kMaxEnumerationLength.
void for_each_closed_fork(const CharString& w, const std::function<void(const Fork&)>& visit);

/// Closed forks for w deduplicated by canonical form, in first-seen order.
/// Throws TooManyForks once more than `cap` distinct forks are found.
std::vector<Fork> enumerate_closed_forks(const CharString& w, std::size_t cap = 10'000'000);

struct BruteMargins {
  int rho = 0;
  /// relative[m] = μ_x(y) with |x| = m, for m in [0, |w|].
  std::vector<int> relative;
};

/// ρ(w) and every relative margin of w, maximized over all closed forks.
BruteMargins brute_margins(const CharString& w);

int brute_rho(const CharString& w);
int brute_relative_margin(const CharString& x, const CharString& y);

}  // namespace forksettle
