#include "forksettle/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <unordered_set>

#include "forksettle/errors.hpp"

namespace forksettle {

namespace {

void guard_length(const CharString& w) {
  if (w.size() > kMaxEnumerationLength) {
    throw TooLong("brute-force enumeration is limited to strings of length " +
                  std::to_string(kMaxEnumerationLength) + ", got " + std::to_string(w.size()));
  }
}

class ClosedForkWalker {
 public:
  ClosedForkWalker(const CharString& w, const std::function<void(const Fork&)>& visit) : w_(w), visit_(visit) {
    for (std::size_t t = 1; t <= w.size(); ++t) {
      if (w.honest(t)) honest_.push_back(static_cast<int>(t));
    }
  }

  void run() { place(0, 0); }

 private:
  void place(std::size_t next, int prev_depth) {
    if (next == honest_.size()) {
      visit_(fork_);
      return;
    }
    const int h = honest_[next];
    const std::size_t existing = fork_.size();
    for (std::size_t u = 0; u < existing; ++u) {
      const auto uid = static_cast<VertexId>(u);
      const int lu = fork_.label(uid);
      if (lu >= h) continue;
      std::vector<int> adv;
      for (int i = lu + 1; i < h; ++i) {
        if (!w_.honest(static_cast<std::size_t>(i))) adv.push_back(i);
      }
      const std::uint32_t subsets = 1U << adv.size();
      for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        const int depth = fork_.depth(uid) + std::popcount(mask) + 1;
        if (depth <= prev_depth) continue;
        VertexId tip = uid;
        for (std::size_t b = 0; b < adv.size(); ++b) {
          if (mask & (1U << b)) tip = fork_.add_vertex(tip, adv[b]);
        }
        fork_.add_vertex(tip, h);
        place(next + 1, depth);
        fork_.truncate(existing);
      }
    }
  }

  const CharString& w_;
  const std::function<void(const Fork&)>& visit_;
  std::vector<int> honest_;
  Fork fork_;
};

}  // namespace

void for_each_closed_fork(const CharString& w, const std::function<void(const Fork&)>& visit) {
  guard_length(w);
  ClosedForkWalker(w, visit).run();
}

std::vector<Fork> enumerate_closed_forks(const CharString& w, std::size_t cap) {
  guard_length(w);
  std::unordered_set<std::string> seen;
  std::vector<Fork> out;
  for_each_closed_fork(w, [&](const Fork& f) {
    if (!seen.insert(f.canonical_form()).second) return;
    if (out.size() >= cap) throw TooManyForks("more than " + std::to_string(cap) + " closed forks");
    out.push_back(f);
  });
  return out;
}

BruteMargins brute_margins(const CharString& w) {
  guard_length(w);
  const std::size_t n = w.size();
  const auto res = reserve_table(w);
  constexpr int kNone = std::numeric_limits<int>::min();
  BruteMargins out;
  out.rho = kNone;
  out.relative.assign(n + 1, kNone);
  std::vector<int> reach;
  std::vector<int> best_at(n + 1);
  for_each_closed_fork(w, [&](const Fork& f) {
    reach.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto id = static_cast<VertexId>(i);
      reach[i] = res[static_cast<std::size_t>(f.label(id))] - (f.height() - f.depth(id));
    }
    out.rho = std::max(out.rho, *std::max_element(reach.begin(), reach.end()));
    // best_at[L]: best min-reach over pairs whose intersection ends at label L.
    std::fill(best_at.begin(), best_at.end(), kNone);
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i; j < f.size(); ++j) {
        const int m = std::min(reach[i], reach[j]);
        auto& slot = best_at[static_cast<std::size_t>(f.intersection_label({static_cast<VertexId>(i)}, {static_cast<VertexId>(j)}))];
        slot = std::max(slot, m);
      }
    }
    int running = kNone;
    for (std::size_t m = 0; m <= n; ++m) {
      running = std::max(running, best_at[m]);
      out.relative[m] = std::max(out.relative[m], running);
    }
  });
  return out;
}

int brute_rho(const CharString& w) { return brute_margins(w).rho; }

int brute_relative_margin(const CharString& x, const CharString& y) {
  return brute_margins(x.concat(y)).relative[x.size()];
}

}  // namespace forksettle
