#include "forksettle/margin.hpp"

namespace forksettle {

MarginWalk walk_step(MarginWalk state, int bit) {
  if (state.position < state.split) {
    state.rho = rho_step(state.rho, bit);
    state.mu = state.rho;
  } else {
    state.mu = mu_step(state.rho, state.mu, bit);
    state.rho = rho_step(state.rho, bit);
  }
  ++state.position;
  return state;
}

std::int64_t rho(const CharString& w) {
  std::int64_t r = 0;
  for (auto b : w.bits()) r = rho_step(r, b);
  return r;
}

std::int64_t mu(const CharString& w) { return relative_margin(CharString(), w); }

std::int64_t relative_margin(const CharString& x, const CharString& y) {
  auto st = MarginWalk::start(x.size());
  for (auto b : x.bits()) st = walk_step(st, b);
  for (auto b : y.bits()) st = walk_step(st, b);
  return st.mu;
}

std::vector<std::int64_t> relative_margins(const CharString& w) {
  std::vector<std::int64_t> out(w.size() + 1);
  std::int64_t r = 0;
  for (std::size_t m = 0; m <= w.size(); ++m) {
    std::int64_t rr = r;
    std::int64_t s = r;
    for (std::size_t i = m; i < w.size(); ++i) {
      s = mu_step(rr, s, w[i]);
      rr = rho_step(rr, w[i]);
    }
    out[m] = s;
    if (m < w.size()) r = rho_step(r, w[m]);
  }
  return out;
}

}  // namespace forksettle
