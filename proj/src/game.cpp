#include "forksettle/game.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "forksettle/errors.hpp"
#include "forksettle/rng.hpp"

namespace forksettle {

namespace {

void check_game_params(std::size_t n, std::size_t s, std::size_t k) {
  if (s < 1 || s + k > n) {
    throw BadParams("settlement game needs 1 <= s and s + k <= T (s = " + std::to_string(s) +
                    ", k = " + std::to_string(k) + ", T = " + std::to_string(n) + ")");
  }
}

// Runs one adversary hook on the game fork and checks what came back.
template <typename Hook>
void guarded(Fork& fork, const CharString& prefix, Validation mode, const char* what, Hook&& hook) {
  const std::size_t t = prefix.size();
  auto reject = [&](const std::string& why) {
    throw InvalidAdversaryFork(std::string(what) + " at slot " + std::to_string(t) + ": " + why);
  };
  if (mode == Validation::Deep) {
    const Fork before = fork;
    hook();
    if (!extends_by_id(before, fork) && !is_prefix(before, fork)) reject("result does not contain the previous fork");
    if (const auto v = validate(fork, prefix); !v.ok()) {
      reject(std::string("axiom ") + axiom_name(v.violation->axiom) + ": " + v.violation->message);
    }
    return;
  }
  const std::size_t n = fork.size();
  const std::uint64_t digest = fork.digest();
  hook();
  if (fork.size() < n || fork.prefix_digest(n) != digest) reject("previous vertices were changed");
  for (std::size_t i = n; i < fork.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    const int l = fork.label(id);
    if (l < 1 || static_cast<std::size_t>(l) > t || l <= fork.label(fork.parent(id)) ||
        prefix.honest(static_cast<std::size_t>(l))) {
      reject("appended vertex " + std::to_string(i) + " has an invalid label");
    }
  }
}

}  // namespace

Tine AdversaryStrategy::tie_break(const Fork& fork, const std::vector<Tine>& candidates, std::size_t) {
  Tine best = candidates.front();
  for (const Tine& c : candidates) {
    if (tine_order_less(fork, c, best)) best = c;
  }
  return best;
}

void CanonicalAdversary::begin(const CharString& w, std::size_t s, std::size_t k) {
  w_ = w;
  s_ = s;
  k_ = k;
  builder_ = CanonicalForkBuilder();
  walk_ = MarginWalk::start(s - 1);
  planned_.reset();
}

Tine CanonicalAdversary::tie_break(const Fork& fork, const std::vector<Tine>& candidates, std::size_t slot) {
  if (planned_) {
    for (const Tine& c : candidates) {
      if (c.terminal == *planned_) return c;
    }
  }
  return AdversaryStrategy::tie_break(fork, candidates, slot);
}

void CanonicalAdversary::augment(Fork& fork, const CharString& prefix) {
  const std::size_t t = prefix.size();
  const int bit = prefix[t - 1];
  builder_.push(bit);
  walk_ = walk_step(walk_, bit);
  planned_.reset();
  if (builder_.fork().size() != fork.size() || builder_.fork().digest() != fork.digest()) {
    throw Error("canonical adversary lost track of the game fork at slot " + std::to_string(t));
  }

  if (t >= s_ + k_ && walk_.mu >= 0) {
    const auto result = builder_.result();
    const auto& pair = result.witnesses[s_ - 1];
    if (!pair) throw Error("canonical fork has no witness for split " + std::to_string(s_ - 1));
    fork = augment_to_balanced(fork, prefix, s_ - 1, pair->rho_tine, pair->tine).fork;
    return;
  }
  if (t < w_.size() && w_.honest(t + 1)) {
    const Tine next = builder_.next_extension();
    VertexId tip = next.terminal;
    for (int l : extension_labels(fork, prefix, next)) tip = fork.add_vertex(tip, l);
    planned_ = tip;
  }
}

std::unique_ptr<AdversaryStrategy> make_canonical_adversary() { return std::make_unique<CanonicalAdversary>(); }
std::unique_ptr<AdversaryStrategy> make_noop_adversary() { return std::make_unique<NoopAdversary>(); }

std::optional<std::pair<Tine, Tine>> find_divergent_longest(const Fork& fork, std::size_t s) {
  const auto top = fork.deepest();
  for (std::size_t i = 0; i < top.size(); ++i) {
    for (std::size_t j = i + 1; j < top.size(); ++j) {
      if (static_cast<std::size_t>(fork.intersection_label({top[i]}, {top[j]})) < s) {
        return std::make_pair(Tine{top[i]}, Tine{top[j]});
      }
    }
  }
  return std::nullopt;
}

GameTranscript run_game(const CharString& w, AdversaryStrategy& adversary, std::size_t s, std::size_t k,
                        Validation validation) {
  check_game_params(w.size(), s, k);
  GameTranscript tr;
  tr.w = w;
  tr.s = s;
  tr.k = k;
  tr.adversary = adversary.name();
  adversary.begin(w, s, k);

  Fork fork;
  CharString prefix;
  for (std::size_t t = 1; t <= w.size(); ++t) {
    prefix.push_back(w.slot(t));
    SlotRecord rec;
    rec.slot = t;
    rec.honest = w.honest(t);
    if (rec.honest) {
      const auto deepest = fork.deepest();
      Tine chosen{deepest.front()};
      if (deepest.size() > 1) {
        std::vector<Tine> candidates;
        for (VertexId v : deepest) candidates.push_back({v});
        chosen = adversary.tie_break(fork, candidates, t);
        if (std::find(deepest.begin(), deepest.end(), chosen.terminal) == deepest.end()) {
          throw InvalidAdversaryFork("tie break at slot " + std::to_string(t) + " picked a tine that is not longest");
        }
        rec.tie_break = chosen;
      }
      fork.add_vertex(chosen.terminal, static_cast<int>(t));
    } else {
      guarded(fork, prefix, validation, "adversarial move", [&] { adversary.adversarial_move(fork, prefix); });
    }
    rec.fork_after_challenger = fork.digest();
    guarded(fork, prefix, validation, "augmentation", [&] { adversary.augment(fork, prefix); });
    rec.fork_after_augmentation = fork.digest();
    rec.vertices_after_augmentation = fork.size();
    tr.slots.push_back(rec);

    if (t >= s + k) {
      if (auto pair = find_divergent_longest(fork, s)) {
        tr.win = true;
        tr.winning_slot = t;
        tr.winning_tines = pair;
        break;
      }
    }
  }
  tr.final_fork = std::move(fork);
  return tr;
}

bool verify_win(const GameTranscript& tr) {
  if (!tr.win || !tr.winning_slot || !tr.winning_tines) return false;
  const std::size_t t = *tr.winning_slot;
  if (t < tr.s + tr.k || t > tr.w.size()) return false;
  const Fork& f = tr.final_fork;
  if (!validate(f, tr.w.prefix(t)).ok()) return false;
  const auto [a, b] = *tr.winning_tines;
  if (!f.contains(a.terminal) || !f.contains(b.terminal) || a == b) return false;
  if (f.depth(a.terminal) != f.height() || f.depth(b.terminal) != f.height()) return false;
  return static_cast<std::size_t>(f.intersection_label(a, b)) < tr.s;
}

bool settlement_violated(const CharString& w, std::size_t s, std::size_t k) {
  check_game_params(w.size(), s, k);
  auto walk = MarginWalk::start(s - 1);
  for (std::size_t t = 1; t <= w.size(); ++t) {
    walk = walk_step(walk, w.slot(t));
    if (t >= s + k && walk.mu >= 0) return true;
  }
  return false;
}

namespace {

template <typename Sampler>
InsecurityEstimate run_trials(std::size_t trials, std::size_t s, std::size_t k, TrialBackend backend,
                              const Sampler& sample) {
  if (trials < 1) throw BadParams("need at least one trial");
  auto one = [&](std::size_t i) {
    const CharString w = sample(i);
    CanonicalAdversary adv;
    return run_game(w, adv, s, k, Validation::Digest).win;
  };

  std::size_t wins = 0;
  if (backend == TrialBackend::Serial) {
    for (std::size_t i = 0; i < trials; ++i) wins += one(i) ? 1 : 0;
  } else {
    std::exception_ptr failure;
    const auto n = static_cast<long long>(trials);
    long long hits = 0;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : hits)
#endif
    for (long long i = 0; i < n; ++i) {
      try {
        hits += one(static_cast<std::size_t>(i)) ? 1 : 0;
      } catch (...) {
#if defined(_OPENMP)
#pragma omp critical(forksettle_trial_failure)
#endif
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    wins = static_cast<std::size_t>(hits);
  }

  InsecurityEstimate out;
  out.wins = wins;
  out.trials = trials;
  out.estimate = static_cast<double>(wins) / static_cast<double>(trials);
  out.ci95 = 1.96 * std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

}  // namespace

InsecurityEstimate monte_carlo_insecurity(const BernoulliParams& dist, std::size_t s, std::size_t k,
                                          std::size_t trials, std::uint64_t seed, TrialBackend backend) {
  if (!(dist.alpha >= 0.0 && dist.alpha <= 1.0)) throw BadParams("alpha must lie in [0, 1]");
  check_game_params(dist.n, s, k);
  return run_trials(trials, s, k, backend,
                    [&](std::size_t i) { return sample_bernoulli(dist, derive_seed(seed, i)); });
}

InsecurityEstimate monte_carlo_insecurity(const MartingaleSource& dist, std::size_t T, std::size_t s,
                                          std::size_t k, std::size_t trials, std::uint64_t seed,
                                          TrialBackend backend) {
  check_game_params(T, s, k);
  return run_trials(trials, s, k, backend,
                    [&](std::size_t i) { return sample_martingale(dist, T, derive_seed(seed, i)); });
}

}  // namespace forksettle
