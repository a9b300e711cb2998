#include <catch2/catch_amalgamated.hpp>

#include "forksettle/errors.hpp"
#include "forksettle/exactprob.hpp"
#include "forksettle/game.hpp"
#include "forksettle/rng.hpp"

using namespace forksettle;

namespace {

// Builds two equal chains of adversarial vertices under the root.
class TwinChains final : public AdversaryStrategy {
 public:
  std::string name() const override { return "twin-chains"; }
  void augment(Fork& fork, const CharString& prefix) override {
    const int t = static_cast<int>(prefix.size());
    if (prefix.honest(static_cast<std::size_t>(t))) return;
    if (fork.size() == 1) {
      fork.add_vertex(0, t);
      fork.add_vertex(0, t);
      return;
    }
    const auto top = fork.deepest();
    for (VertexId v : top) fork.add_vertex(v, t);
  }
};

class Truncating final : public AdversaryStrategy {
 public:
  std::string name() const override { return "truncating"; }
  void augment(Fork& fork, const CharString&) override {
    if (fork.size() > 1) fork.truncate(fork.size() - 1);
  }
};

class HonestForger final : public AdversaryStrategy {
 public:
  std::string name() const override { return "forger"; }
  void adversarial_move(Fork& fork, const CharString& prefix) override {
    for (std::size_t l = 1; l <= prefix.size(); ++l) {
      if (prefix.honest(l)) {
        fork.add_vertex(0, static_cast<int>(l));
        return;
      }
    }
  }
};

class ShortPicker final : public AdversaryStrategy {
 public:
  std::string name() const override { return "short-picker"; }
  void augment(Fork& fork, const CharString& prefix) override {
    if (!prefix.honest(prefix.size()) && fork.size() == 1) {
      fork.add_vertex(0, static_cast<int>(prefix.size()));
      fork.add_vertex(0, static_cast<int>(prefix.size()));
    }
  }
  Tine tie_break(const Fork&, const std::vector<Tine>&, std::size_t) override { return {0}; }
};

void check_prefix_chain(const GameTranscript& tr) {
  REQUIRE(!tr.slots.empty());
  std::size_t prev = 1;
  for (const auto& rec : tr.slots) {
    REQUIRE(rec.vertices_after_augmentation >= prev);
    prev = rec.vertices_after_augmentation;
  }
  REQUIRE(tr.final_fork.size() == tr.slots.back().vertices_after_augmentation);
  REQUIRE(tr.final_fork.digest() == tr.slots.back().fork_after_augmentation);
}

}  // namespace

TEST_CASE("honest-only strings give one chain", "[game]") {
  NoopAdversary noop;
  const auto tr = run_game(CharString::zeros(12), noop, 2, 5);
  CHECK_FALSE(tr.win);
  CHECK(tr.final_fork.size() == 13);
  CHECK(tr.final_fork.height() == 12);
  for (const auto& rec : tr.slots) CHECK_FALSE(rec.tie_break.has_value());

  CanonicalAdversary canon;
  const auto tc = run_game(CharString::zeros(12), canon, 2, 5);
  CHECK_FALSE(tc.win);
  CHECK(tc.final_fork.size() == 13);
}

TEST_CASE("adversarial-only strings are won", "[game]") {
  TwinChains twins;
  const auto tr = run_game(CharString::ones(4), twins, 1, 1);
  REQUIRE(tr.win);
  CHECK(*tr.winning_slot == 2);
  CHECK(verify_win(tr));

  for (std::size_t n : {2, 5, 9}) {
    for (std::size_t k = 0; k + 1 <= n; ++k) {
      CanonicalAdversary canon;
      const auto tc = run_game(CharString::ones(n), canon, 1, k);
      REQUIRE(tc.win);
      CHECK(*tc.winning_slot == 1 + k);
      CHECK(verify_win(tc));
    }
  }
}

TEST_CASE("canonical adversary on a fixed string", "[game]") {
  const auto w = CharString::parse("010100110");
  CHECK(settlement_violated(w, 1, 7));
  CanonicalAdversary canon;
  const auto tr = run_game(w, canon, 1, 7);
  REQUIRE(tr.win);
  // μ is already 1 after eight slots; the full string ends at μ = 0.
  CHECK(*tr.winning_slot == 8);
  CHECK(mu(w) == 0);
  CHECK(verify_win(tr));
  CHECK(validate(tr.final_fork, w.prefix(8)).ok());
  check_prefix_chain(tr);
}

TEST_CASE("canonical wins exactly when a relative margin is non-negative", "[game]") {
  const std::size_t s = 3;
  const std::size_t k = 4;
  for (std::size_t n = s + k; n <= 12; ++n) {
    for (const auto& w : all_strings(n)) {
      CanonicalAdversary canon;
      const auto tr = run_game(w, canon, s, k, Validation::Deep);
      REQUIRE(tr.win == settlement_violated(w, s, k));
      if (tr.win) REQUIRE(verify_win(tr));
      check_prefix_chain(tr);
    }
  }
}

TEST_CASE("both validation modes agree on random games", "[game]") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const auto w = sample_bernoulli({0.35, 60}, derive_seed(9, i));
    CanonicalAdversary a;
    CanonicalAdversary b;
    const auto deep = run_game(w, a, 5, 8, Validation::Deep);
    const auto fast = run_game(w, b, 5, 8, Validation::Digest);
    REQUIRE(deep.win == fast.win);
    REQUIRE(deep.win == settlement_violated(w, 5, 8));
    REQUIRE(deep.final_fork.digest() == fast.final_fork.digest());
    REQUIRE(deep.slots.size() == fast.slots.size());
    if (deep.win) REQUIRE(verify_win(deep));
  }
}

TEST_CASE("the challenger is deterministic", "[game]") {
  const auto w = sample_bernoulli({0.4, 40}, 77);
  NoopAdversary a;
  NoopAdversary b;
  const auto t1 = run_game(w, a, 3, 4);
  const auto t2 = run_game(w, b, 3, 4);
  REQUIRE(t1.slots.size() == t2.slots.size());
  for (std::size_t i = 0; i < t1.slots.size(); ++i) {
    CHECK(t1.slots[i].fork_after_augmentation == t2.slots[i].fork_after_augmentation);
  }
  CHECK_FALSE(t1.win);
}

TEST_CASE("invalid adversary forks are rejected", "[game]") {
  const auto w = CharString::parse("0101010");
  for (auto mode : {Validation::Deep, Validation::Digest}) {
    Truncating trunc;
    CHECK_THROWS_AS(run_game(w, trunc, 1, 2, mode), InvalidAdversaryFork);
    HonestForger forger;
    CHECK_THROWS_AS(run_game(w, forger, 1, 2, mode), InvalidAdversaryFork);
  }
  ShortPicker picker;
  CHECK_THROWS_AS(run_game(CharString::parse("10"), picker, 1, 1), InvalidAdversaryFork);
  NoopAdversary noop;
  CHECK_THROWS_AS(run_game(w, noop, 0, 2), BadParams);
  CHECK_THROWS_AS(run_game(w, noop, 3, 5), BadParams);
}

TEST_CASE("monte carlo insecurity", "[game]") {
  const auto zero = monte_carlo_insecurity(BernoulliParams{0.0, 30}, 3, 5, 200, 1);
  CHECK(zero.wins == 0);
  const auto one = monte_carlo_insecurity(BernoulliParams{1.0, 30}, 3, 5, 200, 1);
  CHECK(one.estimate == 1.0);

  const BernoulliParams dist{0.3, 60};
  const auto serial = monte_carlo_insecurity(dist, 5, 6, 3000, 42, TrialBackend::Serial);
  const auto parallel = monte_carlo_insecurity(dist, 5, 6, 3000, 42, TrialBackend::Parallel);
  CHECK(serial.wins == parallel.wins);

  const double p = prob_settlement_violation(0.3, 4, 7, 56);
  const double sigma = std::sqrt(p * (1 - p) / 3000.0);
  CHECK(std::abs(serial.estimate - p) <= 4 * sigma);

  CHECK_THROWS_AS(monte_carlo_insecurity(dist, 5, 6, 0, 42), BadParams);
}

TEST_CASE("monte carlo with a martingale source", "[game]") {
  // Adversarial slots become likelier right after an honest one, capped at the bound.
  MartingaleSource src;
  src.epsilon = 0.4;
  src.prob_one = [](const CharString& prefix) {
    return (!prefix.empty() && prefix[prefix.size() - 1] == 0) ? 0.3 : 0.15;
  };
  const auto a = monte_carlo_insecurity(src, 50, 4, 6, 1000, 5, TrialBackend::Serial);
  const auto b = monte_carlo_insecurity(src, 50, 4, 6, 1000, 5, TrialBackend::Parallel);
  CHECK(a.wins == b.wins);
  // Dominated by the i.i.d. string at the bound.
  const double p = prob_settlement_violation(0.3, 3, 7, 47);
  CHECK(a.estimate <= p + 4 * std::sqrt(p * (1 - p) / 1000.0));

  src.prob_one = [](const CharString&) { return 0.31; };
  CHECK_THROWS_AS(monte_carlo_insecurity(src, 50, 4, 6, 10, 5), MartingaleViolation);
}
