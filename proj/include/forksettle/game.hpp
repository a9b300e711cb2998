#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forksettle/adversary.hpp"
#include "forksettle/charstring.hpp"
#include "forksettle/fork.hpp"
#include "forksettle/margin.hpp"

namespace forksettle {

/// Player in the settlement game. The game owns the fork; adversary hooks
/// may only append vertices to it.
class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;

  virtual std::string name() const = 0;
  /// Called once before slot 1 with the whole string and game parameters.
  virtual void begin(const CharString& w, std::size_t s, std::size_t k) {
    (void)w;
    (void)s;
    (void)k;
  }
  /// Picks the longest tine the challenger extends when there is a tie.
  /// Defaults to the ≤π-least candidate.
  virtual Tine tie_break(const Fork& fork, const std::vector<Tine>& candidates, std::size_t slot);
  /// Adversarial slot: turn A_{t-1} into F_t.
  virtual void adversarial_move(Fork& fork, const CharString& prefix) {
    (void)fork;
    (void)prefix;
  }
  /// End of every slot: turn F_t into A_t.
  virtual void augment(Fork& fork, const CharString& prefix) {
    (void)fork;
    (void)prefix;
  }
};

/// Never adds vertices; ties go to the ≤π-least longest tine.
class NoopAdversary final : public AdversaryStrategy {
 public:
  std::string name() const override { return "noop"; }
};

/// Plays the canonical fork online. Before each honest slot it pads the
/// tine the canonical builder would extend up to the current height, so
/// the challenger's longest-chain move reproduces the conservative
/// extension. Once μ_x(y) >= 0 for |x| = s - 1 and |y| >= k + 1 it pads the
/// designated witness pair into two maximum-length tines.
class CanonicalAdversary final : public AdversaryStrategy {
 public:
  std::string name() const override { return "canonical"; }
  void begin(const CharString& w, std::size_t s, std::size_t k) override;
  Tine tie_break(const Fork& fork, const std::vector<Tine>& candidates, std::size_t slot) override;
  void augment(Fork& fork, const CharString& prefix) override;

 private:
  CharString w_;
  std::size_t s_ = 1;
  std::size_t k_ = 0;
  CanonicalForkBuilder builder_;
  MarginWalk walk_;
  std::optional<VertexId> planned_;
};

std::unique_ptr<AdversaryStrategy> make_canonical_adversary();
std::unique_ptr<AdversaryStrategy> make_noop_adversary();

enum class Validation {
  /// Every adversary hook is checked with the full prefix embedding and all axioms.
  Deep,
  /// Structure-hash prefix check plus local checks on the appended vertices.
  Digest,
};

struct SlotRecord {
  std::size_t slot = 0;
  bool honest = false;
  std::uint64_t fork_after_challenger = 0;
  std::uint64_t fork_after_augmentation = 0;
  std::size_t vertices_after_augmentation = 0;
  /// Set when the challenger had more than one longest tine.
  std::optional<Tine> tie_break;
};

struct GameTranscript {
  CharString w;
  std::size_t s = 0;
  std::size_t k = 0;
  std::string adversary;
  std::vector<SlotRecord> slots;
  bool win = false;
  /// First t >= s + k at which A_t shows the violation; the game stops there.
  std::optional<std::size_t> winning_slot;
  /// Two distinct maximum-length tines of `final_fork` diverging before s.
  std::optional<std::pair<Tine, Tine>> winning_tines;
  /// A_t for the last slot played.
  Fork final_fork;
};

/// Two distinct maximum-length tines whose common prefix ends at a label < s.
std::optional<std::pair<Tine, Tine>> find_divergent_longest(const Fork& fork, std::size_t s);

/// Plays the (w; s, k)-settlement game. Throws BadParams unless
/// 1 <= s and s + k <= |w|, and InvalidAdversaryFork when a hook breaks
/// the prefix relation, an axiom, or picks a non-longest tine.
GameTranscript run_game(const CharString& w, AdversaryStrategy& adversary, std::size_t s, std::size_t k,
                        Validation validation = Validation::Deep);

/// Re-checks a transcript's claimed win against its stored fork.
bool verify_win(const GameTranscript& transcript);

/// The string-level event the canonical adversary realizes: some y with
/// |x| = s - 1, |y| >= k + 1 and xy a prefix of w has μ_x(y) >= 0.
bool settlement_violated(const CharString& w, std::size_t s, std::size_t k);

struct InsecurityEstimate {
  std::size_t wins = 0;
  std::size_t trials = 0;
  double estimate = 0.0;
  /// Half-width of the normal-approximation 95% interval.
  double ci95 = 0.0;
};

enum class TrialBackend { Serial, Parallel };

/// Win frequency of the canonical adversary over `trials` games with
/// strings of length dist.n; trial i draws from derive_seed(seed, i), so
/// both backends return identical counts.
InsecurityEstimate monte_carlo_insecurity(const BernoulliParams& dist, std::size_t s, std::size_t k,
                                          std::size_t trials, std::uint64_t seed,
                                          TrialBackend backend = TrialBackend::Parallel);
InsecurityEstimate monte_carlo_insecurity(const MartingaleSource& dist, std::size_t T, std::size_t s,
                                          std::size_t k, std::size_t trials, std::uint64_t seed,
                                          TrialBackend backend = TrialBackend::Parallel);

}  // namespace forksettle
