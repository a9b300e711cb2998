#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forksettle/charstring.hpp"
#include "forksettle/fork.hpp"

namespace forksettle {

/// For every vertex v, min over targets r of ℓ(lca(v, r)). Linear time.
/// Throws EmptySet if targets is empty.
std::vector<int> divergence_labels(const Fork& fork, const std::vector<VertexId>& targets);

/// Among pairs (a, b) in A x B minimizing ℓ(a ∩ b), the least pair under
/// ≤π on the first component, then on the second. Throws EmptySet.
std::pair<Tine, Tine> early_divergence_witness(const Fork& fork, const std::vector<Tine>& a,
                                               const std::vector<Tine>& b);

/// Online strategy that keeps ρ(F) = ρ(xy) and μ_x(F) = μ_x(y) for one
/// fixed split |x|. Each honest slot is a single conservative extension.
Fork build_margin_optimal_fork(const CharString& x, const CharString& y);

/// The designated pair for one split: `rho_tine` has maximal reach and
/// `tine` is disjoint from it over the suffix.
struct WitnessPair {
  Tine rho_tine;
  Tine tine;
};

struct CanonicalForkResult {
  Fork fork;
  CharString w;
  Tine witness_rho;
  /// Entry m holds the witness pair for the split |x| = m, m in [0, |w|].
  /// The last entry is always (witness_rho, witness_rho).
  std::vector<std::optional<WitnessPair>> witnesses;
  /// Early-divergence witness of the maximal-reach sets before and after
  /// the final slot; it designates the split |x| = |w| - 1.
  std::optional<WitnessPair> witness_w;
};

/// Incremental optimal online adversary. Each push() appends one slot:
/// adversarial slots leave the fork alone, honest slots apply one
/// conservative extension of the chosen tine. Vertices are never removed,
/// so every intermediate fork is an id-preserving prefix of the next.
class CanonicalForkBuilder {
 public:
  CanonicalForkBuilder();

  void push(int bit);

  const Fork& fork() const noexcept { return fork_; }
  const CharString& w() const noexcept { return w_; }
  /// Reach of every tine in the current fork, indexed by terminal id.
  const std::vector<int>& reaches() const noexcept { return reach_; }
  /// Terminals of the maximal-reach tines, ascending id.
  const std::vector<VertexId>& max_reach_tines() const noexcept { return max_reach_; }
  int rho() const noexcept { return rho_; }

  /// The tine the next honest slot would extend.
  Tine next_extension() const;

  /// Witness designation for the current fork.
  CanonicalForkResult result() const;

 private:
  void refresh();

  Fork fork_;
  CharString w_;
  std::vector<int> reserve_;
  std::vector<int> reach_;
  std::vector<VertexId> max_reach_;
  std::vector<VertexId> prev_max_reach_;
  int rho_ = 0;
};

CanonicalForkResult build_canonical_fork(const CharString& w);

struct CanonicalReport {
  enum class Status { Ok, NotCanonical, WitnessMismatch };
  Status status = Status::Ok;
  std::optional<std::size_t> failing_split;
  std::string message;
  /// Splits whose witness pair ends in an adversarial vertex. Reported, not failed.
  std::vector<std::size_t> non_honest_splits;

  bool ok() const noexcept { return status == Status::Ok; }
};

/// Checks that the fork is valid and closed, witness_rho attains ρ(w), and
/// every split's pair is suffix-disjoint with min reach equal to the
/// recursive relative margin. Splits without a designated pair fall back
/// to an exhaustive pair scan.
CanonicalReport verify_canonical(const CanonicalForkResult& result, const CharString& w);

}  // namespace forksettle
