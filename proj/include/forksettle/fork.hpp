#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forksettle/charstring.hpp"

namespace forksettle {

using VertexId = std::int32_t;
inline constexpr VertexId kNoParent = -1;

struct Vertex {
  int label = 0;
  VertexId parent = kNoParent;
};

/// A tine is the unique root-to-vertex path ending at `terminal`.
struct Tine {
  VertexId terminal = 0;
  friend auto operator<=>(const Tine&, const Tine&) = default;
};

/// Rooted, labeled tree abstracting every blockchain of an execution.
///
/// Vertices are stored in creation order; a parent always precedes its
/// children, and vertex 0 is the genesis root with label 0. Ids are storage
/// artifacts: equality and prefix tests compare labeled tree structure.
class Fork {
 public:
  /// The trivial fork: a single genesis vertex.
  Fork();

  /// Builds a fork from a vertex list. Vertex 0 must be the only parentless
  /// vertex and every parent id must precede its child. Throws MalformedFork.
  static Fork from_vertices(const std::vector<Vertex>& vertices);

  VertexId add_vertex(VertexId parent, int label);
  /// Drops every vertex with id >= n (used by enumeration back-tracking).
  void truncate(std::size_t n);

  std::size_t size() const noexcept { return vertices_.size(); }
  VertexId root() const noexcept { return 0; }
  const Vertex& vertex(VertexId v) const { return vertices_[check(v)]; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  int label(VertexId v) const { return vertices_[check(v)].label; }
  VertexId parent(VertexId v) const { return vertices_[check(v)].parent; }
  int depth(VertexId v) const { return depth_[check(v)]; }
  const std::vector<VertexId>& children(VertexId v) const { return children_[check(v)]; }
  bool is_leaf(VertexId v) const { return children_[check(v)].empty(); }
  bool contains(VertexId v) const noexcept { return v >= 0 && static_cast<std::size_t>(v) < vertices_.size(); }

  int height() const noexcept { return height_; }
  int max_label() const noexcept;
  /// Vertices at depth == height(), ascending id.
  std::vector<VertexId> deepest() const;

  /// Lowest common ancestor; ℓ(t1 ∩ t2) is label(lca(t1, t2)).
  VertexId lca(VertexId a, VertexId b) const;
  int intersection_label(Tine a, Tine b) const { return label(lca(a.terminal, b.terminal)); }
  /// a is an ancestor of b or equal to it.
  bool is_ancestor(VertexId a, VertexId b) const;
  /// Vertex ids root..v inclusive.
  std::vector<VertexId> path(VertexId v) const;
  std::vector<int> path_labels(VertexId v) const;

  /// Rolling structural hash of the first n vertices (label, parent) in
  /// creation order; digest() covers the whole fork. Equal prefix digests
  /// are how the game cheaply checks that a fork extends another by id.
  std::uint64_t digest() const noexcept { return digests_.back(); }
  std::uint64_t prefix_digest(std::size_t n) const { return digests_.at(n); }

  /// Label-canonical form: children sorted by (label, subtree form).
  std::string canonical_form() const;

 private:
  std::size_t check(VertexId v) const {
    if (!contains(v)) [[unlikely]] throw_unknown(v);
    return static_cast<std::size_t>(v);
  }
  [[noreturn]] static void throw_unknown(VertexId v);

  std::vector<Vertex> vertices_;
  std::vector<int> depth_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<std::uint64_t> digests_;
  int height_ = 0;
};

/// Same labeled tree up to vertex ids.
bool same_shape(const Fork& f, const Fork& g);

/// f ⪯ g: f embeds into g as a consistently labeled, root-preserving subtree.
bool is_prefix(const Fork& f, const Fork& g);

/// g was obtained from f by appending vertices only (ids of f preserved).
bool extends_by_id(const Fork& f, const Fork& g);

enum class Axiom { F1, F2, F3, F4, LabelRange };

const char* axiom_name(Axiom a) noexcept;

struct AxiomViolation {
  Axiom axiom;
  std::vector<VertexId> vertices;
  std::string message;
};

/// Outcome of checking F1–F4; ok() iff no violation was found.
struct ValidationResult {
  std::optional<AxiomViolation> violation;

  bool ok() const noexcept { return !violation.has_value(); }
  explicit operator bool() const noexcept { return ok(); }
};

ValidationResult validate(const Fork& fork, const CharString& w);

struct TineStats {
  int length = 0;
  int gap = 0;
  int reserve = 0;
  int reach = 0;
};

/// Number of adversarial slots i with label < i <= |w|, for every label.
std::vector<int> reserve_table(const CharString& w);

/// Gap is measured against height(F); on closed forks the unique longest
/// tine attains the height, so this matches the usual definition.
TineStats tine_stats(const Fork& fork, const CharString& w, Tine t);

/// Reach of every tine, indexed by terminal vertex id.
std::vector<int> all_reaches(const Fork& fork, const CharString& w);

bool is_honest_vertex(const Fork& fork, const CharString& w, VertexId v);

/// Every leaf is honest; the trivial fork is closed.
bool is_closed(const Fork& fork, const CharString& w);

/// Tines t1, t2 share no edge ending at a label > split, i.e.
/// ℓ(t1 ∩ t2) <= split. A tine is disjoint with itself iff ℓ(t) <= split.
bool disjoint_over(const Fork& fork, Tine a, Tine b, std::size_t split);

bool is_x_balanced(const Fork& fork, std::size_t split);
inline bool is_balanced(const Fork& fork) { return is_x_balanced(fork, 0); }

/// ρ(F): the largest reach of any tine.
int fork_rho(const Fork& fork, const CharString& w);

/// μ_x(F) for |x| = split, by exhaustive scan over suffix-disjoint tine pairs.
int fork_relative_margin(const Fork& fork, const CharString& w, std::size_t split);

/// One conservative extension. `w_next` is the string the extended fork is
/// for: the fork must be closed for its first |w_next| - 1 slots and the last
/// slot must be honest. Appends gap(s) adversarial vertices labeled with the
/// smallest adversarial slots above ℓ(s), then the new honest vertex.
Fork conservative_extend(const Fork& fork, const CharString& w_next, Tine s);

/// Labels a conservative extension of s would use for its adversarial
/// vertices (gap(s) smallest adversarial slots above ℓ(s)).
std::vector<int> extension_labels(const Fork& fork, const CharString& w, Tine s);

/// Fact-3.1 construction: given suffix-disjoint tines of non-negative reach,
/// pads both to a common maximal length with adversarial vertices so the
/// result has two maximum-length tines diverging at or before `split`.
/// Returns the fork and the two padded tines.
struct BalancedAugmentation {
  Fork fork;
  Tine first;
  Tine second;
};
BalancedAugmentation augment_to_balanced(const Fork& fork, const CharString& w, std::size_t split, Tine a,
                                         Tine b);

/// Longest-chain viability: length(t) >= depth of every honest vertex with
/// label <= ℓ(t).
bool is_viable(const Fork& fork, const CharString& w, Tine t);

/// A witness to a k-slot common-prefix violation: viable t1, t2 with
/// ℓ(t1) <= ℓ(t2) where t1 trimmed of its last k slots is not a prefix of t2.
std::optional<std::pair<Tine, Tine>> find_slot_cp_violation(const Fork& fork, const CharString& w,
                                                            std::size_t k);

/// Graphviz rendering; honest vertices get a double border.
std::string to_dot(const Fork& fork, const CharString& w);

/// The ≤π order: lexicographic on path label sequences, ties broken by the
/// terminal's creation order.
bool tine_order_less(const Fork& fork, Tine a, Tine b);

}  // namespace forksettle
