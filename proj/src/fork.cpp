#include "forksettle/fork.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "forksettle/errors.hpp"
#include "forksettle/rng.hpp"

namespace forksettle {

namespace {

constexpr std::uint64_t kEmptyDigest = 0x6a09e667f3bcc908ULL;

std::uint64_t fold_digest(std::uint64_t h, const Vertex& v) {
  const auto label = static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.label));
  const auto parent = static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.parent));
  return mix_seed(h ^ mix_seed((label << 32) | parent));
}

}  // namespace

Fork::Fork() {
  vertices_.push_back({0, kNoParent});
  depth_.push_back(0);
  children_.emplace_back();
  digests_.push_back(kEmptyDigest);
  digests_.push_back(fold_digest(kEmptyDigest, vertices_[0]));
}

Fork Fork::from_vertices(const std::vector<Vertex>& vertices) {
  if (vertices.empty()) throw MalformedFork("a fork needs a root vertex");
  if (vertices[0].parent != kNoParent) throw MalformedFork("vertex 0 must be the root");
  Fork f;
  f.vertices_[0].label = vertices[0].label;
  f.digests_[1] = fold_digest(kEmptyDigest, f.vertices_[0]);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const VertexId p = vertices[i].parent;
    if (p == kNoParent) throw MalformedFork("vertex " + std::to_string(i) + " is a second root");
    if (p < 0 || static_cast<std::size_t>(p) >= i) {
      throw MalformedFork("vertex " + std::to_string(i) + " has parent " + std::to_string(p) +
                          " that does not precede it");
    }
    f.add_vertex(p, vertices[i].label);
  }
  return f;
}

void Fork::throw_unknown(VertexId v) { throw UnknownTine("no vertex with id " + std::to_string(v)); }

VertexId Fork::add_vertex(VertexId parent, int label) {
  const std::size_t p = check(parent);
  const auto id = static_cast<VertexId>(vertices_.size());
  vertices_.push_back({label, parent});
  depth_.push_back(depth_[p] + 1);
  children_[p].push_back(id);
  children_.emplace_back();
  digests_.push_back(fold_digest(digests_.back(), vertices_.back()));
  height_ = std::max(height_, depth_.back());
  return id;
}

void Fork::truncate(std::size_t n) {
  if (n == 0) throw MalformedFork("cannot remove the root");
  if (n >= vertices_.size()) return;
  for (std::size_t i = n; i < vertices_.size(); ++i) {
    auto& siblings = children_[static_cast<std::size_t>(vertices_[i].parent)];
    if (static_cast<std::size_t>(vertices_[i].parent) < n) siblings.pop_back();
  }
  vertices_.resize(n);
  depth_.resize(n);
  children_.resize(n);
  digests_.resize(n + 1);
  height_ = *std::max_element(depth_.begin(), depth_.end());
}

int Fork::max_label() const noexcept {
  int m = 0;
  for (const auto& v : vertices_) m = std::max(m, v.label);
  return m;
}

std::vector<VertexId> Fork::deepest() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (depth_[i] == height_) out.push_back(static_cast<VertexId>(i));
  }
  return out;
}

VertexId Fork::lca(VertexId a, VertexId b) const {
  check(a);
  check(b);
  while (depth_[static_cast<std::size_t>(a)] > depth_[static_cast<std::size_t>(b)]) a = vertices_[static_cast<std::size_t>(a)].parent;
  while (depth_[static_cast<std::size_t>(b)] > depth_[static_cast<std::size_t>(a)]) b = vertices_[static_cast<std::size_t>(b)].parent;
  while (a != b) {
    a = vertices_[static_cast<std::size_t>(a)].parent;
    b = vertices_[static_cast<std::size_t>(b)].parent;
  }
  return a;
}

bool Fork::is_ancestor(VertexId a, VertexId b) const {
  const int da = depth(a);
  check(b);
  while (depth_[static_cast<std::size_t>(b)] > da) b = vertices_[static_cast<std::size_t>(b)].parent;
  return a == b;
}

std::vector<VertexId> Fork::path(VertexId v) const {
  std::vector<VertexId> out(static_cast<std::size_t>(depth(v)) + 1);
  for (auto it = out.rbegin(); it != out.rend(); ++it) {
    *it = v;
    v = vertices_[static_cast<std::size_t>(v)].parent;
  }
  return out;
}

std::vector<int> Fork::path_labels(VertexId v) const {
  auto ids = path(v);
  std::vector<int> out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) out[i] = vertices_[static_cast<std::size_t>(ids[i])].label;
  return out;
}

std::string Fork::canonical_form() const {
  std::vector<std::string> form(vertices_.size());
  // Children always carry larger ids than their parent, so a reverse sweep
  // sees every subtree before the vertex above it.
  for (std::size_t i = vertices_.size(); i-- > 0;) {
    std::vector<std::pair<int, const std::string*>> kids;
    for (VertexId c : children_[i]) kids.emplace_back(vertices_[static_cast<std::size_t>(c)].label, &form[static_cast<std::size_t>(c)]);
    std::sort(kids.begin(), kids.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : *a.second < *b.second;
    });
    std::string s = "(" + std::to_string(vertices_[i].label);
    for (const auto& k : kids) s += *k.second;
    s += ")";
    form[i] = std::move(s);
    for (VertexId c : children_[i]) std::string().swap(form[static_cast<std::size_t>(c)]);
  }
  return form[0];
}

bool same_shape(const Fork& f, const Fork& g) {
  return f.size() == g.size() && f.canonical_form() == g.canonical_form();
}

namespace {

// Root-preserving labeled embedding of f's subtree at u into g's subtree at v.
class Embedder {
 public:
  Embedder(const Fork& f, const Fork& g) : f_(f), g_(g) {}

  bool embeds(VertexId u, VertexId v) {
    if (f_.label(u) != g_.label(v)) return false;
    const auto key = std::make_pair(u, v);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto& fu = f_.children(u);
    const auto& gv = g_.children(v);
    bool ok = fu.size() <= gv.size();
    if (ok) {
      // Kuhn's augmenting-path matching of f-children onto g-children.
      std::vector<std::vector<std::size_t>> adj(fu.size());
      for (std::size_t i = 0; i < fu.size(); ++i) {
        for (std::size_t j = 0; j < gv.size(); ++j) {
          if (embeds(fu[i], gv[j])) adj[i].push_back(j);
        }
      }
      std::vector<int> owner(gv.size(), -1);
      for (std::size_t i = 0; i < fu.size() && ok; ++i) {
        std::vector<char> seen(gv.size(), 0);
        std::function<bool(std::size_t)> augment = [&](std::size_t a) {
          for (std::size_t j : adj[a]) {
            if (seen[j]) continue;
            seen[j] = 1;
            if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]))) {
              owner[j] = static_cast<int>(a);
              return true;
            }
          }
          return false;
        };
        ok = augment(i);
      }
    }
    memo_[key] = ok;
    return ok;
  }

 private:
  const Fork& f_;
  const Fork& g_;
  std::map<std::pair<VertexId, VertexId>, bool> memo_;
};

}  // namespace

bool is_prefix(const Fork& f, const Fork& g) {
  if (f.size() > g.size()) return false;
  return Embedder(f, g).embeds(f.root(), g.root());
}

bool extends_by_id(const Fork& f, const Fork& g) {
  if (f.size() > g.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& a = f.vertices()[i];
    const auto& b = g.vertices()[i];
    if (a.label != b.label || a.parent != b.parent) return false;
  }
  return true;
}

const char* axiom_name(Axiom a) noexcept {
  switch (a) {
    case Axiom::F1: return "F1";
    case Axiom::F2: return "F2";
    case Axiom::F3: return "F3";
    case Axiom::F4: return "F4";
    case Axiom::LabelRange: return "LabelRange";
  }
  return "?";
}

ValidationResult validate(const Fork& fork, const CharString& w) {
  auto fail = [](Axiom a, std::vector<VertexId> ids, std::string msg) {
    return ValidationResult{AxiomViolation{a, std::move(ids), std::move(msg)}};
  };
  const int n = static_cast<int>(w.size());
  if (fork.label(fork.root()) != 0) return fail(Axiom::F1, {0}, "root label must be 0");
  for (std::size_t i = 1; i < fork.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    const int l = fork.label(id);
    if (l < 1 || l > n) {
      return fail(Axiom::LabelRange, {id}, "label " + std::to_string(l) + " outside [1, " + std::to_string(n) + "]");
    }
  }
  for (std::size_t i = 1; i < fork.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    const VertexId p = fork.parent(id);
    if (fork.label(p) >= fork.label(id)) {
      return fail(Axiom::F2, {p, id},
                  "labels must increase along edges (" + std::to_string(fork.label(p)) + " -> " +
                      std::to_string(fork.label(id)) + ")");
    }
  }
  std::vector<std::vector<VertexId>> by_label(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 1; i < fork.size(); ++i) {
    by_label[static_cast<std::size_t>(fork.label(static_cast<VertexId>(i)))].push_back(static_cast<VertexId>(i));
  }
  for (int t = 1; t <= n; ++t) {
    if (!w.honest(static_cast<std::size_t>(t))) continue;
    const auto& ids = by_label[static_cast<std::size_t>(t)];
    if (ids.size() != 1) {
      return fail(Axiom::F3, ids,
                  "honest slot " + std::to_string(t) + " labels " + std::to_string(ids.size()) + " vertices");
    }
  }
  VertexId prev = fork.root();
  for (int t = 1; t <= n; ++t) {
    if (!w.honest(static_cast<std::size_t>(t))) continue;
    const VertexId v = by_label[static_cast<std::size_t>(t)].front();
    if (fork.depth(v) <= fork.depth(prev)) {
      return fail(Axiom::F4, {prev, v},
                  "honest depths must increase (slot " + std::to_string(fork.label(prev)) + " depth " +
                      std::to_string(fork.depth(prev)) + ", slot " + std::to_string(t) + " depth " +
                      std::to_string(fork.depth(v)) + ")");
    }
    prev = v;
  }
  return {};
}

std::vector<int> reserve_table(const CharString& w) {
  std::vector<int> res(w.size() + 1, 0);
  for (std::size_t l = w.size(); l-- > 0;) res[l] = res[l + 1] + w[l];
  return res;
}

namespace {

int reserve_of(const std::vector<int>& res, int label) {
  if (label < 0) return res.front();
  if (static_cast<std::size_t>(label) >= res.size()) return 0;
  return res[static_cast<std::size_t>(label)];
}

}  // namespace

TineStats tine_stats(const Fork& fork, const CharString& w, Tine t) {
  TineStats st;
  st.length = fork.depth(t.terminal);
  st.gap = fork.height() - st.length;
  st.reserve = reserve_of(reserve_table(w), fork.label(t.terminal));
  st.reach = st.reserve - st.gap;
  return st;
}

std::vector<int> all_reaches(const Fork& fork, const CharString& w) {
  const auto res = reserve_table(w);
  std::vector<int> out(fork.size());
  for (std::size_t i = 0; i < fork.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    out[i] = reserve_of(res, fork.label(id)) - (fork.height() - fork.depth(id));
  }
  return out;
}

bool is_honest_vertex(const Fork& fork, const CharString& w, VertexId v) {
  const int l = fork.label(v);
  if (l == 0) return true;
  return l >= 1 && static_cast<std::size_t>(l) <= w.size() && w.honest(static_cast<std::size_t>(l));
}

bool is_closed(const Fork& fork, const CharString& w) {
  for (std::size_t i = 0; i < fork.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    if (fork.is_leaf(id) && !is_honest_vertex(fork, w, id)) return false;
  }
  return true;
}

bool disjoint_over(const Fork& fork, Tine a, Tine b, std::size_t split) {
  return fork.intersection_label(a, b) <= static_cast<int>(split);
}

bool is_x_balanced(const Fork& fork, std::size_t split) {
  const auto top = fork.deepest();
  for (std::size_t i = 0; i < top.size(); ++i) {
    for (std::size_t j = i; j < top.size(); ++j) {
      if (disjoint_over(fork, {top[i]}, {top[j]}, split)) return true;
    }
  }
  return false;
}

int fork_rho(const Fork& fork, const CharString& w) {
  const auto r = all_reaches(fork, w);
  return *std::max_element(r.begin(), r.end());
}

int fork_relative_margin(const Fork& fork, const CharString& w, std::size_t split) {
  const auto r = all_reaches(fork, w);
  int best = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i < fork.size(); ++i) {
    for (std::size_t j = i; j < fork.size(); ++j) {
      const int m = std::min(r[i], r[j]);
      if (m <= best) continue;
      if (disjoint_over(fork, {static_cast<VertexId>(i)}, {static_cast<VertexId>(j)}, split)) best = m;
    }
  }
  return best;
}

std::vector<int> extension_labels(const Fork& fork, const CharString& w, Tine s) {
  const int gap = fork.height() - fork.depth(s.terminal);
  std::vector<int> labels;
  for (int i = fork.label(s.terminal) + 1; i <= static_cast<int>(w.size()) && static_cast<int>(labels.size()) < gap; ++i) {
    if (!w.honest(static_cast<std::size_t>(i))) labels.push_back(i);
  }
  return labels;
}

Fork conservative_extend(const Fork& fork, const CharString& w_next, Tine s) {
  if (w_next.empty() || !w_next.honest(w_next.size())) {
    throw NotHonestSlot("conservative extension needs an honest new slot");
  }
  if (!fork.contains(s.terminal)) throw UnknownTine("no vertex with id " + std::to_string(s.terminal));
  const CharString w = w_next.prefix(w_next.size() - 1);
  if (!is_closed(fork, w)) throw NotClosed("conservative extension needs a closed fork");
  const int gap = fork.height() - fork.depth(s.terminal);
  const auto labels = extension_labels(fork, w, s);
  if (static_cast<int>(labels.size()) < gap) {
    throw InsufficientReserve("tine ending at slot " + std::to_string(fork.label(s.terminal)) + " has gap " +
                              std::to_string(gap) + " but reserve " + std::to_string(labels.size()));
  }
  Fork out = fork;
  VertexId tip = s.terminal;
  for (int l : labels) tip = out.add_vertex(tip, l);
  out.add_vertex(tip, static_cast<int>(w_next.size()));
  return out;
}

BalancedAugmentation augment_to_balanced(const Fork& fork, const CharString& w, std::size_t split, Tine a,
                                         Tine b) {
  if (!disjoint_over(fork, a, b, split)) throw BadParams("tines share an edge past the split");
  const auto ra = tine_stats(fork, w, a);
  const auto rb = tine_stats(fork, w, b);
  if (ra.reach < 0 || rb.reach < 0) throw InsufficientReserve("both tines need non-negative reach");

  BalancedAugmentation out{fork, a, b};
  auto pad = [&](VertexId from, const std::vector<int>& labels, std::size_t count) {
    VertexId tip = from;
    for (std::size_t i = 0; i < count; ++i) tip = out.fork.add_vertex(tip, labels[i]);
    return tip;
  };
  if (a != b) {
    const auto la = extension_labels(fork, w, a);
    const auto lb = extension_labels(fork, w, b);
    out.first.terminal = pad(a.terminal, la, la.size());
    out.second.terminal = pad(b.terminal, lb, lb.size());
    return out;
  }
  const auto labels = extension_labels(fork, w, a);
  if (ra.gap >= 1) {
    out.first.terminal = pad(a.terminal, labels, labels.size());
    out.second.terminal = pad(a.terminal, labels, labels.size());
    return out;
  }
  // A deepest tine with no reserve is already balanced on its own.
  if (ra.reserve == 0) return out;
  int next = -1;
  for (int i = fork.label(a.terminal) + 1; i <= static_cast<int>(w.size()); ++i) {
    if (!w.honest(static_cast<std::size_t>(i))) {
      next = i;
      break;
    }
  }
  out.first.terminal = out.fork.add_vertex(a.terminal, next);
  out.second.terminal = out.fork.add_vertex(a.terminal, next);
  return out;
}

namespace {

// honest_depth[l] = largest depth of an honest vertex with label <= l.
std::vector<int> honest_depth_prefix(const Fork& fork, const CharString& w) {
  std::vector<int> d(static_cast<std::size_t>(std::max<int>(fork.max_label(), static_cast<int>(w.size()))) + 1, 0);
  for (std::size_t i = 0; i < fork.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    if (!is_honest_vertex(fork, w, id)) continue;
    auto& slot = d[static_cast<std::size_t>(fork.label(id))];
    slot = std::max(slot, fork.depth(id));
  }
  for (std::size_t l = 1; l < d.size(); ++l) d[l] = std::max(d[l], d[l - 1]);
  return d;
}

}  // namespace

bool is_viable(const Fork& fork, const CharString& w, Tine t) {
  const auto d = honest_depth_prefix(fork, w);
  return fork.depth(t.terminal) >= d[static_cast<std::size_t>(fork.label(t.terminal))];
}

std::optional<std::pair<Tine, Tine>> find_slot_cp_violation(const Fork& fork, const CharString& w,
                                                            std::size_t k) {
  const auto d = honest_depth_prefix(fork, w);
  std::vector<VertexId> viable;
  for (std::size_t i = 0; i < fork.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    if (fork.depth(id) >= d[static_cast<std::size_t>(fork.label(id))]) viable.push_back(id);
  }
  auto trim = [&](VertexId v) {
    const long cut = static_cast<long>(fork.label(v)) - static_cast<long>(k);
    while (v != fork.root() && fork.label(v) > cut) v = fork.parent(v);
    return v;
  };
  for (VertexId t1 : viable) {
    const VertexId head = trim(t1);
    for (VertexId t2 : viable) {
      if (fork.label(t1) > fork.label(t2)) continue;
      if (!fork.is_ancestor(head, t2)) return std::make_pair(Tine{t1}, Tine{t2});
    }
  }
  return std::nullopt;
}

std::string to_dot(const Fork& fork, const CharString& w) {
  std::ostringstream out;
  out << "digraph fork {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < fork.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    out << "  v" << i << " [label=\"" << fork.label(id) << "\", shape="
        << (is_honest_vertex(fork, w, id) ? "doublecircle" : "circle") << "];\n";
  }
  for (std::size_t i = 1; i < fork.size(); ++i) {
    out << "  v" << fork.parent(static_cast<VertexId>(i)) << " -> v" << i << ";\n";
  }
  out << "}\n";
  return out.str();
}

bool tine_order_less(const Fork& fork, Tine a, Tine b) {
  if (a == b) return false;
  const auto la = fork.path_labels(a.terminal);
  const auto lb = fork.path_labels(b.terminal);
  if (la != lb) return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end());
  return a.terminal < b.terminal;
}

}  // namespace forksettle
