#include "forksettle/adversary.hpp"

#include <algorithm>
#include <limits>

#include "forksettle/errors.hpp"
#include "forksettle/margin.hpp"

namespace forksettle {

namespace {

constexpr int kUnset = -1;

// ≤π-least element of a non-empty candidate list.
VertexId least_tine(const Fork& fork, const std::vector<VertexId>& ids) {
  VertexId best = ids.front();
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (tine_order_less(fork, {ids[i]}, {best})) best = ids[i];
  }
  return best;
}

// Among `from`, the tines whose divergence label is smallest, ≤π-least first.
VertexId earliest_diverging(const Fork& fork, const std::vector<VertexId>& from, const std::vector<int>& div) {
  int low = std::numeric_limits<int>::max();
  for (VertexId v : from) low = std::min(low, div[static_cast<std::size_t>(v)]);
  std::vector<VertexId> tied;
  for (VertexId v : from) {
    if (div[static_cast<std::size_t>(v)] == low) tied.push_back(v);
  }
  return least_tine(fork, tied);
}

// Early-divergence witness where `div` already holds divergence labels
// against `second`.
std::pair<VertexId, VertexId> witness_against(const Fork& fork, const std::vector<VertexId>& first,
                                              const std::vector<VertexId>& second, const std::vector<int>& div) {
  const VertexId a = earliest_diverging(fork, first, div);
  const int low = div[static_cast<std::size_t>(a)];
  std::vector<VertexId> partners;
  for (VertexId b : second) {
    if (fork.intersection_label({a}, {b}) == low) partners.push_back(b);
  }
  return {a, least_tine(fork, partners)};
}

std::vector<VertexId> arg_max(const std::vector<int>& values, const std::vector<VertexId>& among) {
  int best = std::numeric_limits<int>::min();
  for (VertexId v : among) best = std::max(best, values[static_cast<std::size_t>(v)]);
  std::vector<VertexId> out;
  for (VertexId v : among) {
    if (values[static_cast<std::size_t>(v)] == best) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> all_ids(const Fork& fork) {
  std::vector<VertexId> ids(fork.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<VertexId>(i);
  return ids;
}

}  // namespace

std::vector<int> divergence_labels(const Fork& fork, const std::vector<VertexId>& targets) {
  if (targets.empty()) throw EmptySet("divergence needs at least one target tine");
  const std::size_t n = fork.size();
  std::vector<int> count(n, 0);
  for (VertexId t : targets) ++count[static_cast<std::size_t>(t)];
  for (std::size_t i = n; i-- > 1;) count[static_cast<std::size_t>(fork.parent(static_cast<VertexId>(i)))] += count[i];

  // up[v]: label of the shallowest proper ancestor a of v with a target in
  // subtree(a) but outside the branch toward v.
  std::vector<int> up(n, kUnset);
  std::vector<int> out(n);
  out[0] = fork.label(0);
  for (std::size_t i = 1; i < n; ++i) {
    const auto id = static_cast<VertexId>(i);
    const auto p = static_cast<std::size_t>(fork.parent(id));
    if (up[p] != kUnset) {
      up[i] = up[p];
    } else if (count[p] > count[i]) {
      up[i] = fork.label(static_cast<VertexId>(p));
    }
    out[i] = up[i] != kUnset ? up[i] : fork.label(id);
  }
  return out;
}

std::pair<Tine, Tine> early_divergence_witness(const Fork& fork, const std::vector<Tine>& a,
                                               const std::vector<Tine>& b) {
  if (a.empty() || b.empty()) throw EmptySet("early-divergence witness needs two non-empty sets");
  std::vector<VertexId> bs;
  for (Tine t : b) bs.push_back(t.terminal);
  std::vector<VertexId> as;
  for (Tine t : a) as.push_back(t.terminal);
  const auto div = divergence_labels(fork, bs);
  const auto [x, y] = witness_against(fork, as, bs, div);
  return {Tine{x}, Tine{y}};
}

Fork build_margin_optimal_fork(const CharString& x, const CharString& y) {
  const CharString w = x.concat(y);
  const std::size_t split = x.size();
  Fork fork;
  CharString prefix;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 1) {
      prefix.push_back(1);
      continue;
    }
    const auto reach = all_reaches(fork, prefix);
    const auto ids = all_ids(fork);
    std::vector<VertexId> zero;
    for (VertexId v : ids) {
      if (reach[static_cast<std::size_t>(v)] == 0) zero.push_back(v);
    }
    Tine s{fork.deepest().front()};
    if (!zero.empty()) {
      auto top = arg_max(reach, ids);
      if (i >= split + 1) {
        // Keep only maximal-reach tines that belong to a witness of μ_x(F).
        const int margin = fork_relative_margin(fork, prefix, split);
        std::vector<VertexId> witnessing;
        for (VertexId r : top) {
          for (VertexId t : ids) {
            if (std::min(reach[static_cast<std::size_t>(r)], reach[static_cast<std::size_t>(t)]) == margin &&
                disjoint_over(fork, {r}, {t}, split)) {
              witnessing.push_back(r);
              break;
            }
          }
        }
        if (!witnessing.empty()) top = std::move(witnessing);
      }
      const VertexId t_rho = least_tine(fork, top);
      s.terminal = earliest_diverging(fork, zero, divergence_labels(fork, {t_rho}));
    }
    prefix.push_back(0);
    fork = conservative_extend(fork, prefix, s);
  }
  return fork;
}

CanonicalForkBuilder::CanonicalForkBuilder() { refresh(); }

void CanonicalForkBuilder::refresh() {
  reserve_ = reserve_table(w_);
  const int h = fork_.height();
  reach_.resize(fork_.size());
  for (std::size_t i = 0; i < fork_.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    reach_[i] = reserve_[static_cast<std::size_t>(fork_.label(id))] - (h - fork_.depth(id));
  }
  rho_ = *std::max_element(reach_.begin(), reach_.end());
  max_reach_.clear();
  for (std::size_t i = 0; i < reach_.size(); ++i) {
    if (reach_[i] == rho_) max_reach_.push_back(static_cast<VertexId>(i));
  }
}

Tine CanonicalForkBuilder::next_extension() const {
  std::vector<VertexId> zero;
  for (std::size_t i = 0; i < reach_.size(); ++i) {
    if (reach_[i] == 0) zero.push_back(static_cast<VertexId>(i));
  }
  // Closed forks have a unique longest tine.
  if (zero.empty()) return {fork_.deepest().front()};
  return {earliest_diverging(fork_, zero, divergence_labels(fork_, max_reach_))};
}

void CanonicalForkBuilder::push(int bit) {
  if (bit != 0 && bit != 1) throw BadParams("characteristic string bits must be 0 or 1");
  prev_max_reach_ = max_reach_;
  if (bit == 0) {
    const Tine s = next_extension();
    // Same vertices conservative_extend() would add, built in place.
    const auto labels = extension_labels(fork_, w_, s);
    VertexId tip = s.terminal;
    for (int l : labels) tip = fork_.add_vertex(tip, l);
    fork_.add_vertex(tip, static_cast<int>(w_.size()) + 1);
  }
  w_.push_back(bit);
  refresh();
}

CanonicalForkResult CanonicalForkBuilder::result() const {
  CanonicalForkResult out;
  out.fork = fork_;
  out.w = w_;
  const std::size_t n = w_.size();
  out.witness_rho = Tine{least_tine(fork_, max_reach_)};
  out.witnesses.assign(n + 1, std::nullopt);
  out.witnesses[n] = WitnessPair{out.witness_rho, out.witness_rho};
  if (n == 0) return out;

  const auto div = divergence_labels(fork_, max_reach_);
  {
    const auto [tine, rho_tine] = witness_against(fork_, prev_max_reach_, max_reach_, div);
    out.witness_w = WitnessPair{Tine{rho_tine}, Tine{tine}};
    out.witnesses[n - 1] = out.witness_w;
  }

  // B_x grows with the split; sweep tines in order of divergence label.
  std::vector<VertexId> order = all_ids(fork_);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return div[static_cast<std::size_t>(a)] < div[static_cast<std::size_t>(b)];
  });
  std::vector<VertexId> in_b;
  std::size_t next = 0;
  for (std::size_t m = 0; m + 1 < n; ++m) {
    while (next < order.size() && div[static_cast<std::size_t>(order[next])] <= static_cast<int>(m)) {
      in_b.push_back(order[next++]);
    }
    if (in_b.empty()) continue;
    const auto c = arg_max(reach_, in_b);
    const auto [tine, rho_tine] = witness_against(fork_, c, max_reach_, div);
    out.witnesses[m] = WitnessPair{Tine{rho_tine}, Tine{tine}};
  }
  return out;
}

CanonicalForkResult build_canonical_fork(const CharString& w) {
  CanonicalForkBuilder b;
  for (auto bit : w.bits()) b.push(bit);
  return b.result();
}

CanonicalReport verify_canonical(const CanonicalForkResult& result, const CharString& w) {
  CanonicalReport rep;
  auto fail = [&](CanonicalReport::Status st, std::optional<std::size_t> split, std::string msg) {
    rep.status = st;
    rep.failing_split = split;
    rep.message = std::move(msg);
    return rep;
  };
  const Fork& f = result.fork;
  if (const auto v = validate(f, w); !v.ok()) {
    return fail(CanonicalReport::Status::NotCanonical, std::nullopt,
                std::string("axiom ") + axiom_name(v.violation->axiom) + ": " + v.violation->message);
  }
  if (!is_closed(f, w)) return fail(CanonicalReport::Status::NotCanonical, std::nullopt, "fork is not closed");
  const auto reach = all_reaches(f, w);
  const auto target_rho = rho(w);
  if (!f.contains(result.witness_rho.terminal) ||
      reach[static_cast<std::size_t>(result.witness_rho.terminal)] != target_rho) {
    return fail(CanonicalReport::Status::NotCanonical, std::nullopt, "witness_rho does not attain rho(w)");
  }
  if (result.witnesses.size() != w.size() + 1) {
    return fail(CanonicalReport::Status::NotCanonical, std::nullopt, "expected one witness entry per split");
  }
  const auto margins = relative_margins(w);
  for (std::size_t m = 0; m <= w.size(); ++m) {
    const auto& pair = result.witnesses[m];
    if (!pair) {
      if (fork_relative_margin(f, w, m) != margins[m]) {
        return fail(CanonicalReport::Status::WitnessMismatch, m, "no pair realizes the relative margin");
      }
      continue;
    }
    const VertexId a = pair->rho_tine.terminal;
    const VertexId b = pair->tine.terminal;
    if (!f.contains(a) || !f.contains(b)) {
      return fail(CanonicalReport::Status::WitnessMismatch, m, "witness refers to a missing vertex");
    }
    if (!disjoint_over(f, {a}, {b}, m)) {
      return fail(CanonicalReport::Status::WitnessMismatch, m, "witness tines share an edge past the split");
    }
    const int ra = reach[static_cast<std::size_t>(a)];
    const int rb = reach[static_cast<std::size_t>(b)];
    if (ra != target_rho) {
      return fail(CanonicalReport::Status::WitnessMismatch, m, "first witness tine is not of maximal reach");
    }
    if (std::min(ra, rb) != margins[m]) {
      return fail(CanonicalReport::Status::WitnessMismatch, m,
                  "witness min reach " + std::to_string(std::min(ra, rb)) + " but relative margin " +
                      std::to_string(margins[m]));
    }
    if (!is_honest_vertex(f, w, a) || !is_honest_vertex(f, w, b)) rep.non_honest_splits.push_back(m);
  }
  return rep;
}

}  // namespace forksettle
