#include "support/fixtures.hpp"

#include <vector>

#include "forksettle/rng.hpp"

namespace fixtures {

using forksettle::Fork;
using forksettle::Vertex;
using forksettle::VertexId;

Fork intro_fork() {
  return Fork::from_vertices({
      {0, -1},
      {1, 0},   // 1  honest
      {2, 0},   // 2
      {3, 2},   // 3  honest
      {4, 3},   // 4
      {7, 4},   // 5
      {8, 5},   // 6
      {2, 1},   // 7
      {4, 7},   // 8
      {6, 8},   // 9  honest
      {9, 9},   // 10 honest
      {4, 1},   // 11
      {5, 11},  // 12 honest
  });
}

Fork balanced_fork() {
  return Fork::from_vertices({{0, -1}, {2, 0}, {3, 1}, {6, 2}, {1, 0}, {4, 4}, {5, 5}});
}

Fork x_balanced_fork() {
  return Fork::from_vertices({{0, -1}, {1, 0}, {2, 1}, {3, 2}, {6, 3}, {4, 2}, {5, 5}});
}

Fork chain(std::initializer_list<int> labels) {
  Fork f;
  VertexId tip = f.root();
  for (int l : labels) tip = f.add_vertex(tip, l);
  return f;
}

Fork random_valid_fork(const forksettle::CharString& w, std::uint64_t seed) {
  forksettle::Rng rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng.next_u64() % n); };
  Fork f;
  int honest_depth = 0;
  for (std::size_t t = 1; t <= w.size(); ++t) {
    const int label = static_cast<int>(t);
    if (w.honest(t)) {
      std::vector<VertexId> parents;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.depth(static_cast<VertexId>(i)) >= honest_depth) parents.push_back(static_cast<VertexId>(i));
      }
      const VertexId v = f.add_vertex(parents[pick(parents.size())], label);
      honest_depth = f.depth(v);
    } else {
      const std::size_t copies = pick(3);
      const std::size_t existing = f.size();
      for (std::size_t c = 0; c < copies; ++c) f.add_vertex(static_cast<VertexId>(pick(existing)), label);
    }
  }
  return f;
}

}  // namespace fixtures
