#include "forksettle/io.hpp"

#include <cstdio>
#include <limits>
#include <map>
#include <optional>

#include "forksettle/errors.hpp"

namespace forksettle {

using nlohmann::json;

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

json fork_to_json(const Fork& fork) {
  json vertices = json::array();
  for (std::size_t i = 0; i < fork.size(); ++i) {
    const auto id = static_cast<VertexId>(i);
    json v = {{"id", id}, {"label", fork.label(id)}};
    v["parent"] = i == 0 ? json(nullptr) : json(fork.parent(id));
    vertices.push_back(std::move(v));
  }
  return {{"vertices", std::move(vertices)}};
}

Fork fork_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw ParseError("fork JSON needs a \"vertices\" array");
  }
  struct Raw {
    long long label;
    std::optional<long long> parent;
  };
  std::map<long long, Raw> raw;
  std::optional<long long> root;
  for (const auto& v : j["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v["id"].is_number_integer() || !v.contains("label") ||
        !v["label"].is_number_integer()) {
      throw ParseError("each vertex needs integer \"id\" and \"label\"");
    }
    const long long id = v["id"].get<long long>();
    Raw r{v["label"].get<long long>(), std::nullopt};
    if (r.label < 0 || r.label > std::numeric_limits<int>::max()) throw MalformedFork("vertex label out of range");
    if (v.contains("parent") && !v["parent"].is_null()) {
      if (!v["parent"].is_number_integer()) throw ParseError("vertex parent must be an integer or null");
      r.parent = v["parent"].get<long long>();
    } else {
      if (root) throw MalformedFork("more than one vertex without a parent");
      root = id;
    }
    if (!raw.emplace(id, r).second) throw MalformedFork("duplicate vertex id " + std::to_string(id));
  }
  if (!root) throw MalformedFork("fork has no root");

  // Dense, parent-first ids are kept as they are.
  bool dense = *root == 0;
  long long expect = 0;
  for (const auto& [id, r] : raw) {
    dense = dense && id == expect++ && (!r.parent || *r.parent < id);
  }
  if (dense) {
    std::vector<Vertex> out;
    for (const auto& [id, r] : raw) {
      out.push_back({static_cast<int>(r.label), r.parent ? static_cast<VertexId>(*r.parent) : kNoParent});
    }
    return Fork::from_vertices(out);
  }

  std::map<long long, std::vector<long long>> kids;
  for (const auto& [id, r] : raw) {
    if (!r.parent) continue;
    if (!raw.count(*r.parent)) throw MalformedFork("vertex " + std::to_string(id) + " has an unknown parent");
    kids[*r.parent].push_back(id);
  }
  // Breadth-first from the root puts every parent before its children.
  std::vector<Vertex> out;
  std::map<long long, VertexId> remap;
  std::vector<long long> queue{*root};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const long long id = queue[head];
    const Raw& r = raw.at(id);
    remap[id] = static_cast<VertexId>(out.size());
    out.push_back({static_cast<int>(r.label), r.parent ? remap.at(*r.parent) : kNoParent});
    for (long long c : kids[id]) queue.push_back(c);
  }
  if (out.size() != raw.size()) throw MalformedFork("fork contains vertices unreachable from the root");
  return Fork::from_vertices(out);
}

Fork fork_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return fork_from_json(j);
}

json transcript_to_json(const GameTranscript& tr) {
  json slots = json::array();
  for (const auto& rec : tr.slots) {
    json s = {{"slot", rec.slot},
              {"honest", rec.honest},
              {"fork_after_challenger", hex64(rec.fork_after_challenger)},
              {"fork_after_augmentation", hex64(rec.fork_after_augmentation)},
              {"vertices", rec.vertices_after_augmentation}};
    s["tie_break"] = rec.tie_break ? json(rec.tie_break->terminal) : json(nullptr);
    slots.push_back(std::move(s));
  }
  json out = {{"w", tr.w.to_string()},
              {"s", tr.s},
              {"k", tr.k},
              {"adversary", tr.adversary},
              {"outcome", tr.win ? "win" : "lose"},
              {"slots", std::move(slots)},
              {"final_fork", fork_to_json(tr.final_fork)}};
  out["winning_slot"] = tr.winning_slot ? json(*tr.winning_slot) : json(nullptr);
  if (tr.winning_tines) {
    out["winning_tines"] = {tr.winning_tines->first.terminal, tr.winning_tines->second.terminal};
  } else {
    out["winning_tines"] = nullptr;
  }
  return out;
}

}  // namespace forksettle
