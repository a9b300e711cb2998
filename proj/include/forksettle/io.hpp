#pragma once

#include <string>

#include <json.hpp>

#include "forksettle/fork.hpp"
#include "forksettle/game.hpp"

namespace forksettle {

/// {"vertices": [{"id": 0, "label": 0, "parent": null}, ...]}
nlohmann::json fork_to_json(const Fork& fork);

/// Accepts any distinct integer ids in any order; they are remapped to
/// creation order (parents first). Throws ParseError on bad JSON shape and
/// MalformedFork on bad structure.
Fork fork_from_json(const nlohmann::json& j);
Fork fork_from_json_text(const std::string& text);

nlohmann::json transcript_to_json(const GameTranscript& transcript);

/// Fixed-width lowercase hex, as transcripts print digests.
std::string hex64(std::uint64_t x);

}  // namespace forksettle
