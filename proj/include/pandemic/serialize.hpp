#pragma once

#include <string>

#include "json.hpp"
#include "pandemic/state.hpp"

namespace pandemic {

// Snapshot text format: complete game state including face-down deck orders,
// so a stored setup replays exactly. Bump when the field layout changes.
inline constexpr int kSnapshotVersion = 1;

nlohmann::ordered_json state_to_json(const GameState& s);

// The map travels separately; the snapshot only pins its checksum. Throws
// std::invalid_argument on version/checksum mismatch, unknown keys, unknown
// city ids, or structurally broken fields.
GameState state_from_json(const nlohmann::ordered_json& j, MapPtr map);

std::string serialize_state(const GameState& s);
GameState deserialize_state(const std::string& text, MapPtr map);

}  // namespace pandemic
