#pragma once

#include <stdexcept>
#include <vector>

#include "pandemic/actions.hpp"
#include "pandemic/rng.hpp"
#include "pandemic/state.hpp"

namespace pandemic {

struct rule_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GameStatus {
    Status status = Status::Ongoing;
    std::optional<LossCause> cause;
};

GameState new_game(const GameConfig& config, Rng& rng, MapPtr map);
inline GameState new_game(const GameConfig& config, MapPtr map) {
    Rng rng(config.rng_seed);
    return new_game(config, rng, std::move(map));
}

std::vector<Action> legal_actions(const GameState& state);
bool is_action_legal(const GameState& state, const Action& a);
void apply_action(GameState& state, const Action& a);
void draw_phase(GameState& state, Rng& rng);
void infection_phase(GameState& state, Rng& rng);
GameStatus game_status(const GameState& state);

// Places `count` cubes of `color` on `city`, resolving outbreak chains.
// One call covers one infection-card resolution: a city outbreaks at most once.
void infect_city(GameState& state, int city, Color color, int count);

// Drive-only BFS distances from `from`; used for the 6-station relocation rule.
std::vector<int> drive_distances(const CityMap& map, int from);

// Station relocated when building with all 6 placed: the station farthest
// (by drive distance) from the nearest pawn; ties to the lowest city index.
int relocation_station(const GameState& state);

}  // namespace pandemic
