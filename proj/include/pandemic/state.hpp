#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pandemic/map.hpp"

namespace pandemic {

enum class Role : std::uint8_t { OperationsExpert = 0, Medic = 1, Researcher = 2, Scientist = 3 };
const char* role_name(Role r);
bool parse_role(const std::string& s, Role& out);

// Cards needed to cure a disease.
inline int cure_threshold(Role r) { return r == Role::Scientist ? 4 : 5; }

enum class Phase : std::uint8_t { Actions, Draw, Infect };
enum class Status : std::uint8_t { Ongoing, Won, Lost };
enum class LossCause : std::uint8_t { Outbreaks, Cubes, PlayerDeck };
const char* phase_name(Phase p);
const char* loss_cause_name(LossCause c);

struct GameConfig {
    int player_count = 4;
    int epidemic_count = 4;  // 4 easy, 5 medium, 6 hard
    std::vector<Role> roles;
    std::uint64_t rng_seed = 0;

    void validate() const;  // throws std::invalid_argument
    bool operator==(const GameConfig&) const = default;
};

struct PlayerCard {
    enum Kind : std::uint8_t { CityCard, Epidemic };
    Kind kind = CityCard;
    std::int16_t city = -1;  // valid for CityCard

    static PlayerCard city_card(int c) { return {CityCard, static_cast<std::int16_t>(c)}; }
    static PlayerCard epidemic() { return {Epidemic, -1}; }
    bool operator==(const PlayerCard&) const = default;
};

// One face-down pile segment. cards.back() is the top, cards.front() the bottom.
struct PlayerSubStack {
    std::vector<PlayerCard> cards;
    bool has_epidemic = false;
    bool operator==(const PlayerSubStack&) const = default;
};

// stacks.front() is the top of the deck.
struct PlayerDeck {
    std::vector<PlayerSubStack> stacks;
    std::vector<PlayerCard> discard;

    int cards_remaining() const;
    bool operator==(const PlayerDeck&) const = default;
};

struct InfectionSubStack {
    std::vector<std::int16_t> cards;  // city indices; back() is the top
    bool operator==(const InfectionSubStack&) const = default;
};

struct InfectionDeck {
    std::vector<InfectionSubStack> stacks;  // front() is the top sub-stack
    std::vector<std::int16_t> discard;

    int cards_remaining() const;
    bool operator==(const InfectionDeck&) const = default;
};

struct PlayerState {
    Role role = Role::Medic;
    std::int16_t location = 0;
    std::vector<std::int16_t> hand;  // city indices, unsorted

    int count_color(const CityMap& map, Color t) const;
    bool holds(int city) const;
    bool operator==(const PlayerState&) const = default;
};

struct CityState {
    std::array<std::uint8_t, kNumColors> cubes{};
    bool has_station = false;

    int cubes_of(Color t) const { return cubes[static_cast<int>(t)]; }
    int total_cubes() const { return cubes[0] + cubes[1] + cubes[2] + cubes[3]; }
    bool operator==(const CityState&) const = default;
};

struct GameState {
    MapPtr map;
    GameConfig config;
    std::vector<CityState> cities;
    std::vector<PlayerState> players;
    int current_player = 0;
    int actions_remaining = 4;
    std::array<bool, kNumColors> cured{};
    std::array<std::uint8_t, kNumColors> cube_supply{};
    int outbreak_counter = 0;
    int epidemics_drawn = 0;
    PlayerDeck player_deck;
    InfectionDeck infection_deck;
    int stations_placed = 0;
    bool ops_flight_used = false;
    Phase phase = Phase::Actions;
    Status status = Status::Ongoing;
    std::optional<LossCause> loss_cause;
    int turn = 1;  // player turns, 1-based; advances at the end of each infect phase

    int cured_count() const { return cured[0] + cured[1] + cured[2] + cured[3]; }
    int infection_rate() const {
        return epidemics_drawn <= 2 ? 2 : epidemics_drawn <= 4 ? 3 : 4;
    }
    const PlayerState& current() const { return players[current_player]; }
    PlayerState& current() { return players[current_player]; }
    bool ongoing() const { return status == Status::Ongoing; }

    bool observable_equal(const GameState& other) const;  // ignores face-down deck order
    bool operator==(const GameState&) const = default;
};

}  // namespace pandemic
