#include "pandemic/state.hpp"

#include <algorithm>
#include <stdexcept>

namespace pandemic {

const char* role_name(Role r) {
    switch (r) {
        case Role::OperationsExpert: return "ops-expert";
        case Role::Medic: return "medic";
        case Role::Researcher: return "researcher";
        case Role::Scientist: return "scientist";
    }
    return "?";
}

bool parse_role(const std::string& s, Role& out) {
    if (s == "ops-expert" || s == "operations-expert") out = Role::OperationsExpert;
    else if (s == "medic") out = Role::Medic;
    else if (s == "researcher") out = Role::Researcher;
    else if (s == "scientist") out = Role::Scientist;
    else return false;
    return true;
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Actions: return "actions";
        case Phase::Draw: return "draw";
        case Phase::Infect: return "infect";
    }
    return "?";
}

const char* loss_cause_name(LossCause c) {
    switch (c) {
        case LossCause::Outbreaks: return "outbreaks";
        case LossCause::Cubes: return "cubes";
        case LossCause::PlayerDeck: return "deck";
    }
    return "?";
}

void GameConfig::validate() const {
    if (player_count < 2 || player_count > 4)
        throw std::invalid_argument("config: player count must be 2..4");
    if (epidemic_count < 4 || epidemic_count > 6)
        throw std::invalid_argument("config: epidemic count must be 4, 5 or 6");
    if (static_cast<int>(roles.size()) != player_count)
        throw std::invalid_argument("config: one role per player required");
    for (std::size_t i = 0; i < roles.size(); ++i)
        for (std::size_t j = i + 1; j < roles.size(); ++j)
            if (roles[i] == roles[j])
                throw std::invalid_argument("config: duplicate role");
}

int PlayerDeck::cards_remaining() const {
    int n = 0;
    for (const auto& s : stacks) n += static_cast<int>(s.cards.size());
    return n;
}

int InfectionDeck::cards_remaining() const {
    int n = 0;
    for (const auto& s : stacks) n += static_cast<int>(s.cards.size());
    return n;
}

int PlayerState::count_color(const CityMap& map, Color t) const {
    int n = 0;
    for (int c : hand)
        if (map.color_of(c) == t) ++n;
    return n;
}

bool PlayerState::holds(int city) const {
    return std::find(hand.begin(), hand.end(), city) != hand.end();
}

bool GameState::observable_equal(const GameState& other) const {
    if (cities != other.cities || players != other.players ||
        current_player != other.current_player ||
        actions_remaining != other.actions_remaining || cured != other.cured ||
        cube_supply != other.cube_supply || outbreak_counter != other.outbreak_counter ||
        epidemics_drawn != other.epidemics_drawn ||
        stations_placed != other.stations_placed || ops_flight_used != other.ops_flight_used ||
        phase != other.phase || status != other.status || loss_cause != other.loss_cause ||
        turn != other.turn)
        return false;

    if (player_deck.discard != other.player_deck.discard) return false;
    if (player_deck.stacks.size() != other.player_deck.stacks.size()) return false;
    std::vector<std::int16_t> mine, theirs;
    for (std::size_t i = 0; i < player_deck.stacks.size(); ++i) {
        const auto& a = player_deck.stacks[i];
        const auto& b = other.player_deck.stacks[i];
        if (a.cards.size() != b.cards.size() || a.has_epidemic != b.has_epidemic)
            return false;
        for (const auto& c : a.cards)
            if (c.kind == PlayerCard::CityCard) mine.push_back(c.city);
        for (const auto& c : b.cards)
            if (c.kind == PlayerCard::CityCard) theirs.push_back(c.city);
    }
    std::sort(mine.begin(), mine.end());
    std::sort(theirs.begin(), theirs.end());
    if (mine != theirs) return false;

    if (infection_deck.discard != other.infection_deck.discard) return false;
    if (infection_deck.stacks.size() != other.infection_deck.stacks.size()) return false;
    for (std::size_t i = 0; i < infection_deck.stacks.size(); ++i) {
        auto a = infection_deck.stacks[i].cards;
        auto b = other.infection_deck.stacks[i].cards;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    return true;
}

}  // namespace pandemic
