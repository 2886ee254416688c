#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pandemic/map.hpp"
#include "pandemic/rng.hpp"
#include "pandemic/rules.hpp"
#include "pandemic/state.hpp"

#ifndef PANDEMIC_DATA
#define PANDEMIC_DATA "data"
#endif

namespace test_helpers {

inline pandemic::MapPtr standard_map() {
    static pandemic::MapPtr map = std::make_shared<pandemic::CityMap>(
        pandemic::CityMap::load_file(std::string(PANDEMIC_DATA) + "/pandemic_map.txt"));
    return map;
}

// ring a-b-c-d-e-a plus chord a-c; enough cycles to chain outbreaks
inline pandemic::MapPtr toy_map() {
    using pandemic::City;
    using pandemic::Color;
    static pandemic::MapPtr map = std::make_shared<pandemic::CityMap>(pandemic::CityMap::custom(
        {{"alpha", "Alpha", Color::Blue},
         {"bravo", "Bravo", Color::Blue},
         {"charlie", "Charlie", Color::Yellow},
         {"delta", "Delta", Color::Yellow},
         {"echo", "Echo", Color::Red}},
        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}}));
    return map;
}

// bare single-player state on the toy map, everything quiet
inline pandemic::GameState toy_state() {
    pandemic::GameState s;
    s.map = toy_map();
    s.config.player_count = 2;
    s.config.epidemic_count = 4;
    s.config.roles = {pandemic::Role::Medic, pandemic::Role::Scientist};
    s.cities.assign(s.map->size(), pandemic::CityState{});
    s.cube_supply.fill(pandemic::kCubesPerColor);
    s.players.resize(2);
    s.players[0].role = pandemic::Role::Medic;
    s.players[1].role = pandemic::Role::Scientist;
    s.players[0].location = 0;
    s.players[1].location = 0;
    s.cities[0].has_station = true;
    s.stations_placed = 1;
    return s;
}

inline pandemic::GameConfig standard_config(int players, int epidemics, std::uint64_t seed) {
    pandemic::GameConfig cfg;
    cfg.player_count = players;
    cfg.epidemic_count = epidemics;
    cfg.rng_seed = seed;
    using pandemic::Role;
    std::vector<Role> all = {Role::OperationsExpert, Role::Medic, Role::Researcher,
                             Role::Scientist};
    cfg.roles.assign(all.begin(), all.begin() + players);
    return cfg;
}

struct InvariantReport {
    bool ok = true;
    std::string detail;
};

// cube/card conservation, counter ranges, hand limit
inline InvariantReport check_invariants(const pandemic::GameState& s) {
    using namespace pandemic;
    auto fail = [](std::string why) { return InvariantReport{false, std::move(why)}; };
    for (int t = 0; t < kNumColors; ++t) {
        int on_board = 0;
        for (const auto& c : s.cities) on_board += c.cubes[t];
        if (on_board + s.cube_supply[t] != kCubesPerColor)
            return fail("cube conservation broken for color " + std::to_string(t));
    }
    for (const auto& c : s.cities)
        for (int t = 0; t < kNumColors; ++t)
            if (c.cubes[t] > 3) return fail("city over 3 cubes");

    int player_cards = static_cast<int>(s.player_deck.discard.size());
    int epidemics_in_deck = 0;
    for (const auto& st : s.player_deck.stacks) {
        bool saw_epidemic = false;
        for (const auto& c : st.cards) {
            if (c.kind == PlayerCard::Epidemic) {
                epidemics_in_deck += 1;
                saw_epidemic = true;
            } else {
                player_cards += 1;
            }
        }
        if (st.has_epidemic != saw_epidemic) return fail("sub-stack epidemic flag wrong");
    }
    for (const auto& c : s.player_deck.discard)
        if (c.kind == PlayerCard::Epidemic) return fail("epidemic in player discard");
    for (const auto& p : s.players) player_cards += static_cast<int>(p.hand.size());
    if (player_cards != s.map->size())
        return fail("player city-card conservation broken: " + std::to_string(player_cards));
    if (epidemics_in_deck + s.epidemics_drawn != s.config.epidemic_count)
        return fail("epidemic card conservation broken");

    std::vector<int> seen(s.map->size(), 0);
    for (const auto& st : s.infection_deck.stacks)
        for (auto c : st.cards) seen[c] += 1;
    for (auto c : s.infection_deck.discard) seen[c] += 1;
    for (int c = 0; c < s.map->size(); ++c)
        if (seen[c] != 1) return fail("infection card conservation broken");

    if (s.outbreak_counter < 0 || s.outbreak_counter > kMaxOutbreaks)
        return fail("outbreak counter out of range");
    if (s.epidemics_drawn < 0 || s.epidemics_drawn > s.config.epidemic_count)
        return fail("epidemics drawn out of range");
    if (s.ongoing())  // terminal states may freeze mid-draw with an unshed hand
        for (const auto& p : s.players)
            if (static_cast<int>(p.hand.size()) > kHandLimit) return fail("hand over limit");
    return {};
}

// random-policy game paused part-way through, still in the actions phase with
// actions left to spend; random games rarely live long, so when the game dies
// before `plies` steps the last such state seen is handed back instead
inline pandemic::GameState random_midgame(std::uint64_t seed, int plies,
                                          int players = 4, int epidemics = 4) {
    using namespace pandemic;
    for (std::uint64_t attempt = seed;; ++attempt) {
        Rng rng(attempt);
        GameState s = new_game(standard_config(players, epidemics, attempt), rng, standard_map());
        GameState snapshot;
        bool have_snapshot = false;
        for (int step = 0; step < plies && s.ongoing(); ++step) {
            if (s.phase == Phase::Actions) {
                if (s.actions_remaining > 0) {
                    snapshot = s;
                    have_snapshot = true;
                }
                auto acts = legal_actions(s);
                apply_action(s, acts[rng.below(static_cast<std::uint32_t>(acts.size()))]);
            } else if (s.phase == Phase::Draw) {
                draw_phase(s, rng);
            } else {
                infection_phase(s, rng);
            }
        }
        if (s.ongoing() && s.phase == Phase::Actions && s.actions_remaining > 0) return s;
        if (have_snapshot) return snapshot;
    }
}

inline double chi_square(const std::vector<int>& counts, double expected_each) {
    double chi2 = 0.0;
    for (int c : counts) {
        double d = c - expected_each;
        chi2 += d * d / expected_each;
    }
    return chi2;
}

// one full random-policy game; returns a non-ok report on the first violation
inline InvariantReport random_playout(const pandemic::GameConfig& cfg, pandemic::Rng& rng,
                                      int* turns_out = nullptr) {
    using namespace pandemic;
    GameState s = new_game(cfg, rng, standard_map());
    auto rep = check_invariants(s);
    if (!rep.ok) return rep;
    int guard = 0;
    while (s.ongoing()) {
        if (++guard > 4000) return {false, "game did not terminate"};
        if (s.phase == Phase::Actions) {
            auto acts = legal_actions(s);
            if (acts.empty()) return {false, "no legal actions"};
            apply_action(s, acts[rng.below(static_cast<std::uint32_t>(acts.size()))]);
        } else if (s.phase == Phase::Draw) {
            draw_phase(s, rng);
        } else {
            infection_phase(s, rng);
        }
        rep = check_invariants(s);
        if (!rep.ok) return rep;
    }
    int max_turns = s.map->size() / 2 + 2;
    if (s.turn > max_turns) return {false, "termination bound exceeded"};
    if (turns_out) *turns_out = s.turn;
    return {};
}

}  // namespace test_helpers
