#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pandemic/actions.hpp"
#include "pandemic/state.hpp"

namespace pandemic {

// Best fractional progress of one player toward curing color t: min(1, h/C_d).
double player_cure_ability(const GameState& s, int player, Color t);
// Team-wide ability A(t): 1 if cured, otherwise the best player_cure_ability.
double cure_ability(const GameState& s, Color t);

// A card may be spent on movement iff dropping it from its holder's hand does
// not lower the team's cure ability for its color.
bool can_spend_card(const GameState& s, int player, int card);

struct MovePlan {
    int cost = -1;                    // -1 = unreachable
    std::vector<Action> steps;        // movement actions in execution order
    std::vector<std::int16_t> spent;  // city cards discarded along the way, sorted
    bool operator==(const MovePlan&) const = default;
};

// Cheapest movement plan from `player`'s location to every city. Cards in
// `banned` may not be spent; unrestricted=true ignores the cure-ability spend
// rule (walk-away movement). Ties: fewest cards spent, then lexicographically
// smallest spent-card set.
std::vector<MovePlan> movement_costs(const GameState& s, int player,
                                     const std::vector<std::int16_t>& banned = {},
                                     bool unrestricted = false);

// Landing city of a plan's last step, or -1 for an empty (stay-put) plan.
int plan_destination(const MovePlan& plan);

enum class MacroKind : std::uint8_t { Treat, Cure, Build, ShareGive, ShareTake, ShareWait, WalkAway };
const char* macro_kind_name(MacroKind k);

struct Macro {
    MacroKind kind = MacroKind::WalkAway;
    MovePlan move;
    std::optional<Action> terminal;
    int waits = 0;  // trailing Wait actions (share rendezvous / padding)

    int total_cost() const { return move.cost + (terminal ? 1 : 0) + waits; }
    std::vector<Action> actions() const;  // flattened move + terminal + waits
    bool operator==(const Macro&) const = default;
};

// Every macro the current player could complete with `budget` actions left.
// Never empty for budget >= 1: a do-nothing macro backstops sparse boards.
std::vector<Macro> generate_macros(const GameState& s, int budget);

// Which `count` cards player `p` discards when forced over the hand limit:
// the set whose removal costs the least total cure ability, ties toward
// colors with more duplicates in hand, then lower city ids.
std::vector<std::int16_t> select_discards(const GameState& s, int player, int count);

std::string macro_to_string(const Macro& m, const CityMap& map);

}  // namespace pandemic
