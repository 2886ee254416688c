#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "pandemic/macro.hpp"
#include "pandemic/rules.hpp"

using namespace pandemic;
using test_helpers::standard_config;
using test_helpers::standard_map;

namespace {

int count_type(const std::vector<Action>& acts, ActionType t) {
    return static_cast<int>(
        std::count_if(acts.begin(), acts.end(), [&](const Action& a) { return a.type == t; }));
}

}  // namespace

TEST_CASE("new_game deals the documented setup") {
    auto map = standard_map();

    SUBCASE("4 players, 4 epidemics") {
        GameState s = new_game(standard_config(4, 4, 7), map);
        int cubes = 0;
        for (const auto& c : s.cities) cubes += c.total_cubes();
        CHECK(cubes == 18);
        CHECK(s.player_deck.cards_remaining() == 44);
        CHECK(s.player_deck.stacks.size() == 4);
        for (const auto& st : s.player_deck.stacks) {
            CHECK(st.cards.size() == 11);
            CHECK(st.has_epidemic);
        }
        for (const auto& p : s.players) {
            CHECK(p.hand.size() == 2);
            CHECK(p.location == map->atlanta());
        }
        CHECK(s.cities[map->atlanta()].has_station);
        CHECK(s.stations_placed == 1);
        CHECK(s.infection_deck.discard.size() == 9);
        CHECK(s.infection_deck.cards_remaining() == 39);
        CHECK(s.phase == Phase::Actions);
        CHECK(s.actions_remaining == 4);
        // 3/3/3, 2/2/2, 1/1/1 in draw order
        std::array<int, 3> seen{};
        for (const auto& c : s.cities) {
            int n = c.total_cubes();
            if (n > 0) seen[n - 1] += 1;
        }
        CHECK(seen == std::array<int, 3>{3, 3, 3});
    }

    SUBCASE("2 players, 6 epidemics") {
        GameState s = new_game(standard_config(2, 6, 9), map);
        CHECK(s.player_deck.cards_remaining() == 46);
        CHECK(s.player_deck.stacks.size() == 6);
        std::vector<std::size_t> sizes;
        for (const auto& st : s.player_deck.stacks) sizes.push_back(st.cards.size());
        CHECK(*std::max_element(sizes.begin(), sizes.end()) -
                  *std::min_element(sizes.begin(), sizes.end()) <=
              1);
        for (const auto& p : s.players) CHECK(p.hand.size() == 4);
    }

    SUBCASE("same seed is bit-identical, different seed is not") {
        GameState a = new_game(standard_config(3, 5, 42), map);
        GameState b = new_game(standard_config(3, 5, 42), map);
        GameState c = new_game(standard_config(3, 5, 43), map);
        CHECK(a == b);
        CHECK_FALSE(a == c);
    }

    SUBCASE("invalid configs are rejected") {
        CHECK_THROWS_AS(new_game(standard_config(5, 4, 1), map), config_error);
        CHECK_THROWS_AS(new_game(standard_config(2, 7, 1), map), config_error);
        GameConfig dup = standard_config(2, 4, 1);
        dup.roles = {Role::Medic, Role::Medic};
        CHECK_THROWS_AS(new_game(dup, map), config_error);
    }
}

TEST_CASE("legal actions cover the role modifiers") {
    auto map = standard_map();
    GameState s = test_helpers::toy_state();
    s.map = map;
    s.cities.assign(map->size(), CityState{});
    int atl = map->atlanta();
    s.cities[atl].has_station = true;
    s.players[0].location = static_cast<std::int16_t>(atl);
    s.players[1].location = static_cast<std::int16_t>(atl);

    SUBCASE("bare hand in atlanta: drives plus wait only") {
        auto acts = legal_actions(s);
        CHECK(acts.size() == map->neighbors(atl).size() + 1);
        CHECK(count_type(acts, ActionType::DriveFerry) ==
              static_cast<int>(map->neighbors(atl).size()));
        CHECK(count_type(acts, ActionType::Wait) == 1);
    }

    SUBCASE("scientist cures with exactly 4 cards") {
        s.current_player = 1;
        auto& hand = s.players[1].hand;
        for (int c = 0; c < map->size() && hand.size() < 4; ++c)
            if (map->color_of(c) == Color::Blue) hand.push_back(static_cast<std::int16_t>(c));
        auto acts = legal_actions(s);
        CHECK(count_type(acts, ActionType::CureDisease) == 1);
        auto it = std::find_if(acts.begin(), acts.end(),
                               [](const Action& a) { return a.type == ActionType::CureDisease; });
        CHECK(it->cure_count == 4);
        apply_action(s, *it);
        CHECK(s.cured[static_cast<int>(Color::Blue)]);
        CHECK(s.players[1].hand.empty());
        CHECK(s.player_deck.discard.size() == 4);
    }

    SUBCASE("non-scientist needs 5") {
        s.current_player = 0;  // medic
        auto& hand = s.players[0].hand;
        for (int c = 0; c < map->size() && hand.size() < 4; ++c)
            if (map->color_of(c) == Color::Blue) hand.push_back(static_cast<std::int16_t>(c));
        CHECK(count_type(legal_actions(s), ActionType::CureDisease) == 0);
        for (int c = 0; c < map->size() && hand.size() < 5; ++c)
            if (map->color_of(c) == Color::Blue && !s.players[0].holds(c))
                hand.push_back(static_cast<std::int16_t>(c));
        CHECK(count_type(legal_actions(s), ActionType::CureDisease) == 1);
    }

    SUBCASE("ops expert flight goes anywhere once per turn") {
        GameState t = s;
        t.players[0].role = Role::OperationsExpert;
        t.players[0].hand = {static_cast<std::int16_t>((atl + 5) % map->size())};
        auto acts = legal_actions(t);
        CHECK(count_type(acts, ActionType::OpsExpertFlight) == map->size() - 1);
        t.ops_flight_used = true;
        CHECK(count_type(legal_actions(t), ActionType::OpsExpertFlight) == 0);
        // build without a matching card, anywhere
        t.players[0].location = static_cast<std::int16_t>((atl + 1) % map->size());
        CHECK(count_type(legal_actions(t), ActionType::BuildStation) == 1);
    }

    SUBCASE("researcher gives from anywhere, receiver must stand in the named city") {
        GameState t = s;
        t.players[0].role = Role::Researcher;
        int chicago = map->index_of("chicago");
        t.players[0].location = static_cast<std::int16_t>(map->index_of("paris"));
        t.players[0].hand = {static_cast<std::int16_t>(chicago)};
        t.players[1].location = static_cast<std::int16_t>(chicago);
        CHECK(count_type(legal_actions(t), ActionType::ShareGive) == 1);
        // non-researcher in the same spot cannot
        t.players[0].role = Role::Medic;
        CHECK(count_type(legal_actions(t), ActionType::ShareGive) == 0);
        // but can once co-located
        t.players[0].location = static_cast<std::int16_t>(chicago);
        CHECK(count_type(legal_actions(t), ActionType::ShareGive) == 1);
    }
}

TEST_CASE("treat disease removes one cube, or all when cured or medic") {
    auto map = standard_map();
    GameState s = new_game(standard_config(4, 4, 3), map);
    int loc = s.players[0].location;
    s.cities[loc].cubes[0] = 2;
    s.cube_supply[0] -= 2;

    SUBCASE("plain treat") {
        apply_action(s, Action::treat(Color::Blue));
        CHECK(s.cities[loc].cubes[0] == 1);
        CHECK(s.actions_remaining == 3);
    }
    SUBCASE("cured treat clears the city") {
        s.cured[0] = true;
        apply_action(s, Action::treat(Color::Blue));
        CHECK(s.cities[loc].cubes[0] == 0);
    }
    SUBCASE("medic treat clears the city") {
        s.current_player = 1;  // medic seat in the standard role order
        REQUIRE(s.players[1].role == Role::Medic);
        apply_action(s, Action::treat(Color::Blue));
        CHECK(s.cities[loc].cubes[0] == 0);
    }
    SUBCASE("medic entry sweeps cured colors for free") {
        s.cured[0] = true;
        s.current_player = 1;
        int nb = map->neighbors(loc)[0];
        s.cities[nb].cubes[0] = 3;
        s.cube_supply[0] -= 3;
        apply_action(s, Action::drive(nb));
        CHECK(s.cities[nb].cubes[0] == 0);
        CHECK(s.cities[loc].cubes[0] == 2);  // departure city untouched
    }
}

TEST_CASE("movement actions spend the right cards") {
    auto map = standard_map();
    GameState s = new_game(standard_config(2, 4, 11), map);
    int atl = map->atlanta();
    int paris = map->index_of("paris");
    int tokyo = map->index_of("tokyo");
    s.players[0].hand = {static_cast<std::int16_t>(paris), static_cast<std::int16_t>(atl)};

    SUBCASE("direct flight discards the destination card") {
        apply_action(s, Action::direct_flight(paris));
        CHECK(s.players[0].location == paris);
        CHECK_FALSE(s.players[0].holds(paris));
        CHECK(s.players[0].holds(atl));
    }
    SUBCASE("charter flight discards the origin card") {
        apply_action(s, Action::charter_flight(tokyo));
        CHECK(s.players[0].location == tokyo);
        CHECK(s.players[0].holds(paris));
        CHECK_FALSE(s.players[0].holds(atl));
    }
    SUBCASE("shuttle needs stations on both ends") {
        s.cities[paris].has_station = true;
        s.stations_placed += 1;
        apply_action(s, Action::shuttle_flight(paris));
        CHECK(s.players[0].location == paris);
        CHECK(s.players[0].hand.size() == 2);
        CHECK_THROWS_AS(apply_action(s, Action::shuttle_flight(tokyo)), rule_error);
    }
    SUBCASE("illegal drive is rejected") {
        CHECK_THROWS_AS(apply_action(s, Action::drive(tokyo)), rule_error);
    }
}

TEST_CASE("building the seventh station relocates the loneliest one") {
    auto map = standard_map();
    GameState s = new_game(standard_config(2, 4, 13), map);
    // plant six stations: atlanta plus five more
    std::vector<int> extra = {map->index_of("tokyo"),   map->index_of("paris"),
                              map->index_of("karachi"), map->index_of("lima"),
                              map->index_of("sydney")};
    for (int c : extra) s.cities[c].has_station = true;
    s.stations_placed = 6;
    int chicago = map->index_of("chicago");
    s.players[0].location = static_cast<std::int16_t>(chicago);
    s.players[0].hand = {static_cast<std::int16_t>(chicago)};
    int victim = relocation_station(s);
    apply_action(s, Action::build());
    CHECK(s.cities[chicago].has_station);
    CHECK_FALSE(s.cities[victim].has_station);
    CHECK(s.stations_placed == 6);
    int stations = 0;
    for (const auto& c : s.cities) stations += c.has_station ? 1 : 0;
    CHECK(stations == 6);
    // both pawns in/near atlanta: the far-flung station goes, not atlanta
    CHECK(victim != map->atlanta());
}

TEST_CASE("draw phase losses and epidemics") {
    auto map = standard_map();

    SUBCASE("fewer than two cards loses on the draw") {
        GameState s = new_game(standard_config(2, 4, 17), map);
        s.phase = Phase::Draw;
        s.player_deck.stacks.clear();
        s.player_deck.stacks.push_back({{PlayerCard::city_card(0)}, false});
        Rng rng(1);
        draw_phase(s, rng);
        CHECK(s.status == Status::Lost);
        CHECK(s.loss_cause == LossCause::PlayerDeck);
    }

    SUBCASE("epidemic seeds the bottom city and recycles the discard on top") {
        GameState s = new_game(standard_config(2, 4, 19), map);
        s.phase = Phase::Draw;
        // force the next draw: one epidemic, one city card
        PlayerSubStack top;
        top.cards = {PlayerCard::city_card(5), PlayerCard::epidemic()};
        top.has_epidemic = true;
        s.player_deck.stacks.insert(s.player_deck.stacks.begin(), top);
        std::int16_t bottom_city = s.infection_deck.stacks.back().cards.front();
        int before = s.cities[bottom_city].total_cubes();
        std::size_t discard_before = s.infection_deck.discard.size();
        Rng rng(2);
        draw_phase(s, rng);
        REQUIRE(s.ongoing());
        CHECK(s.epidemics_drawn == 1);
        CHECK(s.infection_rate() == 2);
        CHECK(s.cities[bottom_city].total_cubes() >= std::min(3, before + 1));
        CHECK(s.infection_deck.discard.empty());
        CHECK(s.infection_deck.stacks.front().cards.size() == discard_before + 1);
        CHECK(s.players[0].holds(5));
        CHECK(s.phase == Phase::Infect);
    }

    SUBCASE("infection rate steps at 3 and 5 epidemics") {
        GameState s = new_game(standard_config(2, 6, 23), map);
        CHECK(s.infection_rate() == 2);
        s.epidemics_drawn = 3;
        CHECK(s.infection_rate() == 3);
        s.epidemics_drawn = 5;
        CHECK(s.infection_rate() == 4);
    }

    SUBCASE("hand overflow is shed after both draws") {
        GameState s = new_game(standard_config(2, 4, 29), map);
        auto& hand = s.players[0].hand;
        hand.clear();
        for (int c = 0; c < 7; ++c) hand.push_back(static_cast<std::int16_t>(c));
        s.phase = Phase::Draw;
        Rng rng(3);
        draw_phase(s, rng);
        if (s.ongoing()) CHECK(hand.size() == kHandLimit);
    }
}

TEST_CASE("infection phase draws rate cards and passes the turn") {
    auto map = standard_map();
    GameState s = new_game(standard_config(3, 4, 31), map);
    s.phase = Phase::Infect;
    s.actions_remaining = 0;
    s.ops_flight_used = true;
    std::size_t discard_before = s.infection_deck.discard.size();
    Rng rng(4);
    infection_phase(s, rng);
    REQUIRE(s.ongoing());
    CHECK(s.infection_deck.discard.size() == discard_before + 2);
    CHECK(s.current_player == 1);
    CHECK(s.actions_remaining == 4);
    CHECK_FALSE(s.ops_flight_used);
    CHECK(s.phase == Phase::Actions);
    CHECK(s.turn == 2);
}

TEST_CASE("share knowledge moves cards and sheds overflow immediately") {
    auto map = standard_map();
    GameState s = new_game(standard_config(2, 4, 37), map);
    int atl = map->atlanta();
    s.players[0].hand = {static_cast<std::int16_t>(atl)};
    s.players[1].hand.clear();
    for (int c = 0; static_cast<int>(s.players[1].hand.size()) < kHandLimit; ++c)
        if (c != atl) s.players[1].hand.push_back(static_cast<std::int16_t>(c));
    std::size_t discard_before = s.player_deck.discard.size();
    apply_action(s, Action::share_give(atl, 1));
    CHECK(s.players[0].hand.empty());
    CHECK(s.players[1].hand.size() == kHandLimit);  // 8 shed to 7
    CHECK(s.player_deck.discard.size() == discard_before + 1);
}

TEST_CASE("win by curing all four") {
    auto map = standard_map();
    GameState s = new_game(standard_config(2, 4, 41), map);
    s.cured = {true, true, true, false};
    auto& hand = s.players[0].hand;
    hand.clear();
    for (int c = 0; c < map->size() && hand.size() < 5; ++c)
        if (map->color_of(c) == Color::Red) hand.push_back(static_cast<std::int16_t>(c));
    std::array<std::int16_t, 5> cards{};
    std::copy(hand.begin(), hand.end(), cards.begin());
    apply_action(s, Action::cure(Color::Red, cards.data(), 5));
    CHECK(s.status == Status::Won);
    CHECK(game_status(s).status == Status::Won);
}

TEST_CASE("random playouts keep every invariant") {
    Rng rng(9001);
    int games = 0;
    for (int players = 2; players <= 4; ++players)
        for (int epidemics = 4; epidemics <= 6; ++epidemics)
            for (int rep = 0; rep < 4; ++rep) {
                auto cfg = standard_config(players, epidemics, rng.next());
                Rng game_rng(cfg.rng_seed);
                auto rep_result = test_helpers::random_playout(cfg, game_rng);
                INFO(rep_result.detail);
                REQUIRE(rep_result.ok);
                ++games;
            }
    CHECK(games == 36);
}
