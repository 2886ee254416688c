#include "pandemic/rules.hpp"

#include <algorithm>
#include <numeric>

#include "pandemic/macro.hpp"

namespace pandemic {
namespace {

void lose(GameState& s, LossCause cause) {
    s.status = Status::Lost;
    s.loss_cause = cause;
}

PlayerCard pop_player_card(PlayerDeck& deck) {
    auto& top = deck.stacks.front();
    PlayerCard c = top.cards.back();
    top.cards.pop_back();
    if (c.kind == PlayerCard::Epidemic) top.has_epidemic = false;
    if (top.cards.empty()) deck.stacks.erase(deck.stacks.begin());
    return c;
}

std::int16_t pop_infection_top(InfectionDeck& deck) {
    auto& top = deck.stacks.front();
    std::int16_t c = top.cards.back();
    top.cards.pop_back();
    if (top.cards.empty()) deck.stacks.erase(deck.stacks.begin());
    return c;
}

std::int16_t pop_infection_bottom(InfectionDeck& deck) {
    auto& bottom = deck.stacks.back();
    std::int16_t c = bottom.cards.front();
    bottom.cards.erase(bottom.cards.begin());
    if (bottom.cards.empty()) deck.stacks.pop_back();
    return c;
}

void discard_from_hand(GameState& s, int player, int card) {
    auto& hand = s.players[player].hand;
    auto it = std::find(hand.begin(), hand.end(), static_cast<std::int16_t>(card));
    if (it == hand.end()) throw rule_error("card not in hand");
    hand.erase(it);
    s.player_deck.discard.push_back(PlayerCard::city_card(card));
}

// Medic stands on cubes of a cured color -> they come off for free.
void medic_auto_clear(GameState& s, int player) {
    auto& p = s.players[player];
    if (p.role != Role::Medic) return;
    auto& cubes = s.cities[p.location].cubes;
    for (int t = 0; t < kNumColors; ++t) {
        if (s.cured[t] && cubes[t] > 0) {
            s.cube_supply[t] += cubes[t];
            cubes[t] = 0;
        }
    }
}

void resolve_hand_overflow(GameState& s, int player) {
    auto& hand = s.players[player].hand;
    if (static_cast<int>(hand.size()) <= kHandLimit) return;
    auto drops = select_discards(s, player, static_cast<int>(hand.size()) - kHandLimit);
    for (std::int16_t card : drops) discard_from_hand(s, player, card);
}

void resolve_epidemic(GameState& s, Rng& rng) {
    s.epidemics_drawn += 1;
    auto& inf = s.infection_deck;
    if (!inf.stacks.empty()) {
        std::int16_t city = pop_infection_bottom(inf);
        infect_city(s, city, s.map->color_of(city), 3);
        inf.discard.push_back(city);
        if (!s.ongoing()) return;
    }
    if (!inf.discard.empty()) {
        rng.shuffle(inf.discard);
        InfectionSubStack recycled;
        recycled.cards = std::move(inf.discard);
        inf.discard.clear();
        inf.stacks.insert(inf.stacks.begin(), std::move(recycled));
    }
}

bool valid_city(const GameState& s, int c) {
    return c >= 0 && c < static_cast<int>(s.cities.size());
}

}  // namespace

void infect_city(GameState& s, int city, Color color, int count) {
    if (!s.ongoing()) return;
    const int t = static_cast<int>(color);
    std::vector<char> outbroken(s.cities.size(), 0);
    std::vector<int> chain;

    auto place = [&](int c) {
        if (s.cube_supply[t] == 0) {
            lose(s, LossCause::Cubes);
            return false;
        }
        s.cube_supply[t] -= 1;
        s.cities[c].cubes[t] += 1;
        return true;
    };

    for (int k = 0; k < count; ++k) {
        if (outbroken[city]) continue;  // capped within this card's resolution
        if (s.cities[city].cubes[t] == 3) {
            outbroken[city] = 1;
            chain.push_back(city);
        } else if (!place(city)) {
            return;
        }
        for (std::size_t qi = 0; qi < chain.size(); ++qi) {
            int c = chain[qi];
            s.outbreak_counter += 1;
            if (s.outbreak_counter >= kMaxOutbreaks) {
                s.outbreak_counter = kMaxOutbreaks;
                lose(s, LossCause::Outbreaks);
                return;
            }
            for (int n : s.map->neighbors(c)) {
                if (outbroken[n]) continue;
                if (s.cities[n].cubes[t] == 3) {
                    outbroken[n] = 1;
                    chain.push_back(n);
                } else if (!place(n)) {
                    return;
                }
            }
        }
        chain.clear();
    }
}

GameState new_game(const GameConfig& config, Rng& rng, MapPtr map) {
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    if (!map) throw config_error("config: no map");

    GameState s;
    s.map = std::move(map);
    s.config = config;
    s.cities.assign(s.map->size(), CityState{});
    s.cube_supply.fill(kCubesPerColor);

    // infection deck: one full shuffled sub-stack, then seed nine cities 3/3/3/2/2/2/1/1/1
    std::vector<std::int16_t> infection(s.map->size());
    std::iota(infection.begin(), infection.end(), std::int16_t{0});
    rng.shuffle(infection);
    s.infection_deck.stacks.push_back({std::move(infection)});
    for (int i = 0; i < 9 && s.infection_deck.cards_remaining() > 0; ++i) {
        int cubes = i < 3 ? 3 : i < 6 ? 2 : 1;
        std::int16_t city = pop_infection_top(s.infection_deck);
        infect_city(s, city, s.map->color_of(city), cubes);
        s.infection_deck.discard.push_back(city);
    }

    int atl = s.map->atlanta();
    s.players.resize(config.player_count);
    for (int i = 0; i < config.player_count; ++i) {
        s.players[i].role = config.roles[i];
        s.players[i].location = static_cast<std::int16_t>(atl);
    }
    s.cities[atl].has_station = true;
    s.stations_placed = 1;

    // deal 4/3/2 cards per player for 2/3/4 players
    std::vector<std::int16_t> city_cards(s.map->size());
    std::iota(city_cards.begin(), city_cards.end(), std::int16_t{0});
    rng.shuffle(city_cards);
    int per_player = 6 - config.player_count;
    for (int p = 0; p < config.player_count; ++p)
        for (int j = 0; j < per_player && !city_cards.empty(); ++j) {
            s.players[p].hand.push_back(city_cards.back());
            city_cards.pop_back();
        }

    // split the rest into one sub-stack per epidemic, shuffle an epidemic into each
    int stacks = config.epidemic_count;
    int base = static_cast<int>(city_cards.size()) / stacks;
    int extra = static_cast<int>(city_cards.size()) % stacks;
    std::size_t pos = 0;
    for (int k = 0; k < stacks; ++k) {
        int size = base + (k < extra ? 1 : 0);
        PlayerSubStack st;
        st.has_epidemic = true;
        st.cards.reserve(size + 1);
        for (int j = 0; j < size; ++j)
            st.cards.push_back(PlayerCard::city_card(city_cards[pos++]));
        st.cards.push_back(PlayerCard::epidemic());
        rng.shuffle(st.cards);
        s.player_deck.stacks.push_back(std::move(st));
    }

    s.current_player = 0;
    s.actions_remaining = 4;
    s.phase = Phase::Actions;
    s.turn = 1;
    return s;
}

bool is_action_legal(const GameState& s, const Action& a) {
    if (s.phase != Phase::Actions || !s.ongoing()) return false;
    const PlayerState& me = s.current();
    const int loc = me.location;
    switch (a.type) {
        case ActionType::DriveFerry:
            return valid_city(s, a.city) && s.map->adjacent(loc, a.city);
        case ActionType::DirectFlight:
            return valid_city(s, a.card) && a.card != loc && me.holds(a.card);
        case ActionType::CharterFlight:
            return valid_city(s, a.city) && a.city != loc && me.holds(loc);
        case ActionType::ShuttleFlight:
            return valid_city(s, a.city) && a.city != loc && s.cities[loc].has_station &&
                   s.cities[a.city].has_station;
        case ActionType::OpsExpertFlight:
            return me.role == Role::OperationsExpert && !s.ops_flight_used &&
                   s.cities[loc].has_station && valid_city(s, a.city) && a.city != loc &&
                   valid_city(s, a.card) && me.holds(a.card);
        case ActionType::BuildStation:
            return !s.cities[loc].has_station &&
                   (me.role == Role::OperationsExpert || me.holds(loc));
        case ActionType::TreatDisease:
            return a.color >= 0 && a.color < kNumColors && s.cities[loc].cubes[a.color] > 0;
        case ActionType::ShareGive: {
            int q = a.other_player;
            if (q < 0 || q >= static_cast<int>(s.players.size()) || q == s.current_player)
                return false;
            if (!valid_city(s, a.card) || !me.holds(a.card)) return false;
            if (s.players[q].location != a.card) return false;
            return loc == a.card || me.role == Role::Researcher;
        }
        case ActionType::ShareTake: {
            int q = a.other_player;
            if (q < 0 || q >= static_cast<int>(s.players.size()) || q == s.current_player)
                return false;
            const PlayerState& other = s.players[q];
            if (!valid_city(s, a.card) || !other.holds(a.card)) return false;
            if (loc != a.card) return false;
            return other.location == a.card || other.role == Role::Researcher;
        }
        case ActionType::CureDisease: {
            if (a.color < 0 || a.color >= kNumColors || s.cured[a.color]) return false;
            if (!s.cities[loc].has_station) return false;
            if (a.cure_count != cure_threshold(me.role)) return false;
            for (int i = 0; i < a.cure_count; ++i) {
                std::int16_t card = a.cure_cards[i];
                if (!valid_city(s, card) || !me.holds(card)) return false;
                if (s.map->color_of(card) != static_cast<Color>(a.color)) return false;
                for (int j = 0; j < i; ++j)
                    if (a.cure_cards[j] == card) return false;
            }
            return true;
        }
        case ActionType::Wait:
            return true;
        case ActionType::Discard:
            return false;  // forced discards are resolved inside the phases
    }
    return false;
}

std::vector<Action> legal_actions(const GameState& s) {
    if (s.phase != Phase::Actions || !s.ongoing())
        throw rule_error("legal_actions: not in the actions phase");
    std::vector<Action> out;
    const PlayerState& me = s.current();
    const int loc = me.location;
    const int n = static_cast<int>(s.cities.size());

    for (int to : s.map->neighbors(loc)) out.push_back(Action::drive(to));

    std::vector<std::int16_t> hand = me.hand;
    std::sort(hand.begin(), hand.end());
    for (std::int16_t c : hand)
        if (c != loc) out.push_back(Action::direct_flight(c));

    if (me.holds(loc))
        for (int to = 0; to < n; ++to)
            if (to != loc) out.push_back(Action::charter_flight(to));

    if (s.cities[loc].has_station)
        for (int to = 0; to < n; ++to)
            if (to != loc && s.cities[to].has_station)
                out.push_back(Action::shuttle_flight(to));

    if (me.role == Role::OperationsExpert && !s.ops_flight_used && s.cities[loc].has_station)
        for (std::int16_t c : hand)
            for (int to = 0; to < n; ++to)
                if (to != loc) out.push_back(Action::ops_flight(c, to));

    if (!s.cities[loc].has_station && (me.role == Role::OperationsExpert || me.holds(loc)))
        out.push_back(Action::build());

    for (int t = 0; t < kNumColors; ++t)
        if (s.cities[loc].cubes[t] > 0) out.push_back(Action::treat(static_cast<Color>(t)));

    for (std::int16_t c : hand)
        for (int q = 0; q < static_cast<int>(s.players.size()); ++q) {
            Action give = Action::share_give(c, q);
            if (is_action_legal(s, give)) out.push_back(give);
        }
    for (int q = 0; q < static_cast<int>(s.players.size()); ++q) {
        if (q == s.current_player) continue;
        std::vector<std::int16_t> theirs = s.players[q].hand;
        std::sort(theirs.begin(), theirs.end());
        for (std::int16_t c : theirs) {
            Action take = Action::share_take(c, q);
            if (is_action_legal(s, take)) out.push_back(take);
        }
    }

    if (s.cities[loc].has_station) {
        int need = cure_threshold(me.role);
        for (int t = 0; t < kNumColors; ++t) {
            if (s.cured[t]) continue;
            std::vector<std::int16_t> colored;
            for (std::int16_t c : hand)
                if (s.map->color_of(c) == static_cast<Color>(t)) colored.push_back(c);
            if (static_cast<int>(colored.size()) < need) continue;
            std::vector<int> idx(need);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                std::array<std::int16_t, 5> pick{};
                for (int i = 0; i < need; ++i) pick[i] = colored[idx[i]];
                out.push_back(Action::cure(static_cast<Color>(t), pick.data(), need));
                int i = need - 1;
                while (i >= 0 && idx[i] == static_cast<int>(colored.size()) - need + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < need; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }

    out.push_back(Action::wait());
    return out;
}

void apply_action(GameState& s, const Action& a) {
    if (s.phase != Phase::Actions || !s.ongoing())
        throw rule_error("apply_action: not in the actions phase");
    if (!is_action_legal(s, a))
        throw rule_error("illegal action: " + action_to_string(a, *s.map));
    PlayerState& me = s.current();
    switch (a.type) {
        case ActionType::DriveFerry:
            me.location = a.city;
            medic_auto_clear(s, s.current_player);
            break;
        case ActionType::DirectFlight:
            discard_from_hand(s, s.current_player, a.card);
            me.location = a.card;
            medic_auto_clear(s, s.current_player);
            break;
        case ActionType::CharterFlight:
            discard_from_hand(s, s.current_player, me.location);
            me.location = a.city;
            medic_auto_clear(s, s.current_player);
            break;
        case ActionType::ShuttleFlight:
            me.location = a.city;
            medic_auto_clear(s, s.current_player);
            break;
        case ActionType::OpsExpertFlight:
            discard_from_hand(s, s.current_player, a.card);
            me.location = a.city;
            s.ops_flight_used = true;
            medic_auto_clear(s, s.current_player);
            break;
        case ActionType::BuildStation:
            if (me.role != Role::OperationsExpert)
                discard_from_hand(s, s.current_player, me.location);
            if (s.stations_placed == kMaxStations)
                s.cities[relocation_station(s)].has_station = false;
            else
                s.stations_placed += 1;
            s.cities[me.location].has_station = true;
            break;
        case ActionType::TreatDisease: {
            auto& cubes = s.cities[me.location].cubes[a.color];
            int removed = (s.cured[a.color] || me.role == Role::Medic) ? cubes : 1;
            cubes = static_cast<std::uint8_t>(cubes - removed);
            s.cube_supply[a.color] += static_cast<std::uint8_t>(removed);
            break;
        }
        case ActionType::ShareGive: {
            auto& hand = me.hand;
            hand.erase(std::find(hand.begin(), hand.end(), a.card));
            s.players[a.other_player].hand.push_back(a.card);
            resolve_hand_overflow(s, a.other_player);
            break;
        }
        case ActionType::ShareTake: {
            auto& theirs = s.players[a.other_player].hand;
            theirs.erase(std::find(theirs.begin(), theirs.end(), a.card));
            me.hand.push_back(a.card);
            resolve_hand_overflow(s, s.current_player);
            break;
        }
        case ActionType::CureDisease: {
            for (int i = 0; i < a.cure_count; ++i)
                discard_from_hand(s, s.current_player, a.cure_cards[i]);
            s.cured[a.color] = true;
            for (int p = 0; p < static_cast<int>(s.players.size()); ++p)
                medic_auto_clear(s, p);
            if (s.cured_count() == kNumColors) s.status = Status::Won;
            break;
        }
        case ActionType::Wait:
            break;
        case ActionType::Discard:
            throw rule_error("discard is not a turn action");
    }
    s.actions_remaining -= 1;
    if (s.ongoing() && s.actions_remaining == 0) s.phase = Phase::Draw;
}

void draw_phase(GameState& s, Rng& rng) {
    if (s.phase != Phase::Draw) throw rule_error("draw_phase: wrong phase");
    if (!s.ongoing()) return;
    if (s.player_deck.cards_remaining() < 2) {
        lose(s, LossCause::PlayerDeck);
        return;
    }
    for (int i = 0; i < 2; ++i) {  // resolved strictly left to right
        PlayerCard c = pop_player_card(s.player_deck);
        if (c.kind == PlayerCard::Epidemic) {
            resolve_epidemic(s, rng);
            if (!s.ongoing()) return;
        } else {
            s.current().hand.push_back(c.city);
        }
    }
    resolve_hand_overflow(s, s.current_player);
    s.phase = Phase::Infect;
}

void infection_phase(GameState& s, Rng& rng) {
    if (s.phase != Phase::Infect) throw rule_error("infection_phase: wrong phase");
    if (!s.ongoing()) return;
    int rate = s.infection_rate();
    for (int i = 0; i < rate && !s.infection_deck.stacks.empty(); ++i) {
        std::int16_t city = pop_infection_top(s.infection_deck);
        infect_city(s, city, s.map->color_of(city), 1);
        s.infection_deck.discard.push_back(city);
        if (!s.ongoing()) return;
    }
    s.current_player = (s.current_player + 1) % static_cast<int>(s.players.size());
    s.actions_remaining = 4;
    s.ops_flight_used = false;
    s.phase = Phase::Actions;
    s.turn += 1;
}

GameStatus game_status(const GameState& s) {
    return {s.status, s.loss_cause};
}

std::vector<int> drive_distances(const CityMap& map, int from) {
    std::vector<int> dist(map.size(), -1);
    std::vector<int> frontier{from};
    dist[from] = 0;
    for (std::size_t qi = 0; qi < frontier.size(); ++qi) {
        int c = frontier[qi];
        for (int n : map.neighbors(c))
            if (dist[n] < 0) {
                dist[n] = dist[c] + 1;
                frontier.push_back(n);
            }
    }
    return dist;
}

int relocation_station(const GameState& s) {
    std::vector<int> nearest(s.cities.size(), -1);
    for (const auto& p : s.players) {
        auto d = drive_distances(*s.map, p.location);
        for (std::size_t c = 0; c < nearest.size(); ++c)
            if (nearest[c] < 0 || (d[c] >= 0 && d[c] < nearest[c])) nearest[c] = d[c];
    }
    int pick = -1;
    for (std::size_t c = 0; c < s.cities.size(); ++c) {
        if (!s.cities[c].has_station) continue;
        if (pick < 0 || nearest[c] > nearest[pick]) pick = static_cast<int>(c);
    }
    if (pick < 0) throw rule_error("no station to relocate");
    return pick;
}

}  // namespace pandemic
