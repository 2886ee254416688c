#include "pandemic/macro.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pandemic {

double player_cure_ability(const GameState& s, int player, Color t) {
    const auto& p = s.players[player];
    int h = p.count_color(*s.map, t);
    return std::min(1.0, static_cast<double>(h) / cure_threshold(p.role));
}

double cure_ability(const GameState& s, Color t) {
    if (s.cured[static_cast<int>(t)]) return 1.0;
    double best = 0.0;
    for (int p = 0; p < static_cast<int>(s.players.size()); ++p)
        best = std::max(best, player_cure_ability(s, p, t));
    return best;
}

bool can_spend_card(const GameState& s, int player, int card) {
    Color t = s.map->color_of(card);
    if (s.cured[static_cast<int>(t)]) return true;
    const auto& p = s.players[player];
    int h = p.count_color(*s.map, t);
    double mine_after = std::min(1.0, static_cast<double>(h - 1) / cure_threshold(p.role));
    double best_after = mine_after;
    for (int q = 0; q < static_cast<int>(s.players.size()); ++q)
        if (q != player) best_after = std::max(best_after, player_cure_ability(s, q, t));
    return best_after >= cure_ability(s, t);
}

const char* macro_kind_name(MacroKind k) {
    switch (k) {
        case MacroKind::Treat: return "treat";
        case MacroKind::Cure: return "cure";
        case MacroKind::Build: return "build";
        case MacroKind::ShareGive: return "share-give";
        case MacroKind::ShareTake: return "share-take";
        case MacroKind::ShareWait: return "share-wait";
        case MacroKind::WalkAway: return "walk-away";
    }
    return "?";
}

std::vector<Action> Macro::actions() const {
    std::vector<Action> out = move.steps;
    if (terminal) out.push_back(*terminal);
    for (int i = 0; i < waits; ++i) out.push_back(Action::wait());
    return out;
}

std::vector<MovePlan> movement_costs(const GameState& s, int player,
                                     const std::vector<std::int16_t>& banned,
                                     bool unrestricted) {
    const CityMap& map = *s.map;
    const int n = map.size();
    const auto& p = s.players[player];
    const int hand_n = static_cast<int>(p.hand.size());

    std::vector<int> order(hand_n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return p.hand[a] < p.hand[b]; });

    std::vector<char> spendable(hand_n, 0);
    for (int i = 0; i < hand_n; ++i) {
        std::int16_t card = p.hand[i];
        bool ok = std::find(banned.begin(), banned.end(), card) == banned.end() &&
                  (unrestricted || can_spend_card(s, player, card));
        spendable[i] = ok ? 1 : 0;
    }

    const bool ops_role = p.role == Role::OperationsExpert;
    const bool ops_spent = player == s.current_player && s.ops_flight_used;
    const int mask_n = 1 << hand_n;
    const int node_n = n * mask_n * 2;
    auto node_id = [&](int city, int mask, int ops) { return (city * mask_n + mask) * 2 + ops; };

    std::vector<int> dist(node_n, -1);
    std::vector<int> prev(node_n, -1);
    std::vector<Action> via(node_n);
    std::vector<int> frontier;
    frontier.reserve(256);

    std::vector<int> stations;
    for (int c = 0; c < n; ++c)
        if (s.cities[c].has_station) stations.push_back(c);

    int start = node_id(p.location, 0, 0);
    dist[start] = 0;
    frontier.push_back(start);

    for (std::size_t qi = 0; qi < frontier.size(); ++qi) {
        const int id = frontier[qi];
        const int ops = id & 1;
        const int tmp = id >> 1;
        const int mask = tmp & (mask_n - 1);
        const int city = tmp / mask_n;
        const int d = dist[id];

        auto push = [&](int nc, int nmask, int nops, Action a) {
            int nid = node_id(nc, nmask, nops);
            if (dist[nid] >= 0) return;
            dist[nid] = d + 1;
            prev[nid] = id;
            via[nid] = a;
            frontier.push_back(nid);
        };

        for (int nb : map.neighbors(city)) push(nb, mask, ops, Action::drive(nb));
        if (s.cities[city].has_station)
            for (int st : stations)
                if (st != city) push(st, mask, ops, Action::shuttle_flight(st));
        for (int oi : order) {
            if (!spendable[oi] || ((mask >> oi) & 1)) continue;
            int card = p.hand[oi];
            if (card != city)
                push(card, mask | (1 << oi), ops, Action::direct_flight(card));
        }
        for (int oi : order) {
            if (!spendable[oi] || ((mask >> oi) & 1)) continue;
            if (p.hand[oi] != city) continue;
            for (int to = 0; to < n; ++to)
                if (to != city) push(to, mask | (1 << oi), ops, Action::charter_flight(to));
            break;  // at most one hand card names this city
        }
        if (ops_role && !ops_spent && ops == 0 && s.cities[city].has_station) {
            for (int oi : order) {
                if (!spendable[oi] || ((mask >> oi) & 1)) continue;
                int card = p.hand[oi];
                for (int to = 0; to < n; ++to)
                    if (to != city) push(to, mask | (1 << oi), 1, Action::ops_flight(card, to));
            }
        }
    }

    // spent-card list per mask, sorted, shared across cities
    std::vector<std::vector<std::int16_t>> mask_spent(mask_n);
    for (int m = 1; m < mask_n; ++m) {
        for (int i = 0; i < hand_n; ++i)
            if ((m >> i) & 1) mask_spent[m].push_back(p.hand[i]);
        std::sort(mask_spent[m].begin(), mask_spent[m].end());
    }

    std::vector<MovePlan> out(n);
    for (int city = 0; city < n; ++city) {
        int best = -1;
        for (int mask = 0; mask < mask_n; ++mask)
            for (int ops = 0; ops < 2; ++ops) {
                int id = node_id(city, mask, ops);
                if (dist[id] < 0) continue;
                if (best < 0) {
                    best = id;
                    continue;
                }
                const auto& cur = mask_spent[(best >> 1) & (mask_n - 1)];
                const auto& cand = mask_spent[mask];
                auto key = [&](int nid, const std::vector<std::int16_t>& sp) {
                    return std::tuple<int, std::size_t, const std::vector<std::int16_t>&, int>(
                        dist[nid], sp.size(), sp, nid & 1);
                };
                if (key(id, cand) < key(best, cur)) best = id;
            }
        if (best < 0) continue;  // unreachable: cost stays -1
        MovePlan plan;
        plan.cost = dist[best];
        plan.spent = mask_spent[(best >> 1) & (mask_n - 1)];
        for (int id = best; id != start; id = prev[id]) plan.steps.push_back(via[id]);
        std::reverse(plan.steps.begin(), plan.steps.end());
        out[city] = std::move(plan);
    }
    return out;
}

int plan_destination(const MovePlan& plan) {
    if (plan.steps.empty()) return -1;
    const Action& last = plan.steps.back();
    return last.type == ActionType::DirectFlight ? last.card : last.city;
}

namespace {

// reuse the default plan when it already avoids `card`, else replan with it banned
MovePlan plan_avoiding(const GameState& s, int player, const std::vector<MovePlan>& plans,
                       int dest, std::int16_t card) {
    const MovePlan& base = plans[dest];
    if (base.cost < 0) return base;
    if (std::find(base.spent.begin(), base.spent.end(), card) == base.spent.end()) return base;
    return movement_costs(s, player, {card})[dest];
}

}  // namespace

std::vector<Macro> generate_macros(const GameState& s, int budget) {
    if (budget < 1) throw std::invalid_argument("generate_macros: budget must be >= 1");
    const int me = s.current_player;
    const auto& p = s.players[me];
    const CityMap& map = *s.map;
    const int n = map.size();
    std::vector<Macro> out;

    auto plans = movement_costs(s, me);

    std::vector<std::int16_t> hand = p.hand;
    std::sort(hand.begin(), hand.end());

    // treat: reach any city holding cubes with one action to spare
    for (int c = 0; c < n; ++c) {
        if (plans[c].cost < 0 || plans[c].cost > budget - 1) continue;
        for (int t = 0; t < kNumColors; ++t) {
            if (s.cities[c].cubes[t] == 0) continue;
            // entering medic clears cured colors for free; the treat would fizzle
            if (p.role == Role::Medic && s.cured[t] && plans[c].cost > 0) continue;
            Macro m;
            m.kind = MacroKind::Treat;
            m.move = plans[c];
            m.terminal = Action::treat(static_cast<Color>(t));
            out.push_back(std::move(m));
        }
    }

    // cure: nearest station, cheapest first, ties to the lowest city id
    const int need = cure_threshold(p.role);
    for (int t = 0; t < kNumColors; ++t) {
        if (s.cured[t] || p.count_color(map, static_cast<Color>(t)) < need) continue;
        std::vector<int> candidates;
        for (int c = 0; c < n; ++c)
            if (s.cities[c].has_station && plans[c].cost >= 0 && plans[c].cost <= budget - 1)
                candidates.push_back(c);
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](int a, int b) { return plans[a].cost < plans[b].cost; });
        for (int c : candidates) {
            std::vector<std::int16_t> usable;
            for (std::int16_t card : hand)
                if (map.color_of(card) == static_cast<Color>(t) &&
                    std::find(plans[c].spent.begin(), plans[c].spent.end(), card) ==
                        plans[c].spent.end())
                    usable.push_back(card);
            if (static_cast<int>(usable.size()) < need) continue;
            Macro m;
            m.kind = MacroKind::Cure;
            m.move = plans[c];
            m.terminal = Action::cure(static_cast<Color>(t), usable.data(), need);
            out.push_back(std::move(m));
            break;
        }
    }

    // build: ops expert anywhere unbuilt, others where a held card names the city
    if (p.role == Role::OperationsExpert) {
        for (int c = 0; c < n; ++c) {
            if (s.cities[c].has_station) continue;
            if (plans[c].cost < 0 || plans[c].cost > budget - 1) continue;
            Macro m;
            m.kind = MacroKind::Build;
            m.move = plans[c];
            m.terminal = Action::build();
            out.push_back(std::move(m));
        }
    } else {
        for (std::int16_t card : hand) {
            int c = card;
            if (s.cities[c].has_station) continue;
            MovePlan plan = plan_avoiding(s, me, plans, c, card);
            if (plan.cost < 0 || plan.cost > budget - 1) continue;
            Macro m;
            m.kind = MacroKind::Build;
            m.move = std::move(plan);
            m.terminal = Action::build();
            out.push_back(std::move(m));
        }
    }

    // share: meet at the card's city and exchange now, or park there and wait
    for (std::int16_t card : hand) {
        int dest = card;
        std::vector<int> receivers;
        for (int q = 0; q < static_cast<int>(s.players.size()); ++q)
            if (q != me && s.players[q].location == dest) receivers.push_back(q);
        if (p.role == Role::Researcher) {
            for (int q : receivers) {
                Macro m;
                m.kind = MacroKind::ShareGive;
                m.move.cost = 0;
                m.terminal = Action::share_give(card, q);
                out.push_back(std::move(m));
            }
            continue;  // a researcher never needs to position for a give
        }
        MovePlan plan = plan_avoiding(s, me, plans, dest, card);
        if (plan.cost < 0) continue;
        if (!receivers.empty()) {
            if (plan.cost > budget - 1) continue;
            for (int q : receivers) {
                Macro m;
                m.kind = MacroKind::ShareGive;
                m.move = plan;
                m.terminal = Action::share_give(card, q);
                out.push_back(std::move(m));
            }
        } else if (plan.cost <= budget) {
            Macro m;
            m.kind = MacroKind::ShareWait;
            m.move = std::move(plan);
            m.waits = budget - m.move.cost;
            out.push_back(std::move(m));
        }
    }
    for (int q = 0; q < static_cast<int>(s.players.size()); ++q) {
        if (q == me) continue;
        std::vector<std::int16_t> theirs = s.players[q].hand;
        std::sort(theirs.begin(), theirs.end());
        for (std::int16_t card : theirs) {
            int dest = card;
            if (plans[dest].cost < 0) continue;
            bool immediate = s.players[q].location == dest || s.players[q].role == Role::Researcher;
            if (immediate) {
                if (plans[dest].cost > budget - 1) continue;
                Macro m;
                m.kind = MacroKind::ShareTake;
                m.move = plans[dest];
                m.terminal = Action::share_take(card, q);
                out.push_back(std::move(m));
            } else if (plans[dest].cost <= budget) {
                Macro m;
                m.kind = MacroKind::ShareWait;
                m.move = plans[dest];
                m.waits = budget - m.move.cost;
                out.push_back(std::move(m));
            }
        }
    }

    // walk away: spend the whole budget on movement, any cards allowed
    auto free_plans = movement_costs(s, me, {}, true);
    for (int c = 0; c < n; ++c) {
        if (free_plans[c].cost != budget) continue;
        Macro m;
        m.kind = MacroKind::WalkAway;
        m.move = free_plans[c];
        out.push_back(std::move(m));
    }

    if (out.empty()) {
        Macro idle;
        idle.kind = MacroKind::WalkAway;
        idle.move.cost = 0;
        idle.waits = budget;
        out.push_back(std::move(idle));
    }
    return out;
}

std::vector<std::int16_t> select_discards(const GameState& s, int player, int count) {
    const auto& p = s.players[player];
    const CityMap& map = *s.map;
    const int hand_n = static_cast<int>(p.hand.size());
    if (count < 0 || count > hand_n)
        throw std::invalid_argument("select_discards: bad count");
    if (count == 0) return {};

    std::vector<std::int16_t> hand = p.hand;
    std::sort(hand.begin(), hand.end());

    std::array<int, kNumColors> mine{};
    for (std::int16_t c : hand) mine[static_cast<int>(map.color_of(c))] += 1;
    std::array<double, kNumColors> others_best{};
    for (int q = 0; q < static_cast<int>(s.players.size()); ++q) {
        if (q == player) continue;
        for (int t = 0; t < kNumColors; ++t)
            others_best[t] = std::max(others_best[t], player_cure_ability(s, q, static_cast<Color>(t)));
    }
    const int cd = cure_threshold(p.role);

    auto ability_sum = [&](const std::array<int, kNumColors>& removed) {
        double sum = 0.0;
        for (int t = 0; t < kNumColors; ++t) {
            if (s.cured[t]) {
                sum += 1.0;
                continue;
            }
            double a = std::min(1.0, static_cast<double>(mine[t] - removed[t]) / cd);
            sum += std::max(others_best[t], a);
        }
        return sum;
    };

    // preference key: drop cards from heavily duplicated colors, then low ids
    auto card_key = [&](std::int16_t c) {
        return std::pair<int, int>(-mine[static_cast<int>(map.color_of(c))], c);
    };

    std::vector<int> idx(count);
    std::iota(idx.begin(), idx.end(), 0);
    double best_score = -1.0;
    std::vector<std::pair<int, int>> best_key;
    std::vector<std::int16_t> best_set;
    while (true) {
        std::array<int, kNumColors> removed{};
        std::vector<std::int16_t> set(count);
        for (int i = 0; i < count; ++i) {
            set[i] = hand[idx[i]];
            removed[static_cast<int>(map.color_of(set[i]))] += 1;
        }
        double score = ability_sum(removed);
        std::vector<std::pair<int, int>> key(count);
        for (int i = 0; i < count; ++i) key[i] = card_key(set[i]);
        std::sort(key.begin(), key.end());
        if (score > best_score || (score == best_score && key < best_key)) {
            best_score = score;
            best_key = std::move(key);
            best_set = std::move(set);
        }
        int i = count - 1;
        while (i >= 0 && idx[i] == hand_n - count + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < count; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best_set;
}

std::string macro_to_string(const Macro& m, const CityMap& map) {
    std::string s = macro_kind_name(m.kind);
    if (!m.move.steps.empty()) {
        const Action& last = m.move.steps.back();
        int dest = last.type == ActionType::DirectFlight ? last.card : last.city;
        s += " via " + std::to_string(m.move.cost) + " moves to " + map.city(dest).id;
    }
    if (m.terminal) s += " [" + action_to_string(*m.terminal, map) + "]";
    if (m.waits > 0) s += " +" + std::to_string(m.waits) + "w";
    return s;
}

}  // namespace pandemic
