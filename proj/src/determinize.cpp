#include "pandemic/determinize.hpp"

#include <stdexcept>

namespace pandemic {

GameState determinize(const GameState& src, Rng& rng) {
    GameState s = src;

    // Pool every face-down city card, shuffle, re-deal into the same stack
    // shapes. Epidemics re-enter their own stack at a uniform position.
    std::vector<PlayerCard> pool;
    for (const PlayerSubStack& st : s.player_deck.stacks)
        for (const PlayerCard& c : st.cards)
            if (c.kind == PlayerCard::CityCard) pool.push_back(c);
    rng.shuffle(pool);

    std::size_t pos = 0;
    for (PlayerSubStack& st : s.player_deck.stacks) {
        std::size_t n_city = st.cards.size() - (st.has_epidemic ? 1 : 0);
        st.cards.assign(pool.begin() + pos, pool.begin() + pos + n_city);
        pos += n_city;
        if (st.has_epidemic) {
            std::size_t at = rng.below(static_cast<std::uint32_t>(n_city + 1));
            st.cards.insert(st.cards.begin() + static_cast<std::ptrdiff_t>(at),
                            PlayerCard::epidemic());
        }
    }

    // Infection sub-stacks keep their card sets and relative order; only the
    // order within each sub-stack is unknown.
    for (InfectionSubStack& st : s.infection_deck.stacks) rng.shuffle(st.cards);
    return s;
}

namespace {

// Cards a re-route must not spend because the macro's terminal action needs
// them in hand.
std::vector<std::int16_t> terminal_card_needs(const GameState& s, const Macro& m) {
    std::vector<std::int16_t> banned;
    if (!m.terminal) return banned;
    const Action& t = *m.terminal;
    if (t.type == ActionType::ShareGive) banned.push_back(t.card);
    if (t.type == ActionType::CureDisease)
        banned.insert(banned.end(), t.cure_cards.begin(), t.cure_cards.begin() + t.cure_count);
    if (t.type == ActionType::BuildStation &&
        s.current().role != Role::OperationsExpert) {
        int dest = plan_destination(m.move);
        if (dest >= 0) banned.push_back(static_cast<std::int16_t>(dest));
    }
    return banned;
}

bool can_act(const GameState& s) {
    return s.ongoing() && s.phase == Phase::Actions && s.actions_remaining > 0;
}

}  // namespace

void execute_macro(GameState& s, const Macro& m,
                   std::array<long long, kNumActionTypes>* counts) {
    auto act = [&](const Action& a) {
        if (counts) (*counts)[static_cast<int>(a.type)] += 1;
        apply_action(s, a);
    };
    for (std::size_t i = 0; i < m.move.steps.size(); ++i) {
        if (!can_act(s)) return;
        const Action& leg = m.move.steps[i];
        if (is_action_legal(s, leg)) {
            act(leg);
            continue;
        }
        // The planned leg no longer works in this world; take the cheapest
        // route to where the macro was headed, or give the macro up.
        int dest = plan_destination(m.move);
        int budget = s.actions_remaining - (m.terminal ? 1 : 0);
        bool rerouted = false;
        if (dest >= 0 && budget >= 0) {
            auto plans = movement_costs(s, s.current_player, terminal_card_needs(s, m),
                                        m.kind == MacroKind::WalkAway);
            if (plans[dest].cost >= 0 && plans[dest].cost <= budget) {
                for (const Action& a : plans[dest].steps) {
                    if (!can_act(s)) break;
                    act(a);
                }
                rerouted = true;
            }
        }
        if (!rerouted) return;  // drop the rest of the macro
        break;
    }
    if (m.terminal) {
        if (!can_act(s)) return;
        if (is_action_legal(s, *m.terminal)) act(*m.terminal);
        else act(Action::wait());  // the action point is wasted
    }
    for (int i = 0; i < m.waits; ++i) {
        if (!can_act(s)) return;
        act(Action::wait());
    }
}

void finish_turn(GameState& s, Rng& rng) {
    while (can_act(s)) apply_action(s, Action::wait());
    if (s.ongoing() && s.phase == Phase::Draw) draw_phase(s, rng);
    if (s.ongoing() && s.phase == Phase::Infect) infection_phase(s, rng);
}

void run_gene(GameState& s, const Gene& g, Rng& rng) {
    for (const Macro& m : g.macros) {
        if (!can_act(s)) break;
        execute_macro(s, m);
    }
    finish_turn(s, rng);
}

GameState rollout(const GameState& start, const Genome& genome, Rng& rng) {
    if (genome.genes.empty()) throw std::invalid_argument("rollout: empty genome");
    GameState s = determinize(start, rng);
    for (const Gene& g : genome.genes) {
        if (!s.ongoing()) break;
        run_gene(s, g, rng);
    }
    return s;
}

}  // namespace pandemic
