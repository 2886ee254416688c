#include "pandemic/agents.hpp"

#include <array>
#include <stdexcept>

namespace pandemic {

namespace {

struct MacroBuckets {
    std::vector<Macro> cure, treat3, treat2, treat1, share_now, share_wait, build, walk;
};

MacroBuckets classify(const GameState& s, std::vector<Macro> all) {
    MacroBuckets b;
    for (Macro& m : all) {
        switch (m.kind) {
            case MacroKind::Cure:
                b.cure.push_back(std::move(m));
                break;
            case MacroKind::Treat: {
                int city = plan_destination(m.move);
                if (city < 0) city = s.current().location;
                int n = s.cities[city].cubes[m.terminal->color];
                (n >= 3 ? b.treat3 : n == 2 ? b.treat2 : b.treat1).push_back(std::move(m));
                break;
            }
            case MacroKind::ShareGive:
            case MacroKind::ShareTake:
                b.share_now.push_back(std::move(m));
                break;
            case MacroKind::ShareWait:
                b.share_wait.push_back(std::move(m));
                break;
            case MacroKind::Build:
                b.build.push_back(std::move(m));
                break;
            case MacroKind::WalkAway:
                b.walk.push_back(std::move(m));
                break;
        }
    }
    return b;
}

Macro pick(const std::vector<Macro>& v, Rng& rng) {
    return v[rng.below(static_cast<std::uint32_t>(v.size()))];
}

Macro walk_or_idle(const MacroBuckets& b, const GameState& s, Rng& rng) {
    // the board may be too small for an exactly-budget walk; idle instead
    if (!b.walk.empty()) return pick(b.walk, rng);
    return wait_macro(s.actions_remaining);
}

void require_deciding(const GameState& s, const char* who) {
    if (!s.ongoing() || s.phase != Phase::Actions || s.actions_remaining < 1)
        throw std::invalid_argument(std::string(who) + ": no actions to plan");
}

}  // namespace

Macro hpa_next(const GameState& s, Rng& rng) {
    require_deciding(s, "hpa_next");
    MacroBuckets b = classify(s, generate_macros(s, s.actions_remaining));
    if (!b.cure.empty()) return pick(b.cure, rng);
    if (!b.treat3.empty()) return pick(b.treat3, rng);
    if (!b.share_now.empty()) return pick(b.share_now, rng);
    if (!b.share_wait.empty()) return pick(b.share_wait, rng);
    if (s.stations_placed < kMaxStations && !b.build.empty()) return pick(b.build, rng);
    if (!b.treat2.empty()) return pick(b.treat2, rng);
    if (!b.treat1.empty()) return pick(b.treat1, rng);
    return walk_or_idle(b, s, rng);
}

Macro rpa_next(const GameState& s, Rng& rng) {
    require_deciding(s, "rpa_next");
    MacroBuckets b = classify(s, generate_macros(s, s.actions_remaining));
    std::array<int, 4> order{0, 1, 2, 3};
    rng.shuffle(order);
    for (int category : order) {
        switch (category) {
            case 0:
                if (!b.cure.empty()) return pick(b.cure, rng);
                break;
            case 1:
                if (!b.treat3.empty()) return pick(b.treat3, rng);
                if (!b.treat2.empty()) return pick(b.treat2, rng);
                if (!b.treat1.empty()) return pick(b.treat1, rng);
                break;
            case 2:
                if (!b.share_now.empty()) return pick(b.share_now, rng);
                if (!b.share_wait.empty()) return pick(b.share_wait, rng);
                break;
            case 3:
                if (s.stations_placed < kMaxStations && !b.build.empty())
                    return pick(b.build, rng);
                break;
        }
    }
    return walk_or_idle(b, s, rng);
}

Genome seed_genome(const GameState& s, int horizon, Rng& rng) {
    if (horizon < 1) throw std::invalid_argument("seed_genome: horizon must be >= 1");
    require_deciding(s, "seed_genome");
    Genome g;
    g.genes.resize(static_cast<std::size_t>(horizon));
    GameState roll = determinize(s, rng);
    for (Gene& gene : g.genes) {
        int budget = 4;
        if (roll.ongoing() && roll.phase == Phase::Actions) budget = roll.actions_remaining;
        int planned = 0;
        while (roll.ongoing() && roll.phase == Phase::Actions && roll.actions_remaining > 0) {
            Macro m = hpa_next(roll, rng);
            planned += m.total_cost();
            gene.macros.push_back(m);
            execute_macro(roll, m);
        }
        if (planned < budget) gene.macros.push_back(wait_macro(budget - planned));
        finish_turn(roll, rng);
    }
    return g;
}

Genome mutate(const Genome& parent, const GameState& s, double rate, Rng& rng,
              std::vector<MutationEvent>* events) {
    const int h = static_cast<int>(parent.genes.size());
    if (h == 0) throw std::invalid_argument("mutate: empty genome");
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("mutate: rate outside [0,1]");

    std::vector<char> fires(static_cast<std::size_t>(h), 0);
    bool any = false;
    for (int i = 0; i < h; ++i)
        if (rng.chance(rate)) {
            fires[i] = 1;
            any = true;
        }
    if (!any) fires[rng.below(static_cast<std::uint32_t>(h))] = 1;

    Genome child = parent;
    GameState roll = determinize(s, rng);
    for (int i = 0; i < h; ++i) {
        Gene& gene = child.genes[i];
        if (!fires[i]) {
            run_gene(roll, gene, rng);
            continue;
        }
        const int budget = gene.cost();
        int cut = gene.macros.empty()
                      ? 0
                      : static_cast<int>(rng.below(static_cast<std::uint32_t>(gene.macros.size())));
        if (events) events->push_back({i, cut});
        gene.macros.resize(static_cast<std::size_t>(cut));

        int spent = 0;
        for (const Macro& m : gene.macros) {
            spent += m.total_cost();
            if (roll.ongoing() && roll.phase == Phase::Actions) execute_macro(roll, m);
        }

        // repair: one RPA macro, then HPA until the turn's points are planned
        bool first = true;
        int left = budget - spent;
        while (left > 0) {
            Macro m;
            if (roll.ongoing() && roll.phase == Phase::Actions && roll.actions_remaining > 0) {
                if (roll.actions_remaining == left) {
                    m = first ? rpa_next(roll, rng) : hpa_next(roll, rng);
                } else {
                    // the roll diverged from the plan's bookkeeping; plan
                    // against a copy carrying the planned budget
                    GameState patched = roll;
                    patched.actions_remaining = left;
                    m = first ? rpa_next(patched, rng) : hpa_next(patched, rng);
                }
                execute_macro(roll, m);
            } else {
                m = wait_macro(left);
            }
            left -= m.total_cost();
            gene.macros.push_back(std::move(m));
            first = false;
        }
        finish_turn(roll, rng);
    }
    return child;
}

double evaluate_genome(const GameState& s, const Genome& g, const FitnessSpec& spec,
                       int repetitions, Rng& rng) {
    if (repetitions < 1) throw std::invalid_argument("evaluate_genome: repetitions must be >= 1");
    if (g.genes.empty()) throw std::invalid_argument("evaluate_genome: empty genome");
    std::uint64_t base = rng.next();
    double sum = 0.0;
    for (int r = 0; r < repetitions; ++r) {
        Rng stream(derive_seed(base, static_cast<std::uint64_t>(r)));
        GameState end = rollout(s, g, stream);
        sum += evaluate_state(end, spec);
    }
    return sum / repetitions;
}

Macro rhea_decide(const GameState& s, const RheaParams& params, Rng& rng) {
    require_deciding(s, "rhea_decide");
    if (params.horizon < 1 || params.generations < 0 || params.repetitions < 1)
        throw std::invalid_argument("rhea_decide: bad parameters");
    Genome incumbent = seed_genome(s, params.horizon, rng);
    double incumbent_fit =
        evaluate_genome(s, incumbent, params.fitness, params.repetitions, rng);
    for (int gen = 0; gen < params.generations; ++gen) {
        double rate = params.mutation.at(gen, params.generations);
        Genome child = mutate(incumbent, s, rate, rng);
        double child_fit = evaluate_genome(s, child, params.fitness, params.repetitions, rng);
        if (child_fit >= incumbent_fit) {  // offspring survives ties
            incumbent = std::move(child);
            incumbent_fit = child_fit;
        }
    }
    return incumbent.genes.front().macros.front();
}

}  // namespace pandemic
