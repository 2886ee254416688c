#pragma once

#include <cstdint>
#include <vector>

#include "pandemic/determinize.hpp"
#include "pandemic/fitness.hpp"
#include "pandemic/genome.hpp"
#include "pandemic/rng.hpp"
#include "pandemic/state.hpp"

namespace pandemic {

// Hierarchical policy: walks a fixed priority ladder (cure; treat 3-cube
// cities; share now or park to share; build while stations are short; treat
// 2-cube; treat 1-cube; walk away) and picks uniformly inside the first
// non-empty rung.
Macro hpa_next(const GameState& s, Rng& rng);

// Random-order policy: shuffles four categories (cure / treat with a 3->2->1
// fallback / share / build while stations are short) and picks uniformly from
// the first non-empty one, walking away if all four come up empty.
Macro rpa_next(const GameState& s, Rng& rng);

// Per-generation mutation rate, interpolated linearly from start to end.
struct MutationSchedule {
    double start = 1.0;
    double end = 0.5;

    double at(int generation, int total) const {
        if (total <= 1) return start;
        return start + (end - start) * (static_cast<double>(generation) / (total - 1));
    }
    bool operator==(const MutationSchedule&) const = default;
};

struct RheaParams {
    int horizon = 5;       // look-ahead in player turns
    int generations = 100; // mutation/selection iterations per decision
    int repetitions = 5;   // rollouts averaged per evaluation
    MutationSchedule mutation;
    FitnessSpec fitness;
    std::uint64_t seed = 0;  // master seed; drivers derive per-game streams
};

// Where a mutation cut a gene; recorded for inspection.
struct MutationEvent {
    int gene = -1;
    int macro = -1;
    bool operator==(const MutationEvent&) const = default;
};

// HPA plays a determinized copy forward `horizon` turns; each turn's macros
// become one gene. Genes keep summing to the turn budget even past a
// game-over (wait padding).
Genome seed_genome(const GameState& s, int horizon, Rng& rng);

// Destruction-and-repair: each gene is cut at a uniform macro index with
// probability `rate` (one forced uniform cut if none fire), the tail deleted,
// and the hole repaired against a fresh determinization rolled forward to the
// cut: RPA picks the next macro, HPA fills the rest of the turn.
Genome mutate(const Genome& parent, const GameState& s, double rate, Rng& rng,
              std::vector<MutationEvent>* events = nullptr);

// Mean fitness of `repetitions` independent rollouts of the genome.
double evaluate_genome(const GameState& s, const Genome& g, const FitnessSpec& spec,
                       int repetitions, Rng& rng);

// One 1+1 evolutionary-strategy decision: seed with HPA, evolve for
// `generations`, return the first macro of the surviving genome. Callers
// re-invoke after each macro until the turn is spent.
Macro rhea_decide(const GameState& s, const RheaParams& params, Rng& rng);

}  // namespace pandemic
