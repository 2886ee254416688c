#pragma once

#include <vector>

#include "pandemic/macro.hpp"

namespace pandemic {

// One player turn's worth of macros. Genes sum to the turn budget: 4 action
// points, except the first gene of a mid-turn genome which holds whatever
// remains of the current turn.
struct Gene {
    std::vector<Macro> macros;

    int cost() const {
        int c = 0;
        for (const Macro& m : macros) c += m.total_cost();
        return c;
    }
    bool operator==(const Gene&) const = default;
};

// Plan for the next |genes| consecutive turns; gene i is played by whichever
// seat holds turn i (one controller plays all seats).
struct Genome {
    std::vector<Gene> genes;
    bool operator==(const Genome&) const = default;
};

// A pure do-nothing macro, used to pad genes and genomes.
inline Macro wait_macro(int actions) {
    Macro m;
    m.kind = MacroKind::WalkAway;
    m.move.cost = 0;
    m.waits = actions;
    return m;
}

}  // namespace pandemic
