#pragma once

#include <set>
#include <vector>

#include "helpers.hpp"
#include "pandemic/map.hpp"
#include "pandemic/state.hpp"

namespace test_helpers {

// Independent chain-outbreak resolver computing the outbroken set as a least
// fixpoint instead of walking a queue: a non-origin city joins the set when
// its cubes plus one per outbroken neighbor reach 4; members end at 3 cubes,
// non-members absorb the spill.
struct OracleResult {
    std::vector<int> cubes;  // per-city count of the infected color
    int outbreaks = 0;
};

inline OracleResult oracle_resolution(const pandemic::CityMap& map, std::vector<int> cubes,
                                      int origin, int count) {
    OracleResult r;
    r.cubes = std::move(cubes);
    std::set<int> marked;  // persists across the cubes of one card resolution
    for (int k = 0; k < count; ++k) {
        if (marked.count(origin)) continue;
        if (r.cubes[origin] < 3) {
            r.cubes[origin] += 1;
            continue;
        }
        // fixpoint of the outbroken set for this cube
        std::set<int> fresh{origin};
        bool grew = true;
        while (grew) {
            grew = false;
            for (int c = 0; c < map.size(); ++c) {
                if (marked.count(c) || fresh.count(c)) continue;
                int incoming = 0;
                for (int n : map.neighbors(c))
                    if (fresh.count(n)) incoming += 1;
                if (r.cubes[c] + incoming >= 4) {
                    fresh.insert(c);
                    grew = true;
                }
            }
        }
        for (int c = 0; c < map.size(); ++c) {
            if (marked.count(c)) continue;
            if (fresh.count(c)) {
                r.cubes[c] = 3;
            } else {
                int incoming = 0;
                for (int n : map.neighbors(c))
                    if (fresh.count(n)) incoming += 1;
                r.cubes[c] += incoming;
            }
        }
        r.outbreaks += static_cast<int>(fresh.size());
        marked.insert(fresh.begin(), fresh.end());
    }
    return r;
}

inline pandemic::GameState state_with_cubes(const std::vector<int>& cubes, pandemic::Color color) {
    pandemic::GameState s = toy_state();
    int t = static_cast<int>(color);
    for (std::size_t c = 0; c < cubes.size(); ++c) {
        s.cities[c].cubes[t] = static_cast<std::uint8_t>(cubes[c]);
        s.cube_supply[t] = static_cast<std::uint8_t>(s.cube_supply[t] - cubes[c]);
    }
    return s;
}

}  // namespace test_helpers
