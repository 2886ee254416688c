#pragma once

#include <cstdint>
#include <vector>

namespace pandemic {

struct KMedoidsResult {
    std::vector<int> medoids;     // indices into the input points, ascending
    std::vector<int> assignment;  // per point, a position in `medoids`
    double total_cost = 0.0;      // sum of euclidean distances to assigned medoids
    bool degenerate = false;      // every point identical; first k returned verbatim
};

// Partitioning-around-medoids with random restarts, euclidean distance, best
// total cost kept. Points are canonicalized by coordinates before the search,
// so distinct points cluster identically however the input list is ordered.
// Throws std::invalid_argument on empty input, mixed dimensions, or k outside
// [1, n].
KMedoidsResult k_medoids(const std::vector<std::vector<double>>& points, int k,
                         std::uint64_t seed, int restarts = 50);

}  // namespace pandemic
