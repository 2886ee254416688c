#include "pandemic/kmedoids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "pandemic/rng.hpp"

namespace pandemic {

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

struct Solution {
    std::vector<int> medoids;  // canonical point indices
    double cost = 0.0;
};

// nearest/second-nearest bookkeeping for O(n) swap deltas
struct Assignment {
    std::vector<int> nearest;
    std::vector<double> d1;
    std::vector<double> d2;
    double cost = 0.0;
};

Assignment assign(const std::vector<std::vector<double>>& dist, const std::vector<int>& medoids) {
    const int n = static_cast<int>(dist.size());
    Assignment a;
    a.nearest.assign(n, -1);
    a.d1.assign(n, 0.0);
    a.d2.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double best = -1.0, second = -1.0;
        int who = -1;
        for (int m : medoids) {
            double d = dist[i][m];
            if (best < 0 || d < best) {
                second = best;
                best = d;
                who = m;
            } else if (second < 0 || d < second) {
                second = d;
            }
        }
        a.nearest[i] = who;
        a.d1[i] = best;
        // with a lone medoid there is no fallback: losing it forces the point
        // onto the incoming candidate whatever the distance
        a.d2[i] = medoids.size() > 1 ? second : std::numeric_limits<double>::infinity();
        a.cost += best;
    }
    return a;
}

Solution pam_run(const std::vector<std::vector<double>>& dist, int k, Rng& rng) {
    const int n = static_cast<int>(dist.size());
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {  // partial fisher-yates draw of k starters
        int j = i + static_cast<int>(rng.below(static_cast<std::uint32_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> medoids(pool.begin(), pool.begin() + k);
    std::vector<char> is_medoid(n, 0);
    for (int m : medoids) is_medoid[m] = 1;

    Assignment a = assign(dist, medoids);
    for (;;) {
        double best_delta = -1e-12;  // strict improvements only
        int best_out = -1, best_in = -1;
        for (int mi = 0; mi < k; ++mi) {
            int out = medoids[mi];
            for (int in = 0; in < n; ++in) {
                if (is_medoid[in]) continue;
                double delta = 0.0;
                for (int i = 0; i < n; ++i) {
                    double din = dist[i][in];
                    if (a.nearest[i] == out)
                        delta += std::min(a.d2[i], din) - a.d1[i];
                    else if (din < a.d1[i])
                        delta += din - a.d1[i];
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_out = out;
                    best_in = in;
                }
            }
        }
        if (best_out < 0) break;
        is_medoid[best_out] = 0;
        is_medoid[best_in] = 1;
        *std::find(medoids.begin(), medoids.end(), best_out) = best_in;
        a = assign(dist, medoids);
    }
    std::sort(medoids.begin(), medoids.end());
    return {std::move(medoids), a.cost};
}

}  // namespace

KMedoidsResult k_medoids(const std::vector<std::vector<double>>& points, int k,
                         std::uint64_t seed, int restarts) {
    const int n = static_cast<int>(points.size());
    if (n == 0) throw std::invalid_argument("k_medoids: no points");
    if (k < 1 || k > n) throw std::invalid_argument("k_medoids: k outside [1, n]");
    if (restarts < 1) throw std::invalid_argument("k_medoids: restarts < 1");
    for (const auto& p : points)
        if (p.size() != points[0].size())
            throw std::invalid_argument("k_medoids: mixed point dimensions");

    KMedoidsResult out;
    if (std::all_of(points.begin(), points.end(),
                    [&](const std::vector<double>& p) { return p == points[0]; })) {
        out.degenerate = true;
        out.medoids.resize(k);
        std::iota(out.medoids.begin(), out.medoids.end(), 0);
        out.assignment.assign(n, 0);
        for (int i = 0; i < k; ++i) out.assignment[i] = i;
        return out;
    }

    // canonical order: sort by coordinates so the restart streams see the same
    // point sequence whatever order the caller supplied
    std::vector<int> canon(n);
    std::iota(canon.begin(), canon.end(), 0);
    std::sort(canon.begin(), canon.end(), [&](int a, int b) {
        if (points[a] != points[b]) return points[a] < points[b];
        return a < b;
    });

    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = euclidean(points[canon[i]], points[canon[j]]);

    Rng rng(seed);
    Solution best;
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
        Solution sol = pam_run(dist, k, rng);
        // ties broken on the medoid coordinate sets, keeping the pick
        // independent of the restart that found it
        auto key = [&](const Solution& s) {
            std::vector<std::vector<double>> coords;
            for (int m : s.medoids) coords.push_back(points[canon[m]]);
            std::sort(coords.begin(), coords.end());
            return coords;
        };
        if (!have_best || sol.cost < best.cost - 1e-12 ||
            (std::abs(sol.cost - best.cost) <= 1e-12 && key(sol) < key(best))) {
            best = std::move(sol);
            have_best = true;
        }
    }

    out.total_cost = best.cost;
    for (int m : best.medoids) out.medoids.push_back(canon[m]);
    std::sort(out.medoids.begin(), out.medoids.end());
    out.assignment.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        double bd = 0.0;
        int bm = -1;
        for (int mi = 0; mi < k; ++mi) {
            double d = euclidean(points[i], points[out.medoids[mi]]);
            if (bm < 0 || d < bd) {
                bd = d;
                bm = mi;
            }
        }
        out.assignment[i] = bm;
    }
    return out;
}

}  // namespace pandemic
