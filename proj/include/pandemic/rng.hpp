#pragma once

#include <cstdint>
#include <vector>

namespace pandemic {

// splitmix64 output mix, also used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream. Hand-rolled so that shuffles and bounded
// draws produce the same sequence on every platform and compiler, which
// std::shuffle / std::uniform_int_distribution do not guarantee.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Multiply-shift; bias is below 2^-32 for game-sized n.
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint32_t>(hi - lo + 1)));
    }

    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool chance(double p) { return uniform01() < p; }

    template <class Vec>
    void shuffle(Vec& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(static_cast<std::uint32_t>(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

    // Independent child stream; same (parent, tag) always gives the same child.
    Rng derive(std::uint64_t tag) const {
        return Rng(mix64(state_ ^ mix64(tag ^ 0xa02bdbf7bb3c0a7ULL)));
    }

private:
    std::uint64_t state_;
};

// Per-game seed so that parallel scheduling order cannot change results.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 0x51ed270b74a4a3ULL));
}

}  // namespace pandemic
