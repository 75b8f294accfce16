#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace nsga3fo {

using Point = std::vector<double>;
using PointSet = std::vector<Point>;

// A single 64-bit Mersenne stream drives every stochastic decision. The
// helpers below map raw engine output to doubles/indices without going
// through <random> distributions, whose output is implementation-defined.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline std::size_t uniformIndex(Rng& rng, std::size_t n) {
    auto const wide = static_cast<unsigned __int128>(rng()) * n;
    return static_cast<std::size_t>(wide >> 64);
}

struct Individual {
    std::vector<double> genes;
    std::vector<double> objectives;
    double violation = 0.0;  // 0 means feasible
    std::size_t rank = 0;
    double planeDistance = 0.0;

    [[nodiscard]] bool feasible() const { return violation <= 0.0; }
};

struct Population {
    std::vector<Individual> members;
    std::size_t generation = 0;
};

inline PointSet objectivesOf(std::vector<Individual> const& members) {
    PointSet out;
    out.reserve(members.size());
    for (auto const& ind : members) {
        out.push_back(ind.objectives);
    }
    return out;
}

} // namespace nsga3fo
