#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "nsga3fo/core.hpp"

namespace nsga3fo {

// Pareto dominance under minimization.
inline bool dominates(std::span<double const> a, std::span<double const> b) {
    bool strictly = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) {
            return false;
        }
        strictly = strictly || a[j] < b[j];
    }
    return strictly;
}

// Deb's constrained domination: feasible beats infeasible, infeasible members
// compare by violation, feasible members by Pareto dominance.
inline bool constrainedDominates(Individual const& a, Individual const& b) {
    bool const fa = a.feasible();
    bool const fb = b.feasible();
    if (fa && !fb) {
        return true;
    }
    if (!fa && !fb) {
        return a.violation < b.violation;
    }
    if (!fa) {
        return false;
    }
    return dominates(a.objectives, b.objectives);
}

using Fronts = std::vector<std::vector<std::size_t>>;

// O(m N^2) fast non-dominated sort. Indices inside each front are ascending.
inline Fronts fastNondominatedSort(std::span<Individual const> pop) {
    std::size_t const n = pop.size();
    Fronts fronts;
    if (n == 0) {
        return fronts;
    }
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> counter(n, 0);
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (constrainedDominates(pop[i], pop[j])) {
                dominated[i].push_back(j);
                ++counter[j];
            } else if (constrainedDominates(pop[j], pop[i])) {
                dominated[j].push_back(i);
                ++counter[i];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (counter[i] == 0) {
            current.push_back(i);
        }
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto i : current) {
            for (auto j : dominated[i]) {
                if (--counter[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

inline void assignRanks(std::span<Individual> pop, Fronts const& fronts) {
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        for (auto i : fronts[r]) {
            pop[i].rank = r;
        }
    }
}

// Indices of the non-dominated points of an unconstrained set (duplicates kept).
inline std::vector<std::size_t> nondominatedIndices(PointSet const& points) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool const beaten = std::any_of(points.begin(), points.end(), [&](Point const& other) {
            return dominates(other, points[i]);
        });
        if (!beaten) {
            out.push_back(i);
        }
    }
    return out;
}

} // namespace nsga3fo
