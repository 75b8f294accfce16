#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "nsga3fo/core.hpp"
#include "nsga3fo/reference.hpp"
#include "nsga3fo/sorting.hpp"

namespace nsga3fo {

// Outcome of focused-operator screening, as member indices.
struct Screening {
    std::vector<std::size_t> focused;    // smallest plane distance first
    std::vector<std::size_t> excluded;   // largest plane distance first
    std::vector<std::size_t> remainder;  // ascending index order
};

// The focusedCount members closest to the unit hyperplane bypass selection; the
// nonFocusedCount farthest are dropped for this generation. Ties go to the lower index.
inline Screening screenFocused(std::span<double const> distances, std::size_t focusedCount, std::size_t nonFocusedCount) {
    std::size_t const n = distances.size();
    if (focusedCount + nonFocusedCount >= n) {
        throw std::invalid_argument("screenFocused: screening counts leave no remainder");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return distances[a] < distances[b]; });

    Screening s;
    s.focused.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(focusedCount));

    std::vector<std::size_t> rest(order.begin() + static_cast<std::ptrdiff_t>(focusedCount), order.end());
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
        return distances[a] > distances[b] || (distances[a] == distances[b] && a < b);
    });
    s.excluded.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(nonFocusedCount));

    std::vector<bool> taken(n, false);
    for (auto i : s.focused) {
        taken[i] = true;
    }
    for (auto i : s.excluded) {
        taken[i] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!taken[i]) {
            s.remainder.push_back(i);
        }
    }
    return s;
}

// Reference-point niching survival. `preselected` members are kept unconditionally
// and count towards niche occupancy; the rest are filled front by front, with the
// splitting front resolved by least-crowded reference direction. Returns indices
// into `merged`, preselected first.
inline std::vector<std::size_t> nichingSelect(std::span<Individual const> merged, std::span<std::size_t const> preselected,
                                              ReferenceSet& refs, std::size_t targetSize, Rng& rng) {
    std::size_t const n = merged.size();
    if (n < targetSize || preselected.size() > targetSize) {
        throw std::invalid_argument("nichingSelect: not enough members for the target size");
    }
    if (n == targetSize) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        return all;
    }

    std::vector<std::size_t> selected(preselected.begin(), preselected.end());
    std::vector<bool> isPre(n, false);
    for (auto i : preselected) {
        isPre[i] = true;
    }
    std::vector<std::size_t> pool;
    std::vector<Individual> poolMembers;
    for (std::size_t i = 0; i < n; ++i) {
        if (!isPre[i]) {
            pool.push_back(i);
            poolMembers.push_back(merged[i]);
        }
    }

    std::vector<std::size_t> lastFront;
    for (auto const& front : fastNondominatedSort(poolMembers)) {
        if (selected.size() + front.size() <= targetSize) {
            for (auto k : front) {
                selected.push_back(pool[k]);
            }
            if (selected.size() == targetSize) {
                return selected;
            }
            continue;
        }
        for (auto k : front) {
            lastFront.push_back(pool[k]);
        }
        break;
    }

    // Normalize over the kept members plus the splitting front.
    std::vector<std::size_t> considered = selected;
    considered.insert(considered.end(), lastFront.begin(), lastFront.end());
    PointSet objectives;
    objectives.reserve(considered.size());
    for (auto i : considered) {
        objectives.push_back(merged[i].objectives);
    }
    PointSet const normalized = normalize(objectives, refs);

    std::size_t const h = refs.points.size();
    std::vector<std::size_t> nicheCount(h, 0);
    std::vector<Association> lastAssoc(lastFront.size());
    for (std::size_t c = 0; c < considered.size(); ++c) {
        Association const a = associate(normalized[c], refs.points);
        if (c < selected.size()) {
            ++nicheCount[a.reference];
        } else {
            lastAssoc[c - selected.size()] = a;
        }
    }

    std::vector<bool> active(h, true);
    std::vector<bool> chosen(lastFront.size(), false);
    while (selected.size() < targetSize) {
        std::size_t minCount = std::numeric_limits<std::size_t>::max();
        for (std::size_t r = 0; r < h; ++r) {
            if (active[r]) {
                minCount = std::min(minCount, nicheCount[r]);
            }
        }
        std::vector<std::size_t> candidates;
        for (std::size_t r = 0; r < h; ++r) {
            if (active[r] && nicheCount[r] == minCount) {
                candidates.push_back(r);
            }
        }
        std::size_t const r = candidates[uniformIndex(rng, candidates.size())];

        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < lastFront.size(); ++k) {
            if (!chosen[k] && lastAssoc[k].reference == r) {
                members.push_back(k);
            }
        }
        if (members.empty()) {
            active[r] = false;
            continue;
        }
        std::size_t pick = members.front();
        if (nicheCount[r] == 0) {
            for (auto k : members) {
                if (lastAssoc[k].distance < lastAssoc[pick].distance) {
                    pick = k;
                }
            }
        } else {
            pick = members[uniformIndex(rng, members.size())];
        }
        chosen[pick] = true;
        selected.push_back(lastFront[pick]);
        ++nicheCount[r];
    }
    return selected;
}

} // namespace nsga3fo
