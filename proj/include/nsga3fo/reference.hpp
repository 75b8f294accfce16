#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nsga3fo/core.hpp"

namespace nsga3fo {

// Number of Das-Dennis points, C(m + p - 1, p).
inline std::size_t referencePointCount(std::size_t m, std::size_t p) {
    if (m < 2 || p < 1) {
        throw std::invalid_argument("referencePointCount: need m >= 2 and p >= 1");
    }
    unsigned __int128 count = 1;
    std::size_t const k = std::min(p, m - 1);
    for (std::size_t i = 1; i <= k; ++i) {
        count = count * (m + p - 1 - k + i) / i;
        if (count > std::numeric_limits<std::size_t>::max()) {
            throw std::overflow_error("referencePointCount: overflow");
        }
    }
    return static_cast<std::size_t>(count);
}

namespace detail {
inline void dasDennisFill(std::size_t m, std::size_t p, std::size_t left, std::vector<std::size_t>& prefix, PointSet& out) {
    if (prefix.size() + 1 == m) {
        Point point(m);
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            point[i] = static_cast<double>(prefix[i]) / static_cast<double>(p);
        }
        point[m - 1] = static_cast<double>(left) / static_cast<double>(p);
        out.push_back(std::move(point));
        return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
        prefix.push_back(k);
        dasDennisFill(m, p, left - k, prefix, out);
        prefix.pop_back();
    }
}
} // namespace detail

// Systematic simplex lattice: every point has coordinates k/p with the k summing to p.
inline PointSet dasDennis(std::size_t m, std::size_t p) {
    PointSet out;
    out.reserve(referencePointCount(m, p));
    std::vector<std::size_t> prefix;
    prefix.reserve(m);
    detail::dasDennisFill(m, p, p, prefix, out);
    return out;
}

// Reference directions plus the adaptive normalization state carried across generations.
struct ReferenceSet {
    PointSet points;
    Point idealPoint;         // empty until the first normalize() call
    PointSet extremePoints;   // raw objective vectors, one per axis
};

inline ReferenceSet makeReferenceSet(std::size_t m, std::size_t p) {
    return ReferenceSet { dasDennis(m, p), {}, {} };
}

inline constexpr double kDegenerateIntercept = 1e-12;

// Translates by the (monotonically updated) ideal point and scales each axis by the
// hyperplane intercept through the extreme points. Degenerate intercepts fall back to
// the per-axis maximum spread of the given objectives.
inline PointSet normalize(std::span<Point const> objectives, ReferenceSet& refs) {
    if (objectives.empty()) {
        throw std::invalid_argument("normalize: empty population");
    }
    std::size_t const m = objectives.front().size();
    if (refs.idealPoint.size() != m) {
        refs.idealPoint.assign(m, std::numeric_limits<double>::infinity());
        refs.extremePoints.clear();
    }
    for (auto const& f : objectives) {
        for (std::size_t j = 0; j < m; ++j) {
            refs.idealPoint[j] = std::min(refs.idealPoint[j], f[j]);
        }
    }
    auto const& ideal = refs.idealPoint;

    // Extreme point per axis by achievement scalarization; previous extremes stay candidates.
    PointSet candidates(objectives.begin(), objectives.end());
    candidates.insert(candidates.end(), refs.extremePoints.begin(), refs.extremePoints.end());
    PointSet extremes(m);
    for (std::size_t axis = 0; axis < m; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bestIndex = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            double asf = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < m; ++j) {
                double const w = j == axis ? 1.0 : 1e-6;
                asf = std::max(asf, (candidates[c][j] - ideal[j]) / w);
            }
            if (asf < best) {
                best = asf;
                bestIndex = c;
            }
        }
        extremes[axis] = candidates[bestIndex];
    }
    refs.extremePoints = extremes;

    Point spread(m, 0.0);
    for (auto const& f : objectives) {
        for (std::size_t j = 0; j < m; ++j) {
            spread[j] = std::max(spread[j], f[j] - ideal[j]);
        }
    }
    auto fallback = [&](std::size_t j) { return spread[j] > kDegenerateIntercept ? spread[j] : 1.0; };

    Eigen::MatrixXd basis(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = extremes[i][j] - ideal[j];
        }
    }
    Point intercepts(m);
    // PartialPivLU::rcond() can report 1 for an exactly singular basis (repeated extremes).
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
    bool const solvable = lu.isInvertible() && lu.rcond() > 1e-12;
    Eigen::VectorXd plane;
    if (solvable) {
        plane = lu.solve(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m)));
    }
    for (std::size_t j = 0; j < m; ++j) {
        double intercept = solvable ? 1.0 / plane(static_cast<Eigen::Index>(j)) : 0.0;
        if (!std::isfinite(intercept) || intercept <= kDegenerateIntercept) {
            intercept = fallback(j);
        }
        intercepts[j] = intercept;
    }

    PointSet normalized;
    normalized.reserve(objectives.size());
    for (auto const& f : objectives) {
        Point v(m);
        for (std::size_t j = 0; j < m; ++j) {
            v[j] = (f[j] - ideal[j]) / intercepts[j];
        }
        normalized.push_back(std::move(v));
    }
    return normalized;
}

// Distance from a normalized objective vector to the hyperplane sum(v) = 1.
inline double planeDistance(std::span<double const> normalized) {
    double sum = 0.0;
    for (double v : normalized) {
        sum += v;
    }
    return std::abs(sum - 1.0) / std::sqrt(static_cast<double>(normalized.size()));
}

struct Association {
    std::size_t reference = 0;
    double distance = 0.0;  // perpendicular distance to the reference direction
};

inline double perpendicularDistance(std::span<double const> point, std::span<double const> direction) {
    double dot = 0.0;
    double norm2 = 0.0;
    for (std::size_t j = 0; j < point.size(); ++j) {
        dot += point[j] * direction[j];
        norm2 += direction[j] * direction[j];
    }
    double const scale = dot / norm2;
    double d2 = 0.0;
    for (std::size_t j = 0; j < point.size(); ++j) {
        double const diff = point[j] - scale * direction[j];
        d2 += diff * diff;
    }
    return std::sqrt(d2);
}

// Nearest reference direction; ties go to the lower index.
inline Association associate(std::span<double const> normalized, PointSet const& directions) {
    Association best { 0, std::numeric_limits<double>::infinity() };
    for (std::size_t r = 0; r < directions.size(); ++r) {
        double const d = perpendicularDistance(normalized, directions[r]);
        if (d < best.distance) {
            best = { r, d };
        }
    }
    return best;
}

} // namespace nsga3fo
