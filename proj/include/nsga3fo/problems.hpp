#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "nsga3fo/core.hpp"
#include "nsga3fo/problem.hpp"
#include "nsga3fo/reference.hpp"

namespace nsga3fo {

// Greedy farthest-point thinning down to `count` points, seeded with the points that
// are extreme along each axis. Deterministic; ties go to the lower index.
inline PointSet thinToCount(PointSet const& points, std::size_t count) {
    if (points.size() <= count) {
        return points;
    }
    std::size_t const m = points.front().size();
    std::vector<bool> taken(points.size(), false);
    std::vector<double> nearest(points.size(), std::numeric_limits<double>::infinity());
    PointSet out;
    auto take = [&](std::size_t i) {
        taken[i] = true;
        out.push_back(points[i]);
        for (std::size_t k = 0; k < points.size(); ++k) {
            double d = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                d += (points[k][j] - points[i][j]) * (points[k][j] - points[i][j]);
            }
            nearest[k] = std::min(nearest[k], d);
        }
    };
    for (std::size_t axis = 0; axis < m && out.size() < count; ++axis) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (points[i][axis] > points[best][axis]) {
                best = i;
            }
        }
        if (!taken[best]) {
            take(best);
        }
    }
    while (out.size() < count) {
        std::size_t best = points.size();
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!taken[i] && (best == points.size() || nearest[i] > nearest[best])) {
                best = i;
            }
        }
        take(best);
    }
    return out;
}

// Coarsest Das-Dennis lattice holding at least `count` points.
inline std::size_t divisionsFor(std::size_t m, std::size_t count) {
    std::size_t p = 1;
    while (referencePointCount(m, p) < count) {
        ++p;
    }
    return p;
}

inline Problem dtlz3(std::size_t m = 3, std::size_t k = 10) {
    if (m < 2) {
        throw std::invalid_argument("dtlz3: need at least two objectives");
    }
    if (k < 1) {
        throw std::invalid_argument("dtlz3: need at least one distance variable");
    }
    Problem p;
    p.name = "dtlz3";
    p.dimension = m + k - 1;
    p.objectiveCount = m;
    p.bounds.assign(p.dimension, Bounds { 0.0, 1.0 });
    p.evaluate = [m, k](std::span<double const> x) {
        double g = static_cast<double>(k);
        for (std::size_t i = m - 1; i < x.size(); ++i) {
            double const d = x[i] - 0.5;
            g += d * d - std::cos(20.0 * std::numbers::pi * d);
        }
        g *= 100.0;
        Evaluation e;
        e.objectives.assign(m, 1.0 + g);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j + 1 + i < m; ++j) {
                e.objectives[i] *= std::cos(x[j] * std::numbers::pi / 2.0);
            }
            if (i > 0) {
                e.objectives[i] *= std::sin(x[m - 1 - i] * std::numbers::pi / 2.0);
            }
        }
        return e;
    };
    p.trueFront = [m](std::size_t count) {
        PointSet dirs = dasDennis(m, divisionsFor(m, count));
        for (auto& d : dirs) {
            double norm = 0.0;
            for (double v : d) {
                norm += v * v;
            }
            norm = std::sqrt(norm);
            for (double& v : d) {
                v /= norm;
            }
        }
        return thinToCount(dirs, count);
    };
    return p;
}

namespace wfg {
inline double correctTo01(double a) {
    constexpr double eps = 1e-10;
    if (a <= 0.0 && a >= -eps) {
        return 0.0;
    }
    if (a >= 1.0 && a <= 1.0 + eps) {
        return 1.0;
    }
    return a;
}

inline double sLinear(double y, double a) {
    return correctTo01(std::abs(y - a) / std::abs(std::floor(a - y) + a));
}

inline double rNonsep(std::span<double const> y, std::size_t a) {
    std::size_t const n = y.size();
    double num = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        num += y[j];
        for (std::size_t k = 0; k + 2 <= a; ++k) {
            num += std::abs(y[j] - y[(1 + j + k) % n]);
        }
    }
    double const half = std::ceil(static_cast<double>(a) / 2.0);
    double const den = (static_cast<double>(n) / static_cast<double>(a)) * half * (1.0 + 2.0 * static_cast<double>(a) - 2.0 * half);
    return correctTo01(num / den);
}

inline double rSum(std::span<double const> y) {
    double s = 0.0;
    for (double v : y) {
        s += v;
    }
    return correctTo01(s / static_cast<double>(y.size()));
}

// Linear (hyperplane) shape functions on position parameters x[0..m-2].
inline Point linearShape(std::span<double const> x, std::size_t m) {
    Point h(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j + 1 + i < m; ++j) {
            h[i] *= x[j];
        }
        if (i > 0) {
            h[i] *= 1.0 - x[m - 1 - i];
        }
    }
    return h;
}

// Objectives from the reduced parameter vector (t[0..m-2] position, t[m-1] distance),
// with WFG3's degeneracy constants A = (1, 0, ..., 0).
inline Point objectivesFromReduced(std::span<double const> t, std::size_t m) {
    double const xm = t[m - 1];
    Point x(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        double const a = i == 0 ? 1.0 : 0.0;
        x[i] = std::max(xm, a) * (t[i] - 0.5) + 0.5;
    }
    Point const h = linearShape(x, m);
    Point f(m);
    for (std::size_t i = 0; i < m; ++i) {
        f[i] = xm + 2.0 * static_cast<double>(i + 1) * h[i];
    }
    return f;
}
} // namespace wfg

inline Problem wfg3(std::size_t m = 3, std::size_t k = 4, std::size_t l = 20) {
    if (m < 2) {
        throw std::invalid_argument("wfg3: need at least two objectives");
    }
    if (k < m - 1 || k % (m - 1) != 0) {
        throw std::invalid_argument("wfg3: position parameter count must be a positive multiple of m - 1");
    }
    if (l < 2 || l % 2 != 0) {
        throw std::invalid_argument("wfg3: distance parameter count must be even and positive");
    }
    Problem p;
    p.name = "wfg3";
    p.dimension = k + l;
    p.objectiveCount = m;
    for (std::size_t i = 0; i < p.dimension; ++i) {
        p.bounds.push_back({ 0.0, 2.0 * static_cast<double>(i + 1) });
    }
    p.evaluate = [m, k, l](std::span<double const> z) {
        std::size_t const n = k + l;
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = z[i] / (2.0 * static_cast<double>(i + 1));
        }
        for (std::size_t i = k; i < n; ++i) {
            y[i] = wfg::sLinear(y[i], 0.35);
        }
        std::vector<double> t2(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k));
        for (std::size_t i = 0; i < l / 2; ++i) {
            t2.push_back(wfg::rNonsep(std::span<double const>(y).subspan(k + 2 * i, 2), 2));
        }
        std::vector<double> t3(m);
        std::size_t const group = k / (m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            t3[i] = wfg::rSum(std::span<double const>(t2).subspan(i * group, group));
        }
        t3[m - 1] = wfg::rSum(std::span<double const>(t2).subspan(k, l / 2));
        return Evaluation { wfg::objectivesFromReduced(t3, m), 0.0 };
    };
    p.trueFront = [m](std::size_t count) {
        PointSet out;
        for (std::size_t c = 0; c < count; ++c) {
            double const u = count == 1 ? 0.0 : static_cast<double>(c) / static_cast<double>(count - 1);
            Point t(m, 0.5);
            t[0] = u;
            t[m - 1] = 0.0;
            out.push_back(wfg::objectivesFromReduced(t, m));
        }
        return out;
    };
    return p;
}

inline PointSet sampleTrueFront(Problem const& problem, std::size_t count) {
    if (!problem.trueFront) {
        throw std::invalid_argument("sampleTrueFront: problem '" + problem.name + "' has no known Pareto front");
    }
    return problem.trueFront(count);
}

} // namespace nsga3fo
