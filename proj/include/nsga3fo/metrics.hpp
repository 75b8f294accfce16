#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "nsga3fo/core.hpp"

namespace nsga3fo {

enum class IgdMode {
    Standard,     // mean over reference points of the distance to the nearest obtained point
    ObtainedSum,  // sum over obtained points of the distance to the reference set, divided by |reference|
};

namespace detail {
inline double euclidean(Point const& a, Point const& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double const d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double nearest(Point const& p, PointSet const& set) {
    double best = std::numeric_limits<double>::infinity();
    for (auto const& q : set) {
        best = std::min(best, euclidean(p, q));
    }
    return best;
}

inline void requireSameDimension(PointSet const& set, std::size_t m, char const* what) {
    for (auto const& p : set) {
        if (p.size() != m) {
            throw std::invalid_argument(std::string(what) + ": mixed objective counts");
        }
    }
}
} // namespace detail

inline double igd(PointSet const& obtained, PointSet const& reference, IgdMode mode = IgdMode::Standard) {
    if (obtained.empty() || reference.empty()) {
        throw std::invalid_argument("igd: empty point set");
    }
    std::size_t const m = reference.front().size();
    detail::requireSameDimension(obtained, m, "igd");
    detail::requireSameDimension(reference, m, "igd");
    double sum = 0.0;
    if (mode == IgdMode::Standard) {
        for (auto const& r : reference) {
            sum += detail::nearest(r, obtained);
        }
    } else {
        for (auto const& p : obtained) {
            sum += detail::nearest(p, reference);
        }
    }
    return sum / static_cast<double>(reference.size());
}

namespace detail {
inline PointSet strictlyInside(PointSet const& points, Point const& ref) {
    PointSet out;
    for (auto const& p : points) {
        if (p.size() != ref.size()) {
            throw std::invalid_argument("hypervolume: point and reference dimensions differ");
        }
        bool inside = true;
        for (std::size_t j = 0; j < ref.size(); ++j) {
            inside = inside && p[j] < ref[j];
        }
        if (inside) {
            out.push_back(p);
        }
    }
    return out;
}

inline double hv2d(PointSet pts, Point const& ref) {
    std::sort(pts.begin(), pts.end());
    double volume = 0.0;
    double yBound = ref[1];
    for (auto const& p : pts) {
        if (p[1] < yBound) {
            volume += (ref[0] - p[0]) * (yBound - p[1]);
            yBound = p[1];
        }
    }
    return volume;
}

// 2-D staircase kept under insertion, with its dominated area relative to (rx, ry).
class Staircase {
public:
    Staircase(double rx, double ry) : rx_(rx), ry_(ry) { }

    void insert(double x, double y) {
        auto it = steps_.upper_bound(x);
        double curY = ry_;
        if (it != steps_.begin()) {
            curY = std::prev(it)->second;
            if (curY <= y) {
                return;  // weakly dominated
            }
        }
        double u = x;
        for (auto walk = it; walk != steps_.end() && curY > y; ++walk) {
            area_ += (walk->first - u) * (curY - y);
            curY = std::min(curY, walk->second);
            u = walk->first;
        }
        if (curY > y) {
            area_ += (rx_ - u) * (curY - y);
        }
        auto erase = steps_.lower_bound(x);
        while (erase != steps_.end() && erase->second >= y) {
            erase = steps_.erase(erase);
        }
        steps_[x] = y;
    }

    [[nodiscard]] double area() const { return area_; }

private:
    double rx_;
    double ry_;
    double area_ = 0.0;
    std::map<double, double> steps_;
};

// Sweep along the last axis, maintaining the dominated area of the (x, y) projection.
inline double hv3d(PointSet pts, Point const& ref) {
    std::sort(pts.begin(), pts.end(), [](Point const& a, Point const& b) { return a[2] < b[2]; });
    Staircase stairs(ref[0], ref[1]);
    double volume = 0.0;
    double zPrev = pts.empty() ? ref[2] : pts.front()[2];
    for (auto const& p : pts) {
        volume += stairs.area() * (p[2] - zPrev);
        stairs.insert(p[0], p[1]);
        zPrev = p[2];
    }
    volume += stairs.area() * (ref[2] - zPrev);
    return volume;
}
} // namespace detail

struct McEstimate {
    double value = 0.0;
    double standardError = 0.0;
};

// Uniform sampling in the box spanned by the componentwise minimum of the
// contributing points and the reference point.
inline McEstimate hypervolumeMC(PointSet const& points, Point const& ref, std::size_t samples, std::uint64_t seed) {
    if (samples < 1000) {
        throw std::invalid_argument("hypervolumeMC: need at least 1000 samples");
    }
    PointSet const pts = detail::strictlyInside(points, ref);
    if (pts.empty()) {
        return {};
    }
    std::size_t const m = ref.size();
    Point lower(m, std::numeric_limits<double>::infinity());
    for (auto const& p : pts) {
        for (std::size_t j = 0; j < m; ++j) {
            lower[j] = std::min(lower[j], p[j]);
        }
    }
    double box = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
        box *= ref[j] - lower[j];
    }
    if (!(box > 0.0)) {
        return {};
    }
    Rng rng(seed);
    Point s(m);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        for (std::size_t j = 0; j < m; ++j) {
            s[j] = uniform(rng, lower[j], ref[j]);
        }
        bool const covered = std::any_of(pts.begin(), pts.end(), [&](Point const& p) {
            for (std::size_t j = 0; j < m; ++j) {
                if (p[j] > s[j]) {
                    return false;
                }
            }
            return true;
        });
        hits += covered ? 1 : 0;
    }
    double const n = static_cast<double>(samples);
    double const frac = static_cast<double>(hits) / n;
    return { box * frac, box * std::sqrt(frac * (1.0 - frac) / n) };
}

inline constexpr std::size_t kHypervolumeMcSamples = 1'000'000;
inline constexpr std::uint64_t kHypervolumeMcSeed = 0x9e3779b97f4a7c15ULL;

// Exact for up to three objectives; Monte Carlo estimate beyond that.
inline double hypervolume(PointSet const& points, Point const& ref) {
    PointSet pts = detail::strictlyInside(points, ref);
    if (pts.empty()) {
        return 0.0;
    }
    switch (ref.size()) {
    case 1: {
        double best = ref[0];
        for (auto const& p : pts) {
            best = std::min(best, p[0]);
        }
        return ref[0] - best;
    }
    case 2:
        return detail::hv2d(std::move(pts), ref);
    case 3:
        return detail::hv3d(std::move(pts), ref);
    default:
        return hypervolumeMC(pts, ref, kHypervolumeMcSamples, kHypervolumeMcSeed).value;
    }
}

// Componentwise worst over every set, pushed outwards by 10% of its magnitude.
inline Point worstReferencePoint(std::vector<PointSet> const& sets) {
    Point worst;
    for (auto const& set : sets) {
        for (auto const& p : set) {
            if (worst.empty()) {
                worst = p;
            }
            for (std::size_t j = 0; j < p.size(); ++j) {
                worst[j] = std::max(worst[j], p[j]);
            }
        }
    }
    for (double& w : worst) {
        w += 0.1 * std::max(std::abs(w), 1e-12);
    }
    return worst;
}

} // namespace nsga3fo
