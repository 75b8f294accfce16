#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nsga3fo {

inline constexpr std::size_t kSplineDegree = 6;

struct KeyPointSeries {
    std::vector<double> times;   // seconds, strictly increasing
    std::vector<double> values;  // degrees
};

// Start/end velocity, acceleration and jerk (deg/s, deg/s^2, deg/s^3).
struct BoundaryConditions {
    double vs = 0.0;
    double ve = 0.0;
    double as = 0.0;
    double ae = 0.0;
    double js = 0.0;
    double je = 0.0;
};

class SplineError : public std::runtime_error {
public:
    SplineError(std::string const& what, double rcond) : std::runtime_error(what), rcond_(rcond) { }
    [[nodiscard]] double reciprocalCondition() const { return rcond_; }

private:
    double rcond_;
};

namespace bspline {

// Span s with knots[s] <= t < knots[s+1]; the right end maps to the last non-empty span.
inline std::size_t findSpan(std::span<double const> knots, std::size_t degree, std::size_t controlCount, double t) {
    std::size_t const n = controlCount - 1;
    if (t >= knots[n + 1]) {
        return n;
    }
    if (t <= knots[degree]) {
        return degree;
    }
    std::size_t lo = degree;
    std::size_t hi = n + 1;
    std::size_t mid = (lo + hi) / 2;
    while (t < knots[mid] || t >= knots[mid + 1]) {
        if (t < knots[mid]) {
            hi = mid;
        } else {
            lo = mid;
        }
        mid = (lo + hi) / 2;
    }
    return mid;
}

// Non-zero basis functions and their derivatives up to `order` at t (row k = k-th derivative).
inline std::vector<std::vector<double>> basisDerivatives(std::span<double const> knots, std::size_t degree, std::size_t span,
                                                         double t, std::size_t order) {
    std::size_t const p = degree;
    std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1, 0.0));
    std::vector<double> left(p + 1, 0.0);
    std::vector<double> right(p + 1, 0.0);
    ndu[0][0] = 1.0;
    for (std::size_t j = 1; j <= p; ++j) {
        left[j] = t - knots[span + 1 - j];
        right[j] = knots[span + j] - t;
        double saved = 0.0;
        for (std::size_t r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            double const temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    std::vector<std::vector<double>> ders(order + 1, std::vector<double>(p + 1, 0.0));
    for (std::size_t j = 0; j <= p; ++j) {
        ders[0][j] = ndu[j][p];
    }
    std::array<std::vector<double>, 2> a { std::vector<double>(p + 1, 0.0), std::vector<double>(p + 1, 0.0) };
    for (std::size_t r = 0; r <= p; ++r) {
        std::size_t s1 = 0;
        std::size_t s2 = 1;
        a[0][0] = 1.0;
        for (std::size_t k = 1; k <= order; ++k) {
            double d = 0.0;
            auto const rk = static_cast<long>(r) - static_cast<long>(k);
            auto const pk = static_cast<long>(p) - static_cast<long>(k);
            if (r >= k) {
                a[s2][0] = a[s1][0] / ndu[static_cast<std::size_t>(pk + 1)][static_cast<std::size_t>(rk)];
                d = a[s2][0] * ndu[static_cast<std::size_t>(rk)][static_cast<std::size_t>(pk)];
            }
            long const j1 = rk >= -1 ? 1 : -rk;
            long const j2 = static_cast<long>(r) - 1 <= pk ? static_cast<long>(k) - 1 : static_cast<long>(p) - static_cast<long>(r);
            for (long j = j1; j <= j2; ++j) {
                auto const uj = static_cast<std::size_t>(j);
                auto const row = static_cast<std::size_t>(pk + 1);
                auto const col = static_cast<std::size_t>(rk + j);
                a[s2][uj] = (a[s1][uj] - a[s1][uj - 1]) / ndu[row][col];
                d += a[s2][uj] * ndu[col][static_cast<std::size_t>(pk)];
            }
            if (static_cast<long>(r) <= pk) {
                a[s2][k] = -a[s1][k - 1] / ndu[static_cast<std::size_t>(pk + 1)][r];
                d += a[s2][k] * ndu[r][static_cast<std::size_t>(pk)];
            }
            ders[k][r] = d;
            std::swap(s1, s2);
        }
    }
    double factor = static_cast<double>(p);
    for (std::size_t k = 1; k <= order; ++k) {
        for (std::size_t j = 0; j <= p; ++j) {
            ders[k][j] *= factor;
        }
        factor *= static_cast<double>(p - k);
    }
    return ders;
}

// de Boor evaluation of a single curve.
inline double deBoor(std::span<double const> knots, std::size_t degree, std::span<double const> controls, double t) {
    std::size_t const s = findSpan(knots, degree, controls.size(), t);
    std::vector<double> d(degree + 1);
    for (std::size_t j = 0; j <= degree; ++j) {
        d[j] = controls[j + s - degree];
    }
    for (std::size_t r = 1; r <= degree; ++r) {
        for (std::size_t j = degree; j >= r; --j) {
            double const lo = knots[j + s - degree];
            double const hi = knots[j + 1 + s - r];
            double const alpha = (t - lo) / (hi - lo);
            d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
        }
    }
    return d[degree];
}

inline void requireIncreasing(std::span<double const> times) {
    if (times.size() < 2) {
        throw std::invalid_argument("spline: need at least two key points");
    }
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        if (!(times[i] < times[i + 1])) {
            throw std::invalid_argument("spline: key-point times must be strictly increasing");
        }
    }
}

} // namespace bspline

// Clamped degree-6 knot vector for n+1 key-point times: end knots repeated 7 times, one
// knot at every interior key point, plus one auxiliary knot at the midpoint of the middle
// interval so that n+7 control points meet n+1 pass-through and 6 boundary equations.
inline std::vector<double> buildKnots(std::span<double const> times) {
    bspline::requireIncreasing(times);
    std::size_t const n = times.size() - 1;
    std::size_t const mid = (n - 1) / 2;
    std::vector<double> knots(kSplineDegree + 1, times.front());
    for (std::size_t i = 1; i <= n; ++i) {
        if (i - 1 == mid) {
            knots.push_back(0.5 * (times[i - 1] + times[i]));
        }
        if (i < n) {
            knots.push_back(times[i]);
        }
    }
    knots.insert(knots.end(), kSplineDegree + 1, times.back());
    return knots;
}

// Degree-6 B-spline of one joint with cached derivative control nets up to jerk.
// Immutable once built.
class JointTrajectory {
public:
    JointTrajectory(std::vector<double> knots, std::vector<double> controls) : knots_(std::move(knots)) {
        if (knots_.size() != controls.size() + kSplineDegree + 1) {
            throw std::invalid_argument("JointTrajectory: knot count must equal control count + 7");
        }
        nets_[0] = std::move(controls);
        for (std::size_t r = 1; r <= 3; ++r) {
            std::size_t const q = kSplineDegree - (r - 1);  // degree of the previous net
            auto const& prev = nets_[r - 1];
            std::vector<double> next(prev.size() - 1);
            for (std::size_t j = 0; j + 1 < prev.size(); ++j) {
                double const du = knots_[j + q + r] - knots_[j + r];
                next[j] = static_cast<double>(q) * (prev[j + 1] - prev[j]) / du;
            }
            nets_[r] = std::move(next);
        }
        buildPolynomials();
    }

    [[nodiscard]] double startTime() const { return knots_.front(); }
    [[nodiscard]] double endTime() const { return knots_.back(); }
    [[nodiscard]] std::vector<double> const& knots() const { return knots_; }
    [[nodiscard]] std::vector<double> const& controls() const { return nets_[0]; }
    [[nodiscard]] std::vector<double> const& derivativeNet(std::size_t order) const { return nets_.at(order); }

    // order 0..3: position, velocity, acceleration, jerk, from the order-th control net.
    [[nodiscard]] double evaluate(double t, std::size_t order = 0) const {
        if (order > 3) {
            throw std::invalid_argument("JointTrajectory::evaluate: order must be 0..3");
        }
        if (t < startTime() || t > endTime()) {
            throw std::out_of_range("JointTrajectory::evaluate: time outside the trajectory");
        }
        std::span<double const> const knots(knots_.data() + order, knots_.size() - 2 * order);
        return bspline::deBoor(knots, kSplineDegree - order, nets_[order], t);
    }

    // Position through jerk at once, from the per-span power-basis form. Times outside
    // the domain are clamped.
    [[nodiscard]] std::array<double, 4> derivatives(double t) const {
        t = std::clamp(t, startTime(), endTime());
        auto it = std::upper_bound(spanStarts_.begin(), spanStarts_.end(), t);
        std::size_t const s = it == spanStarts_.begin() ? 0 : static_cast<std::size_t>(it - spanStarts_.begin()) - 1;
        auto const& c = coefficients_[s];
        double const h = t - spanStarts_[s];
        std::array<double, 4> out {};
        for (std::size_t r = 0; r <= 3; ++r) {
            double acc = 0.0;
            for (std::size_t k = kSplineDegree; k + 1 > r; --k) {
                double falling = 1.0;
                for (std::size_t f = 0; f < r; ++f) {
                    falling *= static_cast<double>(k - f);
                }
                acc = acc * h + falling * c[k];
            }
            out[r] = acc;
        }
        return out;
    }

private:
    void buildPolynomials() {
        std::size_t const nc = nets_[0].size();
        for (std::size_t s = kSplineDegree; s < nc; ++s) {
            if (!(knots_[s] < knots_[s + 1])) {
                continue;
            }
            auto const ders = bspline::basisDerivatives(knots_, kSplineDegree, s, knots_[s], kSplineDegree);
            std::array<double, kSplineDegree + 1> c {};
            double factorial = 1.0;
            for (std::size_t k = 0; k <= kSplineDegree; ++k) {
                if (k > 0) {
                    factorial *= static_cast<double>(k);
                }
                double v = 0.0;
                for (std::size_t j = 0; j <= kSplineDegree; ++j) {
                    v += ders[k][j] * nets_[0][s - kSplineDegree + j];
                }
                c[k] = v / factorial;
            }
            spanStarts_.push_back(knots_[s]);
            coefficients_.push_back(c);
        }
    }

    std::vector<double> knots_;
    std::array<std::vector<double>, 4> nets_;
    std::vector<double> spanStarts_;
    std::vector<std::array<double, kSplineDegree + 1>> coefficients_;
};

// Solves the square system of pass-through and boundary-derivative equations.
inline JointTrajectory interpolate(KeyPointSeries const& series, BoundaryConditions const& bc) {
    if (series.times.size() != series.values.size()) {
        throw std::invalid_argument("interpolate: times and values differ in length");
    }
    std::vector<double> knots = buildKnots(series.times);
    std::size_t const n = series.times.size() - 1;
    std::size_t const unknowns = n + kSplineDegree + 1;
    auto const dim = static_cast<Eigen::Index>(unknowns);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd b(dim);

    Eigen::Index row = 0;
    auto addRows = [&](double t, std::size_t order, std::span<double const> rhs) {
        std::size_t const s = bspline::findSpan(knots, kSplineDegree, unknowns, t);
        auto const ders = bspline::basisDerivatives(knots, kSplineDegree, s, t, order);
        for (std::size_t k = 0; k <= order; ++k) {
            for (std::size_t j = 0; j <= kSplineDegree; ++j) {
                a(row, static_cast<Eigen::Index>(s - kSplineDegree + j)) = ders[k][j];
            }
            b(row) = rhs[k];
            ++row;
        }
    };
    std::array<double, 4> const start { series.values.front(), bc.vs, bc.as, bc.js };
    std::array<double, 4> const end { series.values.back(), bc.ve, bc.ae, bc.je };
    addRows(series.times.front(), 3, start);
    for (std::size_t i = 1; i < n; ++i) {
        std::array<double, 1> const v { series.values[i] };
        addRows(series.times[i], 0, v);
    }
    addRows(series.times.back(), 3, end);

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    double const rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
        std::ostringstream msg;
        msg << "interpolate: singular interpolation system (reciprocal condition " << rcond << ")";
        throw SplineError(msg.str(), rcond);
    }
    Eigen::VectorXd const x = lu.solve(b);
    std::vector<double> controls(x.data(), x.data() + x.size());
    return JointTrajectory(std::move(knots), std::move(controls));
}

} // namespace nsga3fo
