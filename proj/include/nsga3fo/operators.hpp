#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "nsga3fo/core.hpp"
#include "nsga3fo/problem.hpp"

namespace nsga3fo {

// Probability ranges and the fitness statistics of the current selection pool.
struct RateState {
    double pcMax = 1.0;
    double pcMin = 0.6;
    double pmMax = 1.0;
    double pmMin = 0.5;
    double fBar = 0.0;
    double fMax = 0.0;
    double fMin = 0.0;
};

struct Rates {
    double crossover = 1.0;
    double mutation = 1.0;
};

// Cosine-sigmoid adaptive crossover/mutation probabilities. When the population
// maximum exceeds the mean, both stay at their maxima; a flat population (no
// spread, or mean equal to minimum) also keeps the maxima.
inline Rates adaptiveRates(RateState const& s) {
    Rates const top { s.pcMax, s.pmMax };
    if (s.fMax > s.fBar) {
        return top;
    }
    double const denom = s.fBar - s.fMin;
    if (!(denom > 0.0) || s.fMax == s.fMin) {
        return top;
    }
    double const ratio = (s.fBar - s.fMax) / denom;
    double const damp = 1.0 / (1.0 + std::exp(std::cos(ratio * std::numbers::pi)));
    Rates r;
    r.crossover = std::clamp(s.pcMax - (s.pcMax - s.pcMin) * damp, s.pcMin, s.pcMax);
    r.mutation = std::clamp(s.pmMax - (s.pmMax - s.pmMin) * damp, s.pmMin, s.pmMax);
    return r;
}

inline RateState withFitness(RateState base, std::span<double const> fitness) {
    if (fitness.empty()) {
        base.fBar = base.fMax = base.fMin = 0.0;
        return base;
    }
    double sum = 0.0;
    base.fMax = fitness.front();
    base.fMin = fitness.front();
    for (double f : fitness) {
        sum += f;
        base.fMax = std::max(base.fMax, f);
        base.fMin = std::min(base.fMin, f);
    }
    base.fBar = sum / static_cast<double>(fitness.size());
    return base;
}

// Simulated binary crossover with a single spread factor per gene, limited by the
// nearer bound so that both children stay feasible and their midpoint equals the
// parents' midpoint. Each gene crosses with probability 1/2.
inline std::pair<std::vector<double>, std::vector<double>>
sbxCrossover(std::span<double const> a, std::span<double const> b, std::span<Bounds const> bounds, double eta, Rng& rng) {
    std::vector<double> c1(a.begin(), a.end());
    std::vector<double> c2(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (uniform01(rng) > 0.5 || std::abs(a[i] - b[i]) <= 1e-14) {
            continue;
        }
        double const y1 = std::min(a[i], b[i]);
        double const y2 = std::max(a[i], b[i]);
        double const lb = bounds[i].lower;
        double const ub = bounds[i].upper;
        double const diff = y2 - y1;
        double const betaBound = 1.0 + 2.0 * std::max(0.0, std::min(y1 - lb, ub - y2)) / diff;
        double const alpha = 2.0 - std::pow(betaBound, -(eta + 1.0));
        double const u = uniform01(rng);
        double const betaq = u <= 1.0 / alpha
            ? std::pow(u * alpha, 1.0 / (eta + 1.0))
            : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
        double const mid = 0.5 * (y1 + y2);
        double const half = 0.5 * betaq * diff;
        double const lo = std::clamp(mid - half, lb, ub);
        double const hi = std::clamp(mid + half, lb, ub);
        if (uniform01(rng) <= 0.5) {
            c1[i] = hi;
            c2[i] = lo;
        } else {
            c1[i] = lo;
            c2[i] = hi;
        }
    }
    return { std::move(c1), std::move(c2) };
}

// Bounded polynomial mutation; each gene mutates with probability perGene.
inline void polynomialMutation(std::span<double> genes, std::span<Bounds const> bounds, double eta, double perGene, Rng& rng) {
    double const power = 1.0 / (eta + 1.0);
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (!(uniform01(rng) < perGene)) {
            continue;
        }
        double const yl = bounds[i].lower;
        double const yu = bounds[i].upper;
        double const range = yu - yl;
        if (range <= 0.0) {
            continue;
        }
        double const y = genes[i];
        double const r = uniform01(rng);
        double deltaq = 0.0;
        if (r < 0.5) {
            double const xy = 1.0 - (y - yl) / range;
            double const val = 2.0 * r + (1.0 - 2.0 * r) * std::pow(xy, eta + 1.0);
            deltaq = std::pow(val, power) - 1.0;
        } else {
            double const xy = 1.0 - (yu - y) / range;
            double const val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * std::pow(xy, eta + 1.0);
            deltaq = 1.0 - std::pow(val, power);
        }
        genes[i] = std::clamp(y + deltaq * range, yl, yu);
    }
}

} // namespace nsga3fo
