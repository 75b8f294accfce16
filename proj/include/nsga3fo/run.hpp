#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "nsga3fo/engine.hpp"

namespace nsga3fo {

namespace detail {
inline double tchebycheff(Point const& f, Point const& w, Point const& ideal) {
    double g = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        g = std::max(g, std::max(w[j], 1e-6) * std::abs(f[j] - ideal[j]));
    }
    return g;
}

inline bool moeadBetter(Individual const& child, Individual const& incumbent, Point const& w, Point const& ideal) {
    if (child.feasible() != incumbent.feasible()) {
        return child.feasible();
    }
    if (!child.feasible()) {
        return child.violation < incumbent.violation;
    }
    return tchebycheff(child.objectives, w, ideal) <= tchebycheff(incumbent.objectives, w, ideal);
}
} // namespace detail

// Minimal Tchebycheff MOEA/D: one subproblem per Das-Dennis weight, neighbourhood of 20,
// SBX + polynomial mutation, unlimited neighbour replacement. Comparison baseline only.
inline RunTrace runMoead(Problem const& problem, AlgorithmConfig const& config) {
    validateProblem(problem);
    if (config.divisions < 1) {
        throw std::invalid_argument("config: divisions must be >= 1");
    }
    std::size_t const m = problem.objectiveCount;
    PointSet const weights = dasDennis(m, config.divisions);
    std::size_t const n = weights.size();
    std::size_t const t = std::min<std::size_t>(20, n);
    Rng rng(config.seed);

    std::vector<std::vector<std::size_t>> neighbours(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return detail::euclidean(weights[i], weights[a]) < detail::euclidean(weights[i], weights[b]);
        });
        neighbours[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t));
    }

    PointSet trueFront;
    if (problem.trueFront && config.trueFrontSamples > 0) {
        trueFront = problem.trueFront(config.trueFrontSamples);
    }
    RunTrace trace;
    trace.algorithm = algorithmName(Algorithm::MoeadBaseline);
    trace.seed = config.seed;

    std::vector<Individual> pop(n);
    for (auto& ind : pop) {
        ind.genes.resize(problem.dimension);
        for (std::size_t i = 0; i < problem.dimension; ++i) {
            ind.genes[i] = uniform(rng, problem.bounds[i].lower, problem.bounds[i].upper);
        }
    }
    evaluateAll(problem, pop, config.workers);
    std::size_t evaluations = n;
    Point ideal(m, std::numeric_limits<double>::infinity());
    for (auto const& ind : pop) {
        for (std::size_t j = 0; j < m; ++j) {
            ideal[j] = std::min(ideal[j], ind.objectives[j]);
        }
        trace.archive.insert(ind, 0);
    }
    trace.records.push_back(summarize(pop, 0, evaluations, trueFront));

    double const perGene = 1.0 / static_cast<double>(problem.dimension);
    std::size_t generation = 0;
    while (evaluations + n <= config.maxEvaluations) {
        ++generation;
        for (std::size_t i = 0; i < n; ++i) {
            auto const& hood = neighbours[i];
            auto const& a = pop[hood[uniformIndex(rng, hood.size())]].genes;
            auto const& b = pop[hood[uniformIndex(rng, hood.size())]].genes;
            std::vector<Individual> child(1);
            child[0].genes = sbxCrossover(a, b, problem.bounds, config.sbxEta, rng).first;
            polynomialMutation(child[0].genes, problem.bounds, config.pmEta, perGene, rng);
            evaluateAll(problem, child, 1);
            ++evaluations;
            for (std::size_t j = 0; j < m; ++j) {
                ideal[j] = std::min(ideal[j], child[0].objectives[j]);
            }
            for (auto k : hood) {
                if (detail::moeadBetter(child[0], pop[k], weights[k], ideal)) {
                    pop[k] = child[0];
                }
            }
            trace.archive.insert(child[0], generation);
        }
        trace.records.push_back(summarize(pop, generation, evaluations, trueFront));
    }
    trace.paretoSet = constrainedFirstFront(pop);
    return trace;
}

// Full optimization run: random initialization, then generations until the evaluation
// budget cannot cover another one. A budget below the population size still yields the
// evaluated initial population.
inline RunTrace run(Problem const& problem, AlgorithmConfig const& config) {
    if (config.algorithm == Algorithm::MoeadBaseline) {
        return runMoead(problem, config);
    }
    Nsga3Engine engine(problem, config);
    engine.initialize();
    while (engine.step()) {
    }
    return engine.finish();
}

} // namespace nsga3fo
