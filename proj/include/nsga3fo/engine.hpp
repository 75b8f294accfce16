#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nsga3fo/core.hpp"
#include "nsga3fo/operators.hpp"
#include "nsga3fo/problem.hpp"
#include "nsga3fo/reference.hpp"
#include "nsga3fo/selection.hpp"
#include "nsga3fo/sorting.hpp"
#include "nsga3fo/trace.hpp"

namespace nsga3fo {

enum class Algorithm { Nsga3, Nsga3Fo, MoeadBaseline };

inline std::string algorithmName(Algorithm a) {
    switch (a) {
    case Algorithm::Nsga3: return "nsga3";
    case Algorithm::Nsga3Fo: return "nsga3-fo";
    case Algorithm::MoeadBaseline: return "moead";
    }
    return "unknown";
}

inline Algorithm parseAlgorithm(std::string const& name) {
    if (name == "nsga3") {
        return Algorithm::Nsga3;
    }
    if (name == "nsga3-fo") {
        return Algorithm::Nsga3Fo;
    }
    if (name == "moead" || name == "moead-baseline") {
        return Algorithm::MoeadBaseline;
    }
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

struct AlgorithmConfig {
    Algorithm algorithm = Algorithm::Nsga3Fo;
    std::size_t populationSize = 0;  // 0: smallest multiple of 4 holding every reference point
    std::size_t divisions = 12;
    std::size_t maxEvaluations = 20000;
    std::size_t focusedCount = 1;
    std::size_t nonFocusedCount = 1;
    double sbxEta = 30.0;
    double pmEta = 20.0;
    RateState rates {};  // only the probability ranges are read
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::size_t trueFrontSamples = 1000;
};

inline std::size_t resolvedPopulationSize(AlgorithmConfig const& config, std::size_t objectiveCount) {
    if (config.populationSize != 0) {
        return config.populationSize;
    }
    std::size_t const h = referencePointCount(objectiveCount, config.divisions);
    return (h + 3) / 4 * 4;
}

inline void validateConfig(AlgorithmConfig const& config, std::size_t objectiveCount) {
    if (config.divisions < 1) {
        throw std::invalid_argument("config: divisions must be >= 1");
    }
    std::size_t const n = resolvedPopulationSize(config, objectiveCount);
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("config: population size must be even and >= 4");
    }
    if (config.algorithm == Algorithm::Nsga3Fo && config.focusedCount + config.nonFocusedCount >= n) {
        throw std::invalid_argument("config: focused + non-focused counts must be below the population size");
    }
    if (!(config.rates.pcMin <= config.rates.pcMax) || !(config.rates.pmMin <= config.rates.pmMax)) {
        throw std::invalid_argument("config: probability ranges are inverted");
    }
    if (!(config.sbxEta >= 0.0) || !(config.pmEta >= 0.0)) {
        throw std::invalid_argument("config: distribution indices must be nonnegative");
    }
}

// NSGA-III, with or without focused-operator screening, advanced one generation at a time.
class Nsga3Engine {
public:
    Nsga3Engine(Problem problem, AlgorithmConfig config)
        : problem_(std::move(problem)), config_(config), rng_(config.seed) {
        validateProblem(problem_);
        if (config_.algorithm == Algorithm::MoeadBaseline) {
            throw std::invalid_argument("Nsga3Engine: MOEA/D runs through runMoead()");
        }
        validateConfig(config_, problem_.objectiveCount);
        size_ = resolvedPopulationSize(config_, problem_.objectiveCount);
        refs_ = makeReferenceSet(problem_.objectiveCount, config_.divisions);
        if (problem_.trueFront && config_.trueFrontSamples > 0) {
            trueFront_ = problem_.trueFront(config_.trueFrontSamples);
        }
        trace_.algorithm = algorithmName(config_.algorithm);
        trace_.seed = config_.seed;
    }

    // Uniform random population within bounds. Always evaluates N members.
    void initialize() {
        pop_.members.assign(size_, Individual {});
        for (auto& ind : pop_.members) {
            ind.genes.resize(problem_.dimension);
            for (std::size_t i = 0; i < problem_.dimension; ++i) {
                ind.genes[i] = uniform(rng_, problem_.bounds[i].lower, problem_.bounds[i].upper);
            }
        }
        evaluateAll(problem_, pop_.members, config_.workers);
        evaluations_ = size_;
        pop_.generation = 0;
        for (auto const& ind : pop_.members) {
            trace_.archive.insert(ind, 0);
        }
        trace_.records.push_back(summarize(pop_.members, 0, evaluations_, trueFront_));
    }

    // Runs one generation; returns false (and changes nothing) when the budget cannot cover it.
    bool step() {
        bool const fo = config_.algorithm == Algorithm::Nsga3Fo;
        std::size_t const offspringCount = size_ + (fo ? config_.nonFocusedCount : 0);
        if (evaluations_ + offspringCount > config_.maxEvaluations) {
            return false;
        }
        if (fo) {
            stepFocused(offspringCount);
        } else {
            stepStandard();
        }
        return true;
    }

    RunTrace finish() {
        trace_.paretoSet = constrainedFirstFront(pop_.members);
        return std::move(trace_);
    }

    [[nodiscard]] Population const& population() const { return pop_; }
    [[nodiscard]] std::size_t evaluations() const { return evaluations_; }
    [[nodiscard]] std::size_t populationSize() const { return size_; }
    [[nodiscard]] Screening const& lastScreening() const { return screening_; }
    // Plane distances of the population the last step started from.
    [[nodiscard]] std::vector<double> const& lastPlaneDistances() const { return distances_; }
    [[nodiscard]] Rates lastRates() const { return rates_; }
    [[nodiscard]] RunTrace const& trace() const { return trace_; }
    [[nodiscard]] ReferenceSet const& references() const { return refs_; }
    [[nodiscard]] PointSet const& trueFront() const { return trueFront_; }

private:
    std::vector<double> computePlaneDistances(std::vector<Individual>& members) {
        PointSet const normalized = normalize(objectivesOf(members), refs_);
        std::vector<double> d(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) {
            d[i] = planeDistance(normalized[i]);
            members[i].planeDistance = d[i];
        }
        distances_ = d;
        return d;
    }

    void stepStandard() {
        auto& members = pop_.members;
        computePlaneDistances(members);
        assignRanks(members, fastNondominatedSort(members));
        rates_ = { config_.rates.pcMax, config_.rates.pmMax };
        std::vector<Individual> offspring = makeOffspring(members, size_, rates_);
        std::vector<Individual> merged = members;
        merged.insert(merged.end(), offspring.begin(), offspring.end());
        advance(std::move(merged), {}, offspring);
    }

    void stepFocused(std::size_t offspringCount) {
        auto& members = pop_.members;
        std::vector<double> const d = computePlaneDistances(members);
        screening_ = screenFocused(d, config_.focusedCount, config_.nonFocusedCount);

        std::vector<Individual> pool;
        std::vector<double> fitness;
        pool.reserve(screening_.remainder.size());
        for (auto i : screening_.remainder) {
            pool.push_back(members[i]);
            fitness.push_back(-d[i]);
        }
        assignRanks(pool, fastNondominatedSort(pool));
        rates_ = adaptiveRates(withFitness(config_.rates, fitness));
        std::vector<Individual> offspring = makeOffspring(pool, offspringCount, rates_);

        std::vector<Individual> merged;
        merged.reserve(screening_.focused.size() + pool.size() + offspring.size());
        for (auto i : screening_.focused) {
            merged.push_back(members[i]);
        }
        merged.insert(merged.end(), pool.begin(), pool.end());
        merged.insert(merged.end(), offspring.begin(), offspring.end());
        std::vector<std::size_t> pre(screening_.focused.size());
        std::iota(pre.begin(), pre.end(), 0);
        advance(std::move(merged), pre, offspring);
    }

    void advance(std::vector<Individual> merged, std::vector<std::size_t> const& preselected,
                 std::vector<Individual> const& offspring) {
        auto const keep = nichingSelect(merged, preselected, refs_, size_, rng_);
        std::vector<Individual> next;
        next.reserve(size_);
        for (auto i : keep) {
            next.push_back(std::move(merged[i]));
        }
        pop_.members = std::move(next);
        ++pop_.generation;
        for (auto const& ind : offspring) {
            trace_.archive.insert(ind, pop_.generation);
        }
        trace_.records.push_back(summarize(pop_.members, pop_.generation, evaluations_, trueFront_));
    }

    // Binary tournament on (rank, plane distance); the first draw wins ties.
    std::size_t tournament(std::vector<Individual> const& pool) {
        std::size_t const a = uniformIndex(rng_, pool.size());
        std::size_t const b = uniformIndex(rng_, pool.size());
        auto const& x = pool[a];
        auto const& y = pool[b];
        if (y.rank < x.rank || (y.rank == x.rank && y.planeDistance < x.planeDistance)) {
            return b;
        }
        return a;
    }

    std::vector<Individual> makeOffspring(std::vector<Individual> const& pool, std::size_t count, Rates rates) {
        std::vector<Individual> out;
        out.reserve(count + 1);
        double const perGene = rates.mutation / static_cast<double>(problem_.dimension);
        while (out.size() < count) {
            auto const& a = pool[tournament(pool)].genes;
            auto const& b = pool[tournament(pool)].genes;
            Individual c1;
            Individual c2;
            if (uniform01(rng_) < rates.crossover) {
                std::tie(c1.genes, c2.genes) = sbxCrossover(a, b, problem_.bounds, config_.sbxEta, rng_);
            } else {
                c1.genes = a;
                c2.genes = b;
            }
            polynomialMutation(c1.genes, problem_.bounds, config_.pmEta, perGene, rng_);
            polynomialMutation(c2.genes, problem_.bounds, config_.pmEta, perGene, rng_);
            out.push_back(std::move(c1));
            if (out.size() < count) {
                out.push_back(std::move(c2));
            }
        }
        evaluateAll(problem_, out, config_.workers);
        evaluations_ += out.size();
        return out;
    }

    Problem problem_;
    AlgorithmConfig config_;
    Rng rng_;
    std::size_t size_ = 0;
    ReferenceSet refs_;
    PointSet trueFront_;
    Population pop_;
    std::size_t evaluations_ = 0;
    Screening screening_;
    std::vector<double> distances_;
    Rates rates_;
    RunTrace trace_;
};

} // namespace nsga3fo
