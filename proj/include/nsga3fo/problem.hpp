#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsga3fo/core.hpp"

namespace nsga3fo {

struct Bounds {
    double lower = 0.0;
    double upper = 1.0;
};

struct Evaluation {
    std::vector<double> objectives;
    double violation = 0.0;
};

// Everything an optimizer needs to know about a problem. `evaluate` must be a
// pure function of the genes; optimizers may call it from several threads.
struct Problem {
    std::string name;
    std::size_t dimension = 0;
    std::size_t objectiveCount = 0;
    std::vector<Bounds> bounds;
    std::function<Evaluation(std::span<double const>)> evaluate;
    // Deterministic sampler of the analytic Pareto front; empty when unknown.
    std::function<PointSet(std::size_t)> trueFront;
};

// Raised when a problem's evaluate() fails; carries the genes that triggered it.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(std::vector<double> genes, std::string const& what)
        : std::runtime_error("evaluation failed: " + what), genes_(std::move(genes)) { }

    [[nodiscard]] std::vector<double> const& genes() const { return genes_; }

private:
    std::vector<double> genes_;
};

inline void validateProblem(Problem const& problem) {
    if (problem.dimension == 0 || problem.bounds.size() != problem.dimension) {
        throw std::invalid_argument("problem '" + problem.name + "': bounds do not match dimension");
    }
    if (problem.objectiveCount < 2) {
        throw std::invalid_argument("problem '" + problem.name + "': needs at least two objectives");
    }
    if (!problem.evaluate) {
        throw std::invalid_argument("problem '" + problem.name + "': no evaluate function");
    }
    for (auto const& b : problem.bounds) {
        if (!(b.lower <= b.upper)) {
            throw std::invalid_argument("problem '" + problem.name + "': inverted bounds");
        }
    }
}

} // namespace nsga3fo
