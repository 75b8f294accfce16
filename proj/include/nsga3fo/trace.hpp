#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nsga3fo/core.hpp"
#include "nsga3fo/metrics.hpp"
#include "nsga3fo/problem.hpp"
#include "nsga3fo/sorting.hpp"

namespace nsga3fo {

// Evaluates members in place. Results land in per-member slots, so the outcome does not
// depend on the worker count; the lowest-index failure is rethrown with its genes.
inline void evaluateAll(Problem const& problem, std::span<Individual> members, std::size_t workers = 1) {
    std::vector<std::exception_ptr> errors(members.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                Evaluation e = problem.evaluate(members[i].genes);
                if (e.objectives.size() != problem.objectiveCount) {
                    throw std::runtime_error("wrong objective count");
                }
                members[i].objectives = std::move(e.objectives);
                members[i].violation = e.violation;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    workers = std::max<std::size_t>(1, std::min(workers, members.size()));
    if (workers == 1) {
        work(0, members.size());
    } else {
        std::vector<std::jthread> threads;
        std::size_t const chunk = (members.size() + workers - 1) / workers;
        for (std::size_t begin = 0; begin < members.size(); begin += chunk) {
            threads.emplace_back(work, begin, std::min(members.size(), begin + chunk));
        }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (errors[i]) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (std::exception const& e) {
                throw EvaluationError(members[i].genes, e.what());
            }
        }
    }
}

inline constexpr std::size_t kAlive = std::numeric_limits<std::size_t>::max();

struct ArchiveEntry {
    Point objectives;
    std::vector<double> genes;
    std::size_t born = 0;
    std::size_t died = kAlive;  // first generation at which it is dominated
};

// Best-so-far set of feasible non-dominated solutions, with lifetimes so that the
// archive can be replayed at any generation.
class ParetoArchive {
public:
    void insert(Individual const& ind, std::size_t generation) {
        if (!ind.feasible()) {
            return;
        }
        for (auto i : alive_) {
            auto const& other = entries_[i].objectives;
            if (other == ind.objectives || dominates(other, ind.objectives)) {
                return;
            }
        }
        std::vector<std::size_t> survivors;
        survivors.reserve(alive_.size() + 1);
        for (auto i : alive_) {
            if (dominates(ind.objectives, entries_[i].objectives)) {
                entries_[i].died = generation;
            } else {
                survivors.push_back(i);
            }
        }
        survivors.push_back(entries_.size());
        alive_ = std::move(survivors);
        entries_.push_back({ ind.objectives, ind.genes, generation, kAlive });
    }

    [[nodiscard]] PointSet aliveAt(std::size_t generation) const {
        PointSet out;
        for (auto const& e : entries_) {
            if (e.born <= generation && generation < e.died) {
                out.push_back(e.objectives);
            }
        }
        return out;
    }

    [[nodiscard]] PointSet current() const {
        PointSet out;
        for (auto i : alive_) {
            out.push_back(entries_[i].objectives);
        }
        return out;
    }

    [[nodiscard]] std::vector<ArchiveEntry> const& entries() const { return entries_; }

private:
    std::vector<ArchiveEntry> entries_;
    std::vector<std::size_t> alive_;
};

struct TraceRecord {
    std::size_t generation = 0;
    std::size_t evaluations = 0;
    double feasibleFraction = 0.0;
    Point best;
    Point mean;
    double igd = std::numeric_limits<double>::quiet_NaN();  // population front vs. true front
    double hv = std::numeric_limits<double>::quiet_NaN();   // archive, filled by fillHypervolume()
};

struct RunTrace {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::vector<TraceRecord> records;
    ParetoArchive archive;
    std::vector<Individual> paretoSet;  // final constrained first front
};

// Feasible non-dominated objective vectors of a member list.
inline PointSet feasibleFront(std::vector<Individual> const& members) {
    PointSet feasible;
    for (auto const& m : members) {
        if (m.feasible()) {
            feasible.push_back(m.objectives);
        }
    }
    PointSet front;
    for (auto i : nondominatedIndices(feasible)) {
        front.push_back(feasible[i]);
    }
    return front;
}

inline TraceRecord summarize(std::vector<Individual> const& members, std::size_t generation, std::size_t evaluations,
                             PointSet const& trueFront) {
    TraceRecord rec;
    rec.generation = generation;
    rec.evaluations = evaluations;
    if (members.empty()) {
        return rec;
    }
    std::size_t const m = members.front().objectives.size();
    rec.best.assign(m, std::numeric_limits<double>::infinity());
    rec.mean.assign(m, 0.0);
    std::size_t feasible = 0;
    for (auto const& ind : members) {
        feasible += ind.feasible() ? 1 : 0;
        for (std::size_t j = 0; j < m; ++j) {
            rec.best[j] = std::min(rec.best[j], ind.objectives[j]);
            rec.mean[j] += ind.objectives[j];
        }
    }
    for (double& v : rec.mean) {
        v /= static_cast<double>(members.size());
    }
    rec.feasibleFraction = static_cast<double>(feasible) / static_cast<double>(members.size());
    if (!trueFront.empty()) {
        PointSet const front = feasibleFront(members);
        if (!front.empty()) {
            rec.igd = igd(front, trueFront);
        }
    }
    return rec;
}

inline std::vector<Individual> constrainedFirstFront(std::vector<Individual> const& members) {
    std::vector<Individual> out;
    auto const fronts = fastNondominatedSort(members);
    if (!fronts.empty()) {
        for (auto i : fronts.front()) {
            out.push_back(members[i]);
        }
    }
    return out;
}

// Replays the archive at each recorded generation and stores its hypervolume.
inline void fillHypervolume(RunTrace& trace, Point const& ref) {
    for (auto& rec : trace.records) {
        rec.hv = hypervolume(trace.archive.aliveAt(rec.generation), ref);
    }
}

} // namespace nsga3fo
