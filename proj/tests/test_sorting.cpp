#include <gtest/gtest.h>

#include "nsga3fo/sorting.hpp"
#include "oracles.hpp"

using namespace nsga3fo;

namespace {
std::vector<Individual> fromObjectives(PointSet const& pts) {
    std::vector<Individual> pop;
    for (auto const& p : pts) {
        Individual ind;
        ind.objectives = p;
        pop.push_back(ind);
    }
    return pop;
}
} // namespace

TEST(FastNondominatedSort, SmallExamples) {
    auto const fronts = fastNondominatedSort(fromObjectives({ { 1, 2 }, { 2, 1 }, { 3, 3 } }));
    EXPECT_EQ(fronts, (Fronts { { 0, 1 }, { 2 } }));
    EXPECT_EQ(fastNondominatedSort(fromObjectives({ { 4, 4 } })), (Fronts { { 0 } }));
    EXPECT_TRUE(fastNondominatedSort(std::vector<Individual> {}).empty());
}

TEST(FastNondominatedSort, MatchesBruteForceOnRandomPopulations) {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t const n = 1 + uniformIndex(rng, 64);
        std::size_t const m = 2 + uniformIndex(rng, 4);
        std::vector<Individual> pop(n);
        bool const coarse = trial % 3 == 0;  // integer grid forces ties and duplicates
        for (auto& ind : pop) {
            for (std::size_t j = 0; j < m; ++j) {
                ind.objectives.push_back(coarse ? std::floor(uniform(rng, 0, 4)) : uniform01(rng));
            }
            if (trial % 4 == 1 && uniform01(rng) < 0.3) {
                ind.violation = std::floor(uniform(rng, 0, 3)) * 0.5 + 0.5;
            }
        }
        ASSERT_EQ(fastNondominatedSort(pop), oracle::bruteForceFronts(pop)) << "trial " << trial;
    }
}

TEST(FastNondominatedSort, TwoHundredPointsThreeObjectives) {
    Rng rng(5);
    std::vector<Individual> pop(200);
    for (auto& ind : pop) {
        ind.objectives = { uniform01(rng), uniform01(rng), uniform01(rng) };
    }
    EXPECT_EQ(fastNondominatedSort(pop), oracle::bruteForceFronts(pop));
}

TEST(ConstrainedDomination, FeasibleBeatsInfeasible) {
    Individual a;
    a.objectives = { 10, 10 };
    Individual b;
    b.objectives = { 0, 0 };
    b.violation = 0.1;
    EXPECT_TRUE(constrainedDominates(a, b));
    EXPECT_FALSE(constrainedDominates(b, a));
    Individual c = b;
    c.violation = 0.05;
    EXPECT_TRUE(constrainedDominates(c, b));
    auto const fronts = fastNondominatedSort(std::vector<Individual> { b, a, c });
    EXPECT_EQ(fronts, (Fronts { { 1 }, { 2 }, { 0 } }));
}

TEST(Ranks, AssignedFromFronts) {
    auto pop = fromObjectives({ { 1, 2 }, { 2, 1 }, { 3, 3 } });
    assignRanks(pop, fastNondominatedSort(pop));
    EXPECT_EQ(pop[0].rank, 0u);
    EXPECT_EQ(pop[1].rank, 0u);
    EXPECT_EQ(pop[2].rank, 1u);
}
