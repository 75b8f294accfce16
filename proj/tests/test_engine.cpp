#include <atomic>
#include <memory>

#include <gtest/gtest.h>

#include "nsga3fo/problems.hpp"
#include "nsga3fo/run.hpp"

using namespace nsga3fo;

namespace {
AlgorithmConfig config(Algorithm a, std::uint64_t seed, std::size_t budget) {
    AlgorithmConfig c;
    c.algorithm = a;
    c.seed = seed;
    c.maxEvaluations = budget;
    c.trueFrontSamples = 200;
    return c;
}

bool sameMembers(std::vector<Individual> const& a, std::vector<Individual> const& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].genes != b[i].genes || a[i].objectives != b[i].objectives) {
            return false;
        }
    }
    return true;
}

bool contains(std::vector<Individual> const& pop, Individual const& x) {
    for (auto const& m : pop) {
        if (m.genes == x.genes && m.objectives == x.objectives) {
            return true;
        }
    }
    return false;
}
} // namespace

TEST(Config, DefaultPopulationCoversReferencePoints) {
    AlgorithmConfig c;
    EXPECT_EQ(resolvedPopulationSize(c, 3), 92u);
    c.populationSize = 7;
    EXPECT_THROW(validateConfig(c, 3), std::invalid_argument);
    c.populationSize = 4;
    c.focusedCount = 2;
    c.nonFocusedCount = 2;
    EXPECT_THROW(validateConfig(c, 3), std::invalid_argument);
}

TEST(Engine, ReductionIdentityWithZeroCounts) {
    Problem const p = dtlz3(3, 10);
    AlgorithmConfig fo = config(Algorithm::Nsga3Fo, 5, 1000000);
    fo.focusedCount = 0;
    fo.nonFocusedCount = 0;
    AlgorithmConfig std3 = config(Algorithm::Nsga3, 5, 1000000);
    Nsga3Engine a(p, fo);
    Nsga3Engine b(p, std3);
    a.initialize();
    b.initialize();
    ASSERT_TRUE(sameMembers(a.population().members, b.population().members));
    for (int g = 0; g < 50; ++g) {
        ASSERT_TRUE(a.step());
        ASSERT_TRUE(b.step());
        ASSERT_TRUE(sameMembers(a.population().members, b.population().members)) << "generation " << g + 1;
    }
}

TEST(Engine, FocusedMembersSurviveAndScreeningIsSound) {
    Problem const p = dtlz3(3, 10);
    AlgorithmConfig c = config(Algorithm::Nsga3Fo, 11, 1000000);
    c.focusedCount = 2;
    c.nonFocusedCount = 3;
    Nsga3Engine e(p, c);
    e.initialize();
    for (int g = 0; g < 60; ++g) {
        std::vector<Individual> const before = e.population().members;
        ASSERT_TRUE(e.step());
        Screening const& s = e.lastScreening();
        auto const& d = e.lastPlaneDistances();
        ASSERT_EQ(s.focused.size(), 2u);
        ASSERT_EQ(s.excluded.size(), 3u);
        double maxFocused = 0.0;
        for (auto i : s.focused) {
            maxFocused = std::max(maxFocused, d[i]);
            EXPECT_TRUE(contains(e.population().members, before[i])) << "generation " << g + 1;
        }
        for (auto i : s.excluded) {
            EXPECT_LE(maxFocused, d[i]);
        }
        Rates const r = e.lastRates();
        EXPECT_GE(r.crossover, c.rates.pcMin);
        EXPECT_LE(r.crossover, c.rates.pcMax);
        EXPECT_GE(r.mutation, c.rates.pmMin);
        EXPECT_LE(r.mutation, c.rates.pmMax);
        EXPECT_EQ(e.population().members.size(), e.populationSize());
    }
}

TEST(Engine, EvaluationsPerGenerationIncludeReplacements) {
    Problem const p = dtlz3(3, 10);
    AlgorithmConfig c = config(Algorithm::Nsga3Fo, 1, 1000000);
    c.nonFocusedCount = 2;
    Nsga3Engine e(p, c);
    e.initialize();
    EXPECT_EQ(e.evaluations(), 92u);
    e.step();
    EXPECT_EQ(e.evaluations(), 92u + 94u);
}

TEST(Run, BudgetAccounting) {
    auto counter = std::make_shared<std::atomic<std::size_t>>(0);
    Problem p = dtlz3(3, 10);
    auto inner = p.evaluate;
    p.evaluate = [inner, counter](std::span<double const> x) {
        ++*counter;
        return inner(x);
    };
    for (Algorithm a : { Algorithm::Nsga3, Algorithm::Nsga3Fo, Algorithm::MoeadBaseline }) {
        *counter = 0;
        RunTrace const t = run(p, config(a, 3, 5000));
        EXPECT_LE(counter->load(), 5000u);
        EXPECT_EQ(t.records.back().evaluations, counter->load());
        for (std::size_t i = 1; i < t.records.size(); ++i) {
            EXPECT_GT(t.records[i].evaluations, t.records[i - 1].evaluations);
            EXPECT_EQ(t.records[i].generation, i);
        }
    }
}

TEST(Run, BudgetBelowPopulationKeepsInitialOnly) {
    Problem const p = dtlz3(3, 10);
    RunTrace const t = run(p, config(Algorithm::Nsga3Fo, 0, 50));
    ASSERT_EQ(t.records.size(), 1u);
    EXPECT_EQ(t.records[0].generation, 0u);
    RunTrace const one = run(p, config(Algorithm::Nsga3Fo, 0, 92));
    EXPECT_EQ(one.records.size(), 1u);
}

TEST(Run, DeterministicAndIndependentOfWorkers) {
    Problem const p = wfg3(3, 4, 20);
    AlgorithmConfig c = config(Algorithm::Nsga3Fo, 42, 3000);
    RunTrace const a = run(p, c);
    RunTrace const b = run(p, c);
    c.workers = 3;
    RunTrace const w = run(p, c);
    for (RunTrace const* other : { &b, &w }) {
        ASSERT_EQ(a.records.size(), other->records.size());
        for (std::size_t i = 0; i < a.records.size(); ++i) {
            EXPECT_EQ(a.records[i].evaluations, other->records[i].evaluations);
            EXPECT_EQ(a.records[i].best, other->records[i].best);
            EXPECT_EQ(a.records[i].mean, other->records[i].mean);
            EXPECT_EQ(a.records[i].igd, other->records[i].igd);
        }
        EXPECT_TRUE(sameMembers(a.paretoSet, other->paretoSet));
    }
}

TEST(Run, EvaluationFailureCarriesGenes) {
    Problem p = dtlz3(3, 10);
    p.evaluate = [](std::span<double const> x) -> Evaluation {
        if (x[0] > 0.9) {
            throw std::domain_error("bad region");
        }
        return Evaluation { { x[0], 1 - x[0], 0.5 }, 0.0 };
    };
    try {
        run(p, config(Algorithm::Nsga3Fo, 1, 2000));
        FAIL() << "expected EvaluationError";
    } catch (EvaluationError const& e) {
        ASSERT_FALSE(e.genes().empty());
        EXPECT_GT(e.genes()[0], 0.9);
    }
}

TEST(Run, ArchiveHypervolumeIsNondecreasing) {
    Problem const p = dtlz3(3, 10);
    RunTrace t = run(p, config(Algorithm::Nsga3Fo, 9, 8000));
    Point const ref = worstReferencePoint({ t.archive.current() });
    fillHypervolume(t, ref);
    for (std::size_t i = 1; i < t.records.size(); ++i) {
        EXPECT_GE(t.records[i].hv, t.records[i - 1].hv);
    }
    EXPECT_GT(t.records.back().hv, 0.0);
}

TEST(Run, ConvergesOnDtlz3) {
    Problem const p = dtlz3(3, 10);
    RunTrace const t = run(p, config(Algorithm::Nsga3Fo, 2, 20000));
    EXPECT_LT(t.records.back().igd, t.records.front().igd / 10.0);
}

TEST(Run, ParetoSetIsFeasibleFirstAndNondominated) {
    Problem const p = wfg3(3, 4, 20);
    RunTrace const t = run(p, config(Algorithm::Nsga3, 4, 2000));
    ASSERT_FALSE(t.paretoSet.empty());
    for (auto const& a : t.paretoSet) {
        for (auto const& b : t.paretoSet) {
            EXPECT_FALSE(dominates(a.objectives, b.objectives));
        }
    }
}
