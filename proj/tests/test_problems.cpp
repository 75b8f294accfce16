#include <chrono>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "nsga3fo/problems.hpp"
#include "oracles.hpp"

using namespace nsga3fo;

TEST(Dtlz3, ClosedFormPoints) {
    Problem const p = dtlz3(3, 10);
    EXPECT_EQ(p.dimension, 12u);
    std::vector<double> x(12, 0.5);
    x[0] = 0.0;
    x[1] = 0.0;
    auto e = p.evaluate(x);
    EXPECT_NEAR(e.objectives[0], 1.0, 1e-15);
    EXPECT_NEAR(e.objectives[1], 0.0, 1e-15);
    EXPECT_NEAR(e.objectives[2], 0.0, 1e-15);

    x[0] = 0.5;
    x[1] = 0.5;
    e = p.evaluate(x);
    EXPECT_NEAR(e.objectives[0], 0.5, 1e-15);
    EXPECT_NEAR(e.objectives[1], 0.5, 1e-15);
    EXPECT_NEAR(e.objectives[2], std::sqrt(2.0) / 2.0, 1e-15);
    EXPECT_EQ(e.violation, 0.0);
}

TEST(Dtlz3, SphereRadiusMatchesIndependentG) {
    Problem const p = dtlz3(3, 10);
    Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> x(12);
        for (double& v : x) {
            v = uniform01(rng);
        }
        auto const f = p.evaluate(x).objectives;
        double const g = oracle::dtlzG(x, 3);
        double const r2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
        EXPECT_NEAR(r2, (1 + g) * (1 + g), 1e-9 * (1 + g) * (1 + g));
    }
}

TEST(Dtlz3, RejectsBadSizes) {
    EXPECT_THROW(dtlz3(1, 10), std::invalid_argument);
    EXPECT_THROW(dtlz3(3, 0), std::invalid_argument);
}

TEST(Dtlz3, TrueFrontOnUnitSphere) {
    Problem const p = dtlz3(3, 10);
    auto const front = sampleTrueFront(p, 1000);
    EXPECT_EQ(front.size(), 1000u);
    for (auto const& f : front) {
        EXPECT_NEAR(f[0] * f[0] + f[1] * f[1] + f[2] * f[2], 1.0, 1e-9);
    }
    auto const axes = sampleTrueFront(p, 3);
    std::set<Point> got(axes.begin(), axes.end());
    EXPECT_EQ(got, (std::set<Point> { { 1, 0, 0 }, { 0, 1, 0 }, { 0, 0, 1 } }));
}

TEST(Wfg3, AllZeroInputMatchesReferenceEvaluator) {
    Problem const p = wfg3(3, 4, 20);
    std::vector<double> const z(24, 0.0);
    auto const f = p.evaluate(z).objectives;
    auto const expected = oracle::wfg3(z, 4, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_NEAR(f[j], expected[j], 1e-12);
    }
    // Frozen from the reference evaluator: x_M = 2/3, x = (0, 1/6).
    EXPECT_NEAR(f[0], 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(f[1], 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(f[2], 20.0 / 3.0, 1e-12);
}

TEST(Wfg3, RandomInputsMatchReferenceAndRange) {
    Problem const p = wfg3(3, 4, 20);
    Rng rng(77);
    for (int i = 0; i < 10000; ++i) {
        std::vector<double> z(24);
        for (std::size_t j = 0; j < 24; ++j) {
            z[j] = uniform(rng, 0.0, 2.0 * static_cast<double>(j + 1));
        }
        auto const f = p.evaluate(z).objectives;
        auto const expected = oracle::wfg3(z, 4, 3);
        for (std::size_t j = 0; j < 3; ++j) {
            ASSERT_NEAR(f[j], expected[j], 1e-12);
            // h_j in [0,1] scaled by 2j, plus the distance term x_M in [0,1].
            ASSERT_GE(f[j], 0.0);
            ASSERT_LE(f[j], 2.0 * static_cast<double>(j + 1) + 1.0);
        }
    }
}

TEST(Wfg3, OptimalDistanceParametersReachTheFront) {
    Problem const p = wfg3(3, 4, 20);
    auto const front = sampleTrueFront(p, 2001);
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> z(24);
        for (std::size_t j = 0; j < 24; ++j) {
            double const scale = 2.0 * static_cast<double>(j + 1);
            z[j] = j < 4 ? uniform(rng, 0.0, scale) : 0.35 * scale;
        }
        auto const f = p.evaluate(z).objectives;
        EXPECT_NEAR(f[1], 2.0 * f[0], 1e-9);
        EXPECT_NEAR(f[0] / 2 + f[1] / 4 + f[2] / 6, 1.0, 1e-9);
        double best = 1e9;
        for (auto const& q : front) {
            best = std::min(best, std::hypot(f[0] - q[0], f[1] - q[1], f[2] - q[2]));
        }
        EXPECT_LT(best, 0.01);  // front sampled at spacing ~0.0034 along u
    }
}

TEST(Wfg3, TrueFrontDegenerateRelation) {
    Problem const p = wfg3(3, 4, 20);
    for (auto const& f : sampleTrueFront(p, 500)) {
        EXPECT_NEAR(f[1], 2.0 * f[0], 1e-9);
        EXPECT_NEAR(f[0] / 2 + f[1] / 4 + f[2] / 6, 1.0, 1e-9);
    }
}

TEST(Wfg3, RejectsInvalidShapes) {
    EXPECT_THROW(wfg3(3, 3, 20), std::invalid_argument);
    EXPECT_THROW(wfg3(3, 4, 3), std::invalid_argument);
    EXPECT_THROW(wfg3(1, 4, 20), std::invalid_argument);
}

TEST(Problems, UnknownFrontIsAnError) {
    Problem p = dtlz3(3, 10);
    p.trueFront = nullptr;
    EXPECT_THROW(sampleTrueFront(p, 10), std::invalid_argument);
}

TEST(Problems, DeterministicAndFast) {
    Problem const d = dtlz3(3, 10);
    Problem const w = wfg3(3, 4, 20);
    std::vector<double> x(12, 0.3);
    std::vector<double> z(24, 1.0);
    EXPECT_EQ(d.evaluate(x).objectives, d.evaluate(x).objectives);
    EXPECT_EQ(w.evaluate(z).objectives, w.evaluate(z).objectives);
    auto const start = std::chrono::steady_clock::now();
    double sink = 0.0;
    for (int i = 0; i < 100000; ++i) {
        x[2] = i * 1e-6;
        sink += d.evaluate(x).objectives[0];
    }
    auto const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_GT(sink, 0.0);
    EXPECT_LT(secs, 5.0);
}
