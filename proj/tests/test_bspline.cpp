#include <cmath>

#include <gtest/gtest.h>

#include "nsga3fo/bspline.hpp"
#include "nsga3fo/core.hpp"
#include "oracles.hpp"

using namespace nsga3fo;

namespace {
// Key points of data/tasks/table2.json (degrees), one row per joint, and Plan A's time vector.
std::vector<std::vector<double>> const kJoints {
    { 43.35, 46.35, 55.04, 62.67, 68.04, 74.40, 84.13 },
    { 78.54, 86.43, 99.62, 104.06, 112.40, 124.5, 133.6 },
    { -90.05, -56.68, -39.25, -21.94, -9.04, 1.68, 12.81 },
    { 0, 1.68, 4.71, 6.51, 8.14, 12.8, 16.14 },
    { 0, 1.31, 3.65, 5.53, 6.99, 8.18, 10.15 },
    { 0, 0.68, 2.71, 4.64, 6.53, 7.31, 9.21 },
};
std::vector<double> const kPlanA { 0, 2.01, 3.77, 5.79, 6.53, 8.85, 10.48 };

double maxAbs(std::vector<double> const& v) {
    double m = 1.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}
} // namespace

TEST(Knots, CountsAndClamping) {
    std::vector<double> const two { 0, 1 };
    auto const k2 = buildKnots(two);
    EXPECT_EQ(k2.size(), 15u);
    for (int i = 0; i < 7; ++i) {
        EXPECT_EQ(k2[i], 0.0);
        EXPECT_EQ(k2[k2.size() - 1 - i], 1.0);
    }
    KeyPointSeries s { two, { 3, 4 } };
    EXPECT_EQ(interpolate(s, {}).controls().size(), 8u);

    auto const k7 = buildKnots(kPlanA);
    EXPECT_EQ(k7.size(), 20u);
    EXPECT_TRUE(std::is_sorted(k7.begin(), k7.end()));
    KeyPointSeries s7 { kPlanA, kJoints[0] };
    EXPECT_EQ(interpolate(s7, {}).controls().size(), 13u);
}

TEST(Knots, TranslationEquivariance) {
    std::vector<double> const t { 0, 1.5, 2.25, 4, 4.5 };
    std::vector<double> shifted = t;
    for (double& v : shifted) {
        v += 5.0;
    }
    auto const a = buildKnots(t);
    auto const b = buildKnots(shifted);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(b[i], a[i] + 5.0);
    }
    std::vector<double> planShift = kPlanA;
    for (double& v : planShift) {
        v += 5.0;
    }
    auto const c = buildKnots(kPlanA);
    auto const d = buildKnots(planShift);
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_NEAR(d[i], c[i] + 5.0, 1e-12);
    }
}

TEST(Knots, RejectsNonIncreasingTimes) {
    std::vector<double> const bad { 0, 1, 1, 2 };
    EXPECT_THROW(buildKnots(bad), std::invalid_argument);
    std::vector<double> const one { 0 };
    EXPECT_THROW(buildKnots(one), std::invalid_argument);
}

TEST(Interpolate, TableTwoPassThroughAndBoundary) {
    for (auto const& q : kJoints) {
        JointTrajectory const traj = interpolate({ kPlanA, q }, {});
        double const tol = 1e-9 * maxAbs(q);
        for (std::size_t k = 0; k < q.size(); ++k) {
            EXPECT_NEAR(traj.evaluate(kPlanA[k]), q[k], tol);
            EXPECT_NEAR(traj.derivatives(kPlanA[k])[0], q[k], tol);
        }
        for (double t : { kPlanA.front(), kPlanA.back() }) {
            for (std::size_t order = 1; order <= 3; ++order) {
                EXPECT_NEAR(traj.evaluate(t, order), 0.0, 1e-6);
                EXPECT_NEAR(traj.derivatives(t)[order], 0.0, 1e-6);
            }
        }
    }
}

TEST(Interpolate, NonzeroBoundaryConditions) {
    BoundaryConditions bc;
    bc.vs = 3.0;
    bc.ve = -1.5;
    bc.as = 0.5;
    bc.ae = 2.0;
    bc.js = -0.25;
    bc.je = 1.0;
    JointTrajectory const traj = interpolate({ kPlanA, kJoints[2] }, bc);
    double const t0 = kPlanA.front();
    double const tn = kPlanA.back();
    EXPECT_NEAR(traj.evaluate(t0, 1), bc.vs, 1e-6);
    EXPECT_NEAR(traj.evaluate(t0, 2), bc.as, 1e-6);
    EXPECT_NEAR(traj.evaluate(t0, 3), bc.js, 1e-6);
    EXPECT_NEAR(traj.evaluate(tn, 1), bc.ve, 1e-6);
    EXPECT_NEAR(traj.evaluate(tn, 2), bc.ae, 1e-6);
    EXPECT_NEAR(traj.evaluate(tn, 3), bc.je, 1e-6);
}

TEST(Interpolate, DerivativesMatchFiniteDifferences) {
    Rng rng(101);
    double const h = 1e-5;
    for (auto const& q : kJoints) {
        JointTrajectory const traj = interpolate({ kPlanA, q }, {});
        for (int i = 0; i < 100; ++i) {
            double const t = uniform(rng, kPlanA.front() + 1e-3, kPlanA.back() - 1e-3);
            for (std::size_t order = 1; order <= 3; ++order) {
                double const fd = (traj.evaluate(t + h, order - 1) - traj.evaluate(t - h, order - 1)) / (2 * h);
                double const exact = traj.evaluate(t, order);
                EXPECT_NEAR(exact, fd, 1e-4 * std::max(1.0, std::abs(exact))) << "order " << order << " t " << t;
            }
        }
    }
}

TEST(Interpolate, PowerBasisAgreesWithDeBoor) {
    Rng rng(55);
    for (auto const& q : kJoints) {
        JointTrajectory const traj = interpolate({ kPlanA, q }, {});
        for (int i = 0; i < 200; ++i) {
            double const t = uniform(rng, kPlanA.front(), kPlanA.back());
            auto const d = traj.derivatives(t);
            for (std::size_t order = 0; order <= 3; ++order) {
                double const ref = traj.evaluate(t, order);
                EXPECT_NEAR(d[order], ref, 1e-9 * std::max(1.0, std::abs(ref)));
            }
        }
    }
}

TEST(Interpolate, CurveMatchesCoxDeBoorRecursion) {
    JointTrajectory const traj = interpolate({ kPlanA, kJoints[1] }, {});
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        double const t = uniform(rng, kPlanA.front(), kPlanA.back());
        EXPECT_NEAR(traj.evaluate(t), oracle::curve(traj.knots(), traj.controls(), 6, t), 1e-9);
    }
    EXPECT_NEAR(traj.evaluate(kPlanA.back()), oracle::curve(traj.knots(), traj.controls(), 6, kPlanA.back()), 1e-9);
}

TEST(Interpolate, RandomSeriesSolveThenSubstitute) {
    Rng rng(999);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> t { 0.0 };
        std::vector<double> q { uniform(rng, -90, 90) };
        for (int k = 0; k < 6; ++k) {
            t.push_back(t.back() + uniform(rng, 0.5, 10));
            q.push_back(uniform(rng, -90, 90));
        }
        JointTrajectory const traj = interpolate({ t, q }, {});
        double const scale = maxAbs(q);
        for (std::size_t k = 0; k < t.size(); ++k) {
            EXPECT_NEAR(oracle::curve(traj.knots(), traj.controls(), 6, t[k]), q[k], 1e-10 * scale);
        }
    }
}

TEST(Basis, PartitionOfUnityAndLocalSupport) {
    auto const knots = buildKnots(kPlanA);
    std::size_t const nc = knots.size() - 7;
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        double const t = uniform(rng, kPlanA.front(), kPlanA.back());
        double sum = 0.0;
        for (std::size_t j = 0; j < nc; ++j) {
            double const b = oracle::basis(knots, j, 6, t);
            EXPECT_GE(b, -1e-15);
            if (t < knots[j] || t >= knots[j + 7]) {
                EXPECT_EQ(b, 0.0);
            }
            sum += b;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
    // Perturbing one control point moves the curve only on that control's support.
    JointTrajectory const base = interpolate({ kPlanA, kJoints[0] }, {});
    std::vector<double> controls = base.controls();
    controls[2] += 10.0;
    JointTrajectory const moved(base.knots(), controls);
    for (int i = 0; i < 200; ++i) {
        double const t = uniform(rng, kPlanA.front(), kPlanA.back());
        if (t >= knots[2 + 7]) {
            EXPECT_NEAR(moved.evaluate(t), base.evaluate(t), 1e-12);
        }
    }
}

TEST(Interpolate, ConstantSeries) {
    JointTrajectory const traj = interpolate({ { 0, 2 }, { 30, 30 } }, {});
    for (double t : { 0.0, 0.3, 1.0, 1.7, 2.0 }) {
        EXPECT_NEAR(traj.evaluate(t), 30.0, 1e-12);
        for (std::size_t order = 1; order <= 3; ++order) {
            EXPECT_NEAR(traj.evaluate(t, order), 0.0, 1e-9);
            EXPECT_NEAR(traj.derivatives(t)[order], 0.0, 1e-9);
        }
    }
    JointTrajectory const zero = interpolate({ { 0, 1, 3 }, { 0, 0, 0 } }, {});
    for (double t : { 0.0, 0.5, 2.5 }) {
        for (std::size_t order = 0; order <= 3; ++order) {
            EXPECT_EQ(zero.evaluate(t, order), 0.0);
        }
    }
}

TEST(Interpolate, Errors) {
    EXPECT_THROW(interpolate({ { 0, 1 }, { 1 } }, {}), std::invalid_argument);
    JointTrajectory const traj = interpolate({ { 0, 1 }, { 0, 1 } }, {});
    EXPECT_THROW(traj.evaluate(1.5), std::out_of_range);
    EXPECT_THROW(traj.evaluate(-0.1), std::out_of_range);
    EXPECT_THROW(traj.evaluate(0.5, 4), std::invalid_argument);
    EXPECT_THROW(JointTrajectory({ 0, 0, 1, 1 }, { 1, 2 }), std::invalid_argument);
}
