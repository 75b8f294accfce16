#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsga3fo/bspline.hpp"
#include "nsga3fo/problem.hpp"

namespace nsga3fo {

// Decoupled per-joint dynamics tau = I*alpha + c*omega + g*cos(q), and motion limits.
struct JointModel {
    double inertia = 1.0;    // kg m^2
    double viscous = 0.0;    // N m s / deg
    double gravity = 0.0;    // N m
    double tauMax = 1.0;     // N m
    double omegaMax = 1.0;   // deg/s
    double jerkMax = 1.0;    // deg/s^3
    std::optional<double> linearVelocityMax;  // m/s at the joint's lever arm; unchecked when absent
    double leverArm = 0.0;   // m
};

struct ArmModel {
    std::vector<JointModel> joints;
};

// Placeholder parameters for a six-joint construction arm (not measured values).
inline ArmModel defaultArmModel() {
    std::array<double, 6> const inertia { 50, 40, 30, 8, 5, 2 };
    std::array<double, 6> const gravity { 400, 300, 200, 50, 30, 10 };
    std::array<double, 6> const tauMax { 3000, 2500, 2000, 500, 300, 100 };
    ArmModel model;
    for (std::size_t i = 0; i < 6; ++i) {
        JointModel j;
        j.inertia = inertia[i];
        j.viscous = 0.5;
        j.gravity = gravity[i];
        j.tauMax = tauMax[i];
        j.omegaMax = 30.0;
        j.jerkMax = 200.0;
        model.joints.push_back(j);
    }
    return model;
}

struct FixedSegment {
    std::size_t index = 0;  // segment between key points index and index + 1
    double duration = 0.0;  // s
};

struct Threshold {
    double value = 0.0;
    bool inclusive = false;  // <= instead of <

    [[nodiscard]] bool admits(double x) const { return inclusive ? x <= value : x < value; }
};

struct TrajectoryTask {
    std::string name = "task";
    std::vector<std::vector<double>> keyPoints;  // nodes x joints, degrees
    std::vector<FixedSegment> fixedSegments;
    Bounds intervalBounds { 0.5, 10.0 };
    std::vector<BoundaryConditions> boundary;   // one per joint; empty = rest to rest
    std::array<std::optional<Threshold>, 3> thresholds;  // caps on f1, f2, f3

    [[nodiscard]] std::size_t jointCount() const { return keyPoints.empty() ? 0 : keyPoints.front().size(); }
    [[nodiscard]] std::size_t segmentCount() const { return keyPoints.empty() ? 0 : keyPoints.size() - 1; }
    [[nodiscard]] std::size_t freeSegmentCount() const { return segmentCount() - fixedSegments.size(); }

    [[nodiscard]] BoundaryConditions boundaryFor(std::size_t joint) const {
        return boundary.empty() ? BoundaryConditions {} : boundary.at(joint);
    }
};

inline void validateTask(TrajectoryTask const& task, ArmModel const& model) {
    if (task.keyPoints.size() < 2) {
        throw std::invalid_argument("task: need at least two key points");
    }
    std::size_t const joints = task.jointCount();
    if (joints == 0) {
        throw std::invalid_argument("task: key points have no joints");
    }
    for (auto const& row : task.keyPoints) {
        if (row.size() != joints) {
            throw std::invalid_argument("task: key-point rows differ in width");
        }
    }
    if (model.joints.size() != joints) {
        throw std::invalid_argument("task: model joint count does not match key-point width");
    }
    if (!task.boundary.empty() && task.boundary.size() != joints) {
        throw std::invalid_argument("task: boundary conditions must be given for every joint");
    }
    if (!(task.intervalBounds.lower > 0.0) || !(task.intervalBounds.lower <= task.intervalBounds.upper)) {
        throw std::invalid_argument("task: interval bounds need 0 < hmin <= hmax");
    }
    std::vector<bool> seen(task.segmentCount(), false);
    for (auto const& f : task.fixedSegments) {
        if (f.index >= task.segmentCount() || seen[f.index]) {
            throw std::invalid_argument("task: fixed segment index out of range or repeated");
        }
        if (!(f.duration > 0.0)) {
            throw std::invalid_argument("task: fixed segment durations must be positive");
        }
        seen[f.index] = true;
    }
    if (task.freeSegmentCount() == 0) {
        throw std::invalid_argument("task: no free segments to optimize");
    }
}

// Per-segment durations: fixed segments at their declared slots, genes fill the rest in order.
inline std::vector<double> segmentDurations(std::span<double const> genes, TrajectoryTask const& task) {
    if (genes.size() != task.freeSegmentCount()) {
        throw std::invalid_argument("segmentDurations: gene count must equal the free segment count");
    }
    std::vector<double> durations(task.segmentCount(), 0.0);
    std::vector<bool> fixed(task.segmentCount(), false);
    for (auto const& f : task.fixedSegments) {
        durations[f.index] = f.duration;
        fixed[f.index] = true;
    }
    std::size_t g = 0;
    for (std::size_t s = 0; s < durations.size(); ++s) {
        if (!fixed[s]) {
            durations[s] = genes[g++];
        }
    }
    return durations;
}

inline std::vector<double> timeVectorFromGenes(std::span<double const> genes, TrajectoryTask const& task) {
    std::vector<double> const durations = segmentDurations(genes, task);
    std::vector<double> times { 0.0 };
    for (double d : durations) {
        times.push_back(times.back() + d);
    }
    return times;
}

struct JointExtremes {
    double torque = 0.0;    // max |tau|, N m
    double jerk = 0.0;      // max |j|, deg/s^3
    double omega = 0.0;     // max |omega|, deg/s
    double linearVelocity = 0.0;  // max |omega| * lever arm, m/s
};

struct JointMargins {
    JointExtremes peak;
    double torqueMargin = 0.0;  // limit - peak; negative means violated
    double jerkMargin = 0.0;
    double omegaMargin = 0.0;
    std::optional<double> linearVelocityMargin;
};

struct ConstraintReport {
    std::vector<JointMargins> joints;
    double violation = 0.0;
};

struct ObjectiveEvaluation {
    double f1 = 0.0;  // s
    double f2 = 0.0;  // sum over joints of RMS jerk
    double f3 = 0.0;  // sum over joints of RMS mechanical power
    double violation = 0.0;
    std::size_t sampleCount = 0;
};

inline constexpr std::size_t kMinTrajectorySamples = 100;

namespace detail {
inline constexpr double kDegToRad = std::numbers::pi / 180.0;

inline double exceedance(double peak, double limit) {
    double const over = peak - limit;
    return over > 0.0 ? over / (limit > 0.0 ? limit : 1.0) : 0.0;
}

struct TrajectoryAnalysis {
    ObjectiveEvaluation objectives;
    ConstraintReport constraints;
};

inline TrajectoryAnalysis analyze(TrajectoryTask const& task, std::span<double const> timeVector, ArmModel const& model,
                                  std::size_t samples) {
    if (samples < kMinTrajectorySamples) {
        throw std::invalid_argument("trajectory sampling needs at least 100 samples");
    }
    if (timeVector.size() != task.keyPoints.size()) {
        throw std::invalid_argument("time vector length must equal the key-point count");
    }
    std::size_t const joints = task.jointCount();
    double const t0 = timeVector.front();
    double const total = timeVector.back() - t0;
    double const h = total / static_cast<double>(samples - 1);

    TrajectoryAnalysis out;
    out.objectives.f1 = total;
    out.objectives.sampleCount = samples;
    out.constraints.joints.resize(joints);
    for (std::size_t j = 0; j < joints; ++j) {
        KeyPointSeries series;
        series.times.assign(timeVector.begin(), timeVector.end());
        for (auto const& row : task.keyPoints) {
            series.values.push_back(row[j]);
        }
        JointTrajectory const traj = interpolate(series, task.boundaryFor(j));
        JointModel const& jm = model.joints[j];
        JointExtremes peak;
        double jerkIntegral = 0.0;
        double powerIntegral = 0.0;
        double prevJerk2 = 0.0;
        double prevPower2 = 0.0;
        for (std::size_t k = 0; k < samples; ++k) {
            double const t = k + 1 == samples ? timeVector.back() : t0 + h * static_cast<double>(k);
            auto const d = traj.derivatives(t);
            double const omegaRad = d[1] * kDegToRad;
            double const tau = jm.inertia * d[2] * kDegToRad + jm.viscous * d[1] + jm.gravity * std::cos(d[0] * kDegToRad);
            double const power = omegaRad * tau;
            double const jerk2 = d[3] * d[3];
            double const power2 = power * power;
            if (k > 0) {
                jerkIntegral += 0.5 * h * (prevJerk2 + jerk2);
                powerIntegral += 0.5 * h * (prevPower2 + power2);
            }
            prevJerk2 = jerk2;
            prevPower2 = power2;
            peak.torque = std::max(peak.torque, std::abs(tau));
            peak.jerk = std::max(peak.jerk, std::abs(d[3]));
            peak.omega = std::max(peak.omega, std::abs(d[1]));
            peak.linearVelocity = std::max(peak.linearVelocity, std::abs(omegaRad) * jm.leverArm);
        }
        out.objectives.f2 += std::sqrt(jerkIntegral / total);
        out.objectives.f3 += std::sqrt(powerIntegral / total);

        JointMargins& margins = out.constraints.joints[j];
        margins.peak = peak;
        margins.torqueMargin = jm.tauMax - peak.torque;
        margins.jerkMargin = jm.jerkMax - peak.jerk;
        margins.omegaMargin = jm.omegaMax - peak.omega;
        double v = exceedance(peak.torque, jm.tauMax) + exceedance(peak.jerk, jm.jerkMax) + exceedance(peak.omega, jm.omegaMax);
        if (jm.linearVelocityMax) {
            margins.linearVelocityMargin = *jm.linearVelocityMax - peak.linearVelocity;
            v += exceedance(peak.linearVelocity, *jm.linearVelocityMax);
        }
        out.constraints.violation += v;
    }
    out.objectives.violation = out.constraints.violation;
    return out;
}
} // namespace detail

inline constexpr std::size_t kDefaultTrajectorySamples = 1000;

// f1 = total time; f2 = sum of per-joint RMS jerk; f3 = sum of per-joint RMS power
// (omega * tau); integrals by the trapezoidal rule on `samples` uniform times.
inline ObjectiveEvaluation evaluateObjectives(TrajectoryTask const& task, std::span<double const> timeVector, ArmModel const& model,
                                              std::size_t samples = kDefaultTrajectorySamples) {
    return detail::analyze(task, timeVector, model, samples).objectives;
}

// Sampled peaks of |tau|, |jerk|, |omega| (and linear speed when configured) against the
// model limits; violation sums the relative exceedances.
inline ConstraintReport checkConstraints(TrajectoryTask const& task, std::span<double const> timeVector, ArmModel const& model,
                                         std::size_t samples = kDefaultTrajectorySamples) {
    return detail::analyze(task, timeVector, model, samples).constraints;
}

inline bool meetsThresholds(TrajectoryTask const& task, ObjectiveEvaluation const& e) {
    std::array<double, 3> const f { e.f1, e.f2, e.f3 };
    for (std::size_t i = 0; i < 3; ++i) {
        if (task.thresholds[i] && !task.thresholds[i]->admits(f[i])) {
            return false;
        }
    }
    return true;
}

// Decision variables are the free segment durations.
inline Problem makeTaskProblem(TrajectoryTask const& task, ArmModel const& model, std::size_t samples = kDefaultTrajectorySamples) {
    validateTask(task, model);
    if (samples < kMinTrajectorySamples) {
        throw std::invalid_argument("makeTaskProblem: need at least 100 samples");
    }
    Problem p;
    p.name = task.name;
    p.dimension = task.freeSegmentCount();
    p.objectiveCount = 3;
    p.bounds.assign(p.dimension, task.intervalBounds);
    p.evaluate = [task, model, samples](std::span<double const> genes) {
        std::vector<double> const times = timeVectorFromGenes(genes, task);
        ObjectiveEvaluation const e = evaluateObjectives(task, times, model, samples);
        return Evaluation { { e.f1, e.f2, e.f3 }, e.violation };
    };
    return p;
}

} // namespace nsga3fo
