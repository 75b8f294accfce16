#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nsga3fo/robot.hpp"

namespace nsga3fo {

namespace detail {
inline BoundaryConditions parseBoundary(nlohmann::json const& j) {
    BoundaryConditions bc;
    bc.vs = j.value("vs", 0.0);
    bc.ve = j.value("ve", 0.0);
    bc.as = j.value("as", 0.0);
    bc.ae = j.value("ae", 0.0);
    bc.js = j.value("js", 0.0);
    bc.je = j.value("je", 0.0);
    return bc;
}

inline nlohmann::json readJsonFile(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (nlohmann::json::exception const& e) {
        throw std::runtime_error("'" + path + "': " + e.what());
    }
}
} // namespace detail

// Task schema:
//   keyPoints      [[deg, ...], ...]                 one row per key point
//   fixedSegments  [{"index": i, "duration": s}]     optional dwell segments
//   intervalBounds [hmin, hmax]                      optional, default [0.5, 10]
//   boundary       {vs, ve, as, ae, js, je} or one such object per joint; optional
//   thresholds     {"f1": 40} (strict) or {"f1": {"value": 50, "inclusive": true}}
inline TrajectoryTask taskFromJson(nlohmann::json const& j) {
    TrajectoryTask task;
    task.name = j.value("name", std::string("task"));
    task.keyPoints = j.at("keyPoints").get<std::vector<std::vector<double>>>();
    if (j.contains("fixedSegments")) {
        for (auto const& f : j.at("fixedSegments")) {
            task.fixedSegments.push_back({ f.at("index").get<std::size_t>(), f.at("duration").get<double>() });
        }
    }
    if (j.contains("intervalBounds")) {
        auto const b = j.at("intervalBounds").get<std::vector<double>>();
        if (b.size() != 2) {
            throw std::invalid_argument("task: intervalBounds must be [hmin, hmax]");
        }
        task.intervalBounds = { b[0], b[1] };
    }
    if (j.contains("boundary")) {
        auto const& b = j.at("boundary");
        if (b.is_array()) {
            for (auto const& item : b) {
                task.boundary.push_back(detail::parseBoundary(item));
            }
        } else {
            BoundaryConditions const bc = detail::parseBoundary(b);
            std::size_t const joints = task.keyPoints.empty() ? 0 : task.keyPoints.front().size();
            task.boundary.assign(joints, bc);
        }
    }
    if (j.contains("thresholds")) {
        char const* keys[] = { "f1", "f2", "f3" };
        for (std::size_t i = 0; i < 3; ++i) {
            if (!j.at("thresholds").contains(keys[i])) {
                continue;
            }
            auto const& t = j.at("thresholds").at(keys[i]);
            if (t.is_number()) {
                task.thresholds[i] = Threshold { t.get<double>(), false };
            } else {
                task.thresholds[i] = Threshold { t.at("value").get<double>(), t.value("inclusive", false) };
            }
        }
    }
    return task;
}

// Model schema: {"joints": [{inertia, viscous, gravity, tauMax, omegaMax, jerkMax,
// linearVelocityMax?, leverArm?}, ...]} or the bare joint array.
inline ArmModel modelFromJson(nlohmann::json const& j) {
    auto const& joints = j.is_array() ? j : j.at("joints");
    ArmModel model;
    for (auto const& item : joints) {
        JointModel jm;
        jm.inertia = item.at("inertia").get<double>();
        jm.viscous = item.at("viscous").get<double>();
        jm.gravity = item.at("gravity").get<double>();
        jm.tauMax = item.at("tauMax").get<double>();
        jm.omegaMax = item.at("omegaMax").get<double>();
        jm.jerkMax = item.at("jerkMax").get<double>();
        if (item.contains("linearVelocityMax")) {
            jm.linearVelocityMax = item.at("linearVelocityMax").get<double>();
        }
        jm.leverArm = item.value("leverArm", 0.0);
        model.joints.push_back(jm);
    }
    return model;
}

inline TrajectoryTask loadTask(std::string const& path) {
    try {
        return taskFromJson(detail::readJsonFile(path));
    } catch (nlohmann::json::exception const& e) {
        throw std::runtime_error("task '" + path + "': " + e.what());
    }
}

inline ArmModel loadModel(std::string const& path) {
    try {
        return modelFromJson(detail::readJsonFile(path));
    } catch (nlohmann::json::exception const& e) {
        throw std::runtime_error("model '" + path + "': " + e.what());
    }
}

} // namespace nsga3fo
