#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsga3fo/csv.hpp"
#include "nsga3fo/metrics.hpp"
#include "nsga3fo/problems.hpp"
#include "nsga3fo/robot.hpp"
#include "nsga3fo/run.hpp"
#include "nsga3fo/task_io.hpp"

namespace nsga3fo {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitRuntime = 2,
    kExitWarning = 3,
};

struct CommonOptions {
    std::string outDir = ".";
    std::uint64_t seedBase = 0;
    std::size_t population = 0;  // 0: derived from the reference-point count
    std::size_t divisions = 12;
    std::size_t budget = 20000;
    std::size_t focused = 1;
    std::size_t nonFocused = 1;
    std::size_t workers = 1;
    bool quiet = false;
};

struct BenchConfig {
    CommonOptions common;
    std::string problem = "dtlz3";
    std::vector<std::string> algorithms { "nsga3", "nsga3-fo" };
    std::size_t seeds = 10;
    std::size_t frontSamples = 1000;
    std::string modelFile;  // task problems only; empty = built-in model
    std::size_t trajectorySamples = kDefaultTrajectorySamples;
};

struct PlanConfig {
    CommonOptions common;
    std::string taskFile;
    std::string modelFile;  // empty = built-in model
    std::string algorithm = "nsga3-fo";
    std::size_t trajectorySamples = kDefaultTrajectorySamples;
};

struct MetricsConfig {
    std::string frontFile;
    std::string referenceFrontFile;
    std::optional<Point> referencePoint;
    IgdMode igdMode = IgdMode::Standard;
};

// Thrown for bad user input; mapped to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline ArmModel modelOrDefault(std::string const& path) {
    return path.empty() ? defaultArmModel() : loadModel(path);
}

// dtlz3 | wfg3 | task:<file>
inline Problem resolveProblem(std::string const& selector, std::string const& modelFile, std::size_t samples) {
    if (selector == "dtlz3") {
        return dtlz3(3, 10);
    }
    if (selector == "wfg3") {
        return wfg3(3, 4, 20);
    }
    if (selector.rfind("task:", 0) == 0) {
        return makeTaskProblem(loadTask(selector.substr(5)), modelOrDefault(modelFile), samples);
    }
    throw UsageError("unknown problem '" + selector + "' (expected dtlz3, wfg3 or task:<file>)");
}

inline AlgorithmConfig algorithmConfig(CommonOptions const& c, Algorithm algorithm, std::uint64_t seed) {
    AlgorithmConfig cfg;
    cfg.algorithm = algorithm;
    cfg.populationSize = c.population;
    cfg.divisions = c.divisions;
    cfg.maxEvaluations = c.budget;
    cfg.focusedCount = c.focused;
    cfg.nonFocusedCount = c.nonFocused;
    cfg.seed = seed;
    cfg.workers = c.workers;
    return cfg;
}

inline std::string sanitize(std::string name) {
    for (char& ch : name) {
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') {
            ch = '_';
        }
    }
    return name;
}

inline double mean(std::vector<double> const& v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? std::nan("") : s / static_cast<double>(v.size());
}

// Sample standard deviation (n - 1).
inline double sampleStd(std::vector<double> const& v) {
    if (v.size() < 2) {
        return v.empty() ? std::nan("") : 0.0;
    }
    double const m = mean(v);
    double s = 0.0;
    for (double x : v) {
        s += (x - m) * (x - m);
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double median(std::vector<double> v) {
    if (v.empty()) {
        return std::nan("");
    }
    std::sort(v.begin(), v.end());
    std::size_t const n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline csv::Table traceTable(RunTrace const& trace) {
    csv::Table t { { "gen", "evals", "hv", "igd" }, {} };
    for (auto const& r : trace.records) {
        t.rows.push_back({ static_cast<double>(r.generation), static_cast<double>(r.evaluations), r.hv, r.igd });
    }
    return t;
}

inline std::vector<std::string> objectiveHeader(std::size_t m) {
    std::vector<std::string> h;
    for (std::size_t j = 1; j <= m; ++j) {
        h.push_back("f" + std::to_string(j));
    }
    return h;
}

// Removes every registered file unless released; keeps failed runs from leaving partial output.
class OutputGuard {
public:
    void add(std::filesystem::path p) { files_.push_back(std::move(p)); }
    void release() { files_.clear(); }
    ~OutputGuard() {
        std::error_code ec;
        for (auto const& f : files_) {
            std::filesystem::remove(f, ec);
        }
    }

private:
    std::vector<std::filesystem::path> files_;
};

inline std::string meanStd(double m, double s) {
    std::ostringstream o;
    o << std::setprecision(4) << m << "±" << std::setprecision(2) << s;
    return o.str();
}

} // namespace detail

struct BenchRun {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::size_t seedIndex = 0;
    RunTrace trace;
    PointSet front;
    double finalIgd = std::nan("");
    double finalHv = std::nan("");
};

struct BenchResult {
    std::string problem;
    Point hvReference;
    std::vector<BenchRun> runs;
};

// Runs every (algorithm, seed) pair; hypervolume uses one reference point shared by all runs
// (componentwise worst of the final archives, pushed out by 10%).
inline BenchResult runBench(BenchConfig const& config) {
    if (config.seeds < 1) {
        throw UsageError("bench: need at least one seed");
    }
    Problem const problem = detail::resolveProblem(config.problem, config.modelFile, config.trajectorySamples);
    std::vector<Algorithm> algorithms;
    for (auto const& name : config.algorithms) {
        try {
            algorithms.push_back(parseAlgorithm(name));
        } catch (std::invalid_argument const& e) {
            throw UsageError(e.what());
        }
    }
    if (algorithms.empty()) {
        throw UsageError("bench: no algorithms given");
    }
    for (auto a : algorithms) {
        AlgorithmConfig cfg = detail::algorithmConfig(config.common, a, config.common.seedBase);
        std::size_t const n = a == Algorithm::MoeadBaseline ? referencePointCount(problem.objectiveCount, cfg.divisions)
                                                            : resolvedPopulationSize(cfg, problem.objectiveCount);
        if (config.common.budget < n) {
            throw UsageError("bench: budget must cover at least one population");
        }
        if (a != Algorithm::MoeadBaseline) {
            try {
                validateConfig(cfg, problem.objectiveCount);
            } catch (std::invalid_argument const& e) {
                throw UsageError(e.what());
            }
        }
    }

    BenchResult result;
    result.problem = problem.name;
    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
        for (std::size_t k = 0; k < config.seeds; ++k) {
            BenchRun r;
            r.algorithm = algorithmName(algorithms[ai]);
            r.seedIndex = k;
            r.seed = config.common.seedBase + k;
            AlgorithmConfig cfg = detail::algorithmConfig(config.common, algorithms[ai], r.seed);
            cfg.trueFrontSamples = config.frontSamples;
            r.trace = run(problem, cfg);
            r.front = feasibleFront(r.trace.paretoSet);
            r.finalIgd = r.trace.records.back().igd;
            result.runs.push_back(std::move(r));
        }
    }
    std::vector<PointSet> finals;
    for (auto const& r : result.runs) {
        finals.push_back(r.trace.archive.current());
    }
    result.hvReference = worstReferencePoint(finals);
    for (auto& r : result.runs) {
        if (!result.hvReference.empty()) {
            fillHypervolume(r.trace, result.hvReference);
        }
        r.finalHv = r.trace.records.back().hv;
    }
    return result;
}

inline int cmdBench(BenchConfig const& config, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    BenchResult result;
    try {
        result = runBench(config);
    } catch (UsageError const& e) {
        err << "bench: " << e.what() << '\n';
        return kExitUsage;
    } catch (std::invalid_argument const& e) {
        err << "bench: " << e.what() << '\n';
        return kExitUsage;
    } catch (std::exception const& e) {
        err << "bench: " << e.what() << '\n';
        return kExitRuntime;
    }

    detail::OutputGuard guard;
    try {
        fs::create_directories(config.common.outDir);
        fs::path const dir(config.common.outDir);
        std::string const prefix = detail::sanitize(result.problem);
        for (auto const& r : result.runs) {
            std::string const stem = prefix + "_" + r.algorithm + "_seed" + std::to_string(r.seedIndex);
            guard.add(dir / (stem + ".csv"));
            csv::writeFile((dir / (stem + ".csv")).string(), detail::traceTable(r.trace));
            std::size_t const m = r.trace.records.front().best.size();
            guard.add(dir / (stem + "_front.csv"));
            csv::writeFile((dir / (stem + "_front.csv")).string(), csv::Table { detail::objectiveHeader(m), r.front });
        }
        if (!result.hvReference.empty()) {
            guard.add(dir / "hv_reference.csv");
            csv::writeFile((dir / "hv_reference.csv").string(),
                           csv::Table { detail::objectiveHeader(result.hvReference.size()), { result.hvReference } });
        }

        std::vector<std::string> order;
        std::map<std::string, std::vector<BenchRun const*>> byAlgo;
        for (auto const& r : result.runs) {
            if (byAlgo.find(r.algorithm) == byAlgo.end()) {
                order.push_back(r.algorithm);
            }
            byAlgo[r.algorithm].push_back(&r);
        }
        guard.add(dir / "summary.csv");
        std::ofstream summary(dir / "summary.csv", std::ios::binary);
        summary << "problem,algorithm,seeds,igd_mean,igd_std,igd_median,hv_mean,hv_std,hv_median\n";
        std::vector<std::string> cells;
        for (auto const& name : order) {
            std::vector<double> igds;
            std::vector<double> hvs;
            for (auto const* r : byAlgo[name]) {
                igds.push_back(r->finalIgd);
                hvs.push_back(r->finalHv);
            }
            summary << result.problem << ',' << name << ',' << igds.size() << ',' << csv::format(detail::mean(igds)) << ','
                    << csv::format(detail::sampleStd(igds)) << ',' << csv::format(detail::median(igds)) << ','
                    << csv::format(detail::mean(hvs)) << ',' << csv::format(detail::sampleStd(hvs)) << ','
                    << csv::format(detail::median(hvs)) << '\n';
            cells.push_back(detail::meanStd(detail::mean(igds), detail::sampleStd(igds)));
        }
        summary.close();
        if (!summary) {
            throw std::runtime_error("cannot write summary.csv");
        }
        if (!config.common.quiet) {
            out << "IGD (mean±std over " << config.seeds << " seeds)\n";
            out << "Test Function";
            for (auto const& name : order) {
                out << " | " << name;
            }
            out << '\n' << result.problem;
            for (auto const& c : cells) {
                out << " | " << c;
            }
            out << '\n';
        }
    } catch (std::exception const& e) {
        err << "bench: " << e.what() << '\n';
        return kExitRuntime;
    }
    guard.release();
    return kExitOk;
}

struct PlanRow {
    std::vector<double> genes;
    std::vector<double> durations;
    std::vector<double> timeVector;
    ObjectiveEvaluation eval;
};

struct PlanResult {
    TrajectoryTask task;
    RunTrace trace;
    std::vector<PlanRow> pareto;    // distinct objective vectors of the final first front
    std::vector<std::size_t> feasible;  // indices into pareto
    std::vector<std::size_t> filtered;  // feasible rows meeting the task thresholds
    std::array<std::optional<std::size_t>, 3> optimal;  // per-objective argmin among feasible rows
    Point hvReference;
};

inline PlanResult runPlan(PlanConfig const& config) {
    PlanResult result;
    ArmModel model;
    Algorithm algorithm;
    try {
        result.task = loadTask(config.taskFile);
        model = detail::modelOrDefault(config.modelFile);
        validateTask(result.task, model);
        algorithm = parseAlgorithm(config.algorithm);
    } catch (std::exception const& e) {
        throw UsageError(e.what());
    }
    Problem const problem = makeTaskProblem(result.task, model, config.trajectorySamples);
    AlgorithmConfig const cfg = detail::algorithmConfig(config.common, algorithm, config.common.seedBase);
    if (algorithm != Algorithm::MoeadBaseline) {
        try {
            validateConfig(cfg, problem.objectiveCount);
        } catch (std::invalid_argument const& e) {
            throw UsageError(e.what());
        }
    }
    result.trace = run(problem, cfg);

    std::vector<Point> seen;
    for (auto const& ind : result.trace.paretoSet) {
        if (std::find(seen.begin(), seen.end(), ind.objectives) != seen.end()) {
            continue;
        }
        seen.push_back(ind.objectives);
        PlanRow row;
        row.genes = ind.genes;
        row.durations = segmentDurations(ind.genes, result.task);
        row.timeVector = timeVectorFromGenes(ind.genes, result.task);
        row.eval.f1 = ind.objectives[0];
        row.eval.f2 = ind.objectives[1];
        row.eval.f3 = ind.objectives[2];
        row.eval.violation = ind.violation;
        row.eval.sampleCount = config.trajectorySamples;
        result.pareto.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < result.pareto.size(); ++i) {
        auto const& row = result.pareto[i];
        if (row.eval.violation > 0.0) {
            continue;
        }
        result.feasible.push_back(i);
        if (meetsThresholds(result.task, row.eval)) {
            result.filtered.push_back(i);
        }
        std::array<double, 3> const f { row.eval.f1, row.eval.f2, row.eval.f3 };
        for (std::size_t k = 0; k < 3; ++k) {
            auto& best = result.optimal[k];
            if (!best) {
                best = i;
                continue;
            }
            auto const& b = result.pareto[*best].eval;
            std::array<double, 3> const fb { b.f1, b.f2, b.f3 };
            if (f[k] < fb[k]) {
                best = i;
            }
        }
    }
    result.hvReference = worstReferencePoint({ result.trace.archive.current() });
    if (!result.hvReference.empty()) {
        fillHypervolume(result.trace, result.hvReference);
    }
    return result;
}

namespace detail {
inline nlohmann::json rowJson(PlanRow const& row) {
    return nlohmann::json {
        { "timeVector", row.timeVector },
        { "durations", row.durations },
        { "f1", row.eval.f1 },
        { "f2", row.eval.f2 },
        { "f3", row.eval.f3 },
        { "violation", row.eval.violation },
    };
}

inline nlohmann::json thresholdsJson(TrajectoryTask const& task) {
    nlohmann::json j = nlohmann::json::object();
    char const* keys[] = { "f1", "f2", "f3" };
    for (std::size_t i = 0; i < 3; ++i) {
        if (task.thresholds[i]) {
            j[keys[i]] = { { "value", task.thresholds[i]->value }, { "inclusive", task.thresholds[i]->inclusive } };
        }
    }
    return j;
}
} // namespace detail

inline nlohmann::json planReport(PlanResult const& r, PlanConfig const& config) {
    nlohmann::json plans = nlohmann::json::array();
    char const* labels[] = { "A", "B", "C" };
    char const* objectives[] = { "f1", "f2", "f3" };
    for (std::size_t k = 0; k < 3; ++k) {
        if (r.optimal[k]) {
            nlohmann::json p = detail::rowJson(r.pareto[*r.optimal[k]]);
            p["plan"] = labels[k];
            p["optimizes"] = objectives[k];
            plans.push_back(std::move(p));
        }
    }
    nlohmann::json filtered = nlohmann::json::array();
    for (auto i : r.filtered) {
        filtered.push_back(detail::rowJson(r.pareto[i]));
    }
    return nlohmann::json {
        { "task", r.task.name },
        { "algorithm", config.algorithm },
        { "seed", config.common.seedBase },
        { "evaluations", r.trace.records.back().evaluations },
        { "generations", r.trace.records.back().generation },
        { "paretoSize", r.pareto.size() },
        { "feasibleCount", r.feasible.size() },
        { "plans", plans },
        { "thresholds", detail::thresholdsJson(r.task) },
        { "filteredCount", r.filtered.size() },
        { "filtered", filtered },
        { "hvReference", r.hvReference },
    };
}

inline int cmdPlan(PlanConfig const& config, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    PlanResult result;
    try {
        result = runPlan(config);
    } catch (UsageError const& e) {
        err << "plan: " << e.what() << '\n';
        return kExitUsage;
    } catch (std::exception const& e) {
        err << "plan: " << e.what() << '\n';
        return kExitRuntime;
    }

    detail::OutputGuard guard;
    try {
        fs::create_directories(config.common.outDir);
        fs::path const dir(config.common.outDir);

        csv::Table pareto { { "f1", "f2", "f3", "violation" }, {} };
        std::size_t const d = result.task.freeSegmentCount();
        for (std::size_t i = 1; i <= d; ++i) {
            pareto.header.push_back("h" + std::to_string(i));
        }
        for (auto const& row : result.pareto) {
            std::vector<double> line { row.eval.f1, row.eval.f2, row.eval.f3, row.eval.violation };
            line.insert(line.end(), row.genes.begin(), row.genes.end());
            pareto.rows.push_back(std::move(line));
        }
        guard.add(dir / "pareto.csv");
        csv::writeFile((dir / "pareto.csv").string(), pareto);
        guard.add(dir / "trace.csv");
        csv::writeFile((dir / "trace.csv").string(), detail::traceTable(result.trace));
        guard.add(dir / "report.json");
        std::ofstream report(dir / "report.json", std::ios::binary);
        report << planReport(result, config).dump(2) << '\n';
        report.close();
        if (!report) {
            throw std::runtime_error("cannot write report.json");
        }
    } catch (std::exception const& e) {
        err << "plan: " << e.what() << '\n';
        return kExitRuntime;
    }
    guard.release();

    if (!config.common.quiet) {
        out << "Plan | Time vector (s) | f1 | f2 | f3\n";
        char const* labels[] = { "A", "B", "C" };
        for (std::size_t k = 0; k < 3; ++k) {
            if (!result.optimal[k]) {
                continue;
            }
            auto const& row = result.pareto[*result.optimal[k]];
            out << labels[k] << " | [";
            for (std::size_t i = 0; i < row.timeVector.size(); ++i) {
                out << (i ? ", " : "") << std::fixed << std::setprecision(2) << row.timeVector[i];
            }
            out << "] | " << row.eval.f1 << " | " << row.eval.f2 << " | " << row.eval.f3 << '\n';
            out.unsetf(std::ios::fixed);
        }
        out << "feasible: " << result.feasible.size() << ", meeting thresholds: " << result.filtered.size() << '\n';
    }
    if (result.feasible.empty()) {
        err << "plan: warning: no feasible solution in the final population\n";
        return kExitWarning;
    }
    return kExitOk;
}

inline int cmdMetrics(MetricsConfig const& config, std::ostream& out, std::ostream& err) {
    try {
        PointSet const front = csv::objectiveColumns(csv::readFile(config.frontFile));
        if (front.empty()) {
            throw UsageError("front file has no rows");
        }
        std::size_t const m = front.front().size();
        nlohmann::json j { { "points", front.size() }, { "objectives", m } };
        if (!config.referenceFrontFile.empty()) {
            PointSet const reference = csv::objectiveColumns(csv::readFile(config.referenceFrontFile));
            if (reference.empty() || reference.front().size() != m) {
                throw UsageError("reference front dimension does not match the front");
            }
            j["igd"] = igd(front, reference, config.igdMode);
            j["igdMode"] = config.igdMode == IgdMode::Standard ? "standard" : "obtained-sum";
        }
        if (config.referencePoint) {
            if (config.referencePoint->size() != m) {
                throw UsageError("reference point dimension does not match the front");
            }
            j["hv"] = hypervolume(front, *config.referencePoint);
        }
        out << j.dump() << '\n';
    } catch (std::exception const& e) {
        err << "metrics: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace nsga3fo
