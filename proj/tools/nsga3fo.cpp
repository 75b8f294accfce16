#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsga3fo/experiment.hpp"

namespace {

void addCommon(CLI::App* app, nsga3fo::CommonOptions& c) {
    app->add_option("--out", c.outDir, "output directory")->capture_default_str();
    app->add_option("--seed-base", c.seedBase, "first seed; run k uses seed-base + k")->capture_default_str();
    app->add_option("--pop", c.population, "population size (0: from the reference-point count)")->capture_default_str();
    app->add_option("--divisions", c.divisions, "Das-Dennis divisions p")->capture_default_str();
    app->add_option("--budget", c.budget, "function evaluations")->capture_default_str();
    app->add_option("--focused", c.focused, "focused individuals per generation")->capture_default_str();
    app->add_option("--nonfocused", c.nonFocused, "excluded individuals per generation")->capture_default_str();
    app->add_option("--workers", c.workers, "evaluation threads")->capture_default_str();
    app->add_flag("--quiet", c.quiet, "no table on stdout");
}

nsga3fo::Point parsePoint(std::string const& text) {
    nsga3fo::Point p;
    for (auto const& field : nsga3fo::csv::splitLine(text)) {
        p.push_back(nsga3fo::csv::parse(field));
    }
    return p;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app { "NSGA-III with focused operators: benchmarks, trajectory planning, metrics" };
    app.require_subcommand(1);

    nsga3fo::BenchConfig bench;
    std::string algos = "nsga3,nsga3-fo";
    auto* benchCmd = app.add_subcommand("bench", "run a seeded benchmark campaign");
    addCommon(benchCmd, bench.common);
    benchCmd->add_option("--problem", bench.problem, "dtlz3 | wfg3 | task:<file>")->capture_default_str();
    benchCmd->add_option("--algos", algos, "comma list of nsga3, nsga3-fo, moead")->capture_default_str();
    benchCmd->add_option("--seeds", bench.seeds, "number of seeds")->capture_default_str();
    benchCmd->add_option("--front-samples", bench.frontSamples, "true-front sample size for IGD")->capture_default_str();
    benchCmd->add_option("--model", bench.modelFile, "arm model JSON for task problems");
    benchCmd->add_option("--samples", bench.trajectorySamples, "trajectory samples K for task problems")->capture_default_str();

    nsga3fo::PlanConfig plan;
    auto* planCmd = app.add_subcommand("plan", "optimize a trajectory task");
    addCommon(planCmd, plan.common);
    planCmd->add_option("--task", plan.taskFile, "task JSON")->required();
    planCmd->add_option("--model", plan.modelFile, "arm model JSON (default: built-in placeholder model)");
    planCmd->add_option("--algo", plan.algorithm, "nsga3 | nsga3-fo | moead")->capture_default_str();
    planCmd->add_option("--samples", plan.trajectorySamples, "trajectory samples K")->capture_default_str();

    nsga3fo::MetricsConfig metrics;
    std::string refPoint;
    bool obtainedSum = false;
    auto* metricsCmd = app.add_subcommand("metrics", "IGD and hypervolume of a stored front");
    metricsCmd->add_option("--front", metrics.frontFile, "front CSV")->required();
    metricsCmd->add_option("--ref-front", metrics.referenceFrontFile, "reference front CSV (enables IGD)");
    metricsCmd->add_option("--ref-point", refPoint, "comma-separated reference point (enables HV)");
    metricsCmd->add_flag("--igd-obtained-sum", obtainedSum, "sum over the obtained set, divide by the reference size");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? nsga3fo::kExitOk : nsga3fo::kExitUsage;
    }

    if (benchCmd->parsed()) {
        bench.algorithms.clear();
        std::istringstream in(algos);
        for (std::string a; std::getline(in, a, ',');) {
            if (!a.empty()) {
                bench.algorithms.push_back(a);
            }
        }
        return nsga3fo::cmdBench(bench, std::cout, std::cerr);
    }
    if (planCmd->parsed()) {
        return nsga3fo::cmdPlan(plan, std::cout, std::cerr);
    }
    if (!refPoint.empty()) {
        try {
            metrics.referencePoint = parsePoint(refPoint);
        } catch (std::exception const& e) {
            std::cerr << "metrics: bad --ref-point: " << e.what() << '\n';
            return nsga3fo::kExitUsage;
        }
    }
    metrics.igdMode = obtainedSum ? nsga3fo::IgdMode::ObtainedSum : nsga3fo::IgdMode::Standard;
    return nsga3fo::cmdMetrics(metrics, std::cout, std::cerr);
}
