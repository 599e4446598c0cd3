#ifndef VFMCAL_RUNNER_HPP
#define VFMCAL_RUNNER_HPP

#include <string>
#include <vector>

#include "vfmcal/eval.hpp"
#include "vfmcal/io.hpp"
#include "vfmcal/particle_filter.hpp"
#include "vfmcal/state_space.hpp"
#include "vfmcal/synth.hpp"

namespace vfmcal {

struct RunConfig {
    std::string features_path;
    std::string observations_path;
    std::string truth_path;  // optional; enables truth-based targets
    std::string output_dir = ".";

    FilterConfig filter{};
    TransitionConfig transition{};
    NoiseConfig noise{};
    FluidProperties fluid{};

    // When false, well-test observations are not fed to the filter (time
    // still advances through the transition); they are always evaluated.
    bool include_welltests = true;

    // Rates are divided by this before entering the likelihood, putting a
    // typical well total near one so the noise coefficients read as
    // fractions of a well's rate. Non-positive means: derive from the first
    // observation (its total divided by its number of active wells).
    double rate_scale = 0.0;
};

struct RunResult {
    std::vector<PosteriorSummary> summaries;  // one per step, post update
    EvaluationReport report;
    double rate_scale = 1.0;
    TransitionConfig transition;  // with prior means resolved
    std::vector<int> degenerate_steps;
};

double resolve_rate_scale(const RunConfig& cfg, const Dataset& ds);

// Filter the dataset and evaluate against its well tests.
RunResult run_filter(const RunConfig& cfg, const Dataset& ds);

// Write summaries.csv, ess.csv, report.json, report.txt and manifest.json
// under cfg.output_dir.
void write_run_outputs(const RunConfig& cfg, const RunResult& result);

// Load the dataset, run, write outputs. Returns a process exit status and
// reports failures on stderr.
int run(const RunConfig& cfg);

}  // namespace vfmcal

#endif
