#ifndef VFMCAL_EVAL_HPP
#define VFMCAL_EVAL_HPP

#include <array>
#include <optional>
#include <vector>

#include "vfmcal/particle_filter.hpp"
#include "vfmcal/state_space.hpp"
#include "vfmcal/synth.hpp"

namespace vfmcal {

// Reference parameter values at one well test. tuning is undefined when the
// VFM predicts zero flow, oil_factor when the test produced no liquid.
struct WellTestTarget {
    int t = 0;
    int well = 0;
    std::optional<double> tuning{};
    std::optional<double> gas_fraction{};
    std::optional<double> oil_factor{};
};

// Targets recovered from a well-test observation: composition from the
// measured rates, tuning by solving the VFM equation for the factor.
WellTestTarget welltest_target(const Observation& obs, const WellFeatures& tested_features,
                               const FluidProperties& props);

// One target per well-test observation in the dataset.
std::vector<WellTestTarget> targets_from_observations(const Dataset& ds,
                                                      const FluidProperties& props);

// Synthetic data: the targets are the underlying true values.
std::vector<WellTestTarget> targets_from_truth(const Dataset& ds);

// Absolute error per parameter at one well test, measured against the
// posterior mean of the step before the test.
struct ValidationError {
    int t = 0;
    int well = 0;
    std::optional<double> tuning{};
    std::optional<double> gas_fraction{};
    std::optional<double> oil_factor{};
};

// summaries[t] is the posterior summary after step t with per-well
// component layout component_index(well, param). Targets at t = 0 have no
// previous step and are skipped.
std::vector<ValidationError> validation_errors(const std::vector<PosteriorSummary>& summaries,
                                               const std::vector<WellTestTarget>& targets);

struct ParamStats {
    double mad = 0.0;  // mean absolute deviation over defined targets
    int n_used = 0;
    int n_undefined = 0;
};

struct BucketStats {
    int bucket = 0;
    int count = 0;
    double mean = 0.0, min = 0.0, p25 = 0.0, median = 0.0, p75 = 0.0, max = 0.0;
};

struct EvaluationReport {
    std::array<ParamStats, kParamsPerWell> aggregate{};  // indexed by kTuning etc.
    std::vector<std::array<ParamStats, kParamsPerWell>> per_well;
    double mean_rel_ess = 0.0;
    int bucket_days = 50;
    // per bucket, per parameter error distributions for box plots
    std::vector<std::array<BucketStats, kParamsPerWell>> buckets;
    std::vector<ValidationError> errors;
    int n_skipped = 0;  // targets at t = 0
};

// Aggregate MADs, mean relative ESS, and time-bucketed error distributions.
// horizon_steps fixes the bucket range so trailing empty buckets appear.
EvaluationReport mad_report(const std::vector<ValidationError>& errors,
                            const std::vector<double>& rel_ess_trace, int horizon_steps,
                            int wells, int bucket_days = 50);

}  // namespace vfmcal

#endif
