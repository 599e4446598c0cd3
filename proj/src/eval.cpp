#include "vfmcal/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vfmcal {

WellTestTarget welltest_target(const Observation& obs, const WellFeatures& tested_features,
                               const FluidProperties& props) {
    if (obs.kind != ObservationKind::welltest || obs.active.size() != 1) {
        throw std::invalid_argument("welltest_target: observation is not a well test");
    }
    WellTestTarget target;
    target.t = obs.t;
    target.well = obs.active.front();

    const double total = obs.rates.sum();
    if (!(total > 0.0)) {
        return target;  // no flow measured: every target undefined
    }
    const FlowFactors f = factors_from_rates(obs.rates);
    target.gas_fraction = f.gas_fraction;
    target.oil_factor = f.oil_factor;

    const Composition phi = composition_from_factors(f.gas_fraction, f.oil_factor.value_or(0.0));
    const double flow = total_flow(tested_features, phi, props);
    if (flow > 0.0) {
        target.tuning = total / flow;
    }
    return target;
}

std::vector<WellTestTarget> targets_from_observations(const Dataset& ds,
                                                      const FluidProperties& props) {
    std::vector<WellTestTarget> targets;
    for (const Observation& obs : ds.observations) {
        if (obs.kind != ObservationKind::welltest) continue;
        const int j = obs.active.front();
        targets.push_back(welltest_target(obs, ds.feature(obs.t, j), props));
    }
    return targets;
}

std::vector<WellTestTarget> targets_from_truth(const Dataset& ds) {
    if (!ds.has_truth()) {
        throw std::invalid_argument("targets_from_truth: dataset carries no truth");
    }
    std::vector<WellTestTarget> targets;
    for (const Observation& obs : ds.observations) {
        if (obs.kind != ObservationKind::welltest) continue;
        const int j = obs.active.front();
        const WellParameters& wp = ds.truth[static_cast<std::size_t>(obs.t) * ds.wells + j];
        WellTestTarget target;
        target.t = obs.t;
        target.well = j;
        target.tuning = wp.tuning;
        target.gas_fraction = wp.gas_fraction;
        target.oil_factor = wp.oil_factor;
        targets.push_back(target);
    }
    return targets;
}

std::vector<ValidationError> validation_errors(const std::vector<PosteriorSummary>& summaries,
                                               const std::vector<WellTestTarget>& targets) {
    std::vector<ValidationError> errors;
    errors.reserve(targets.size());
    for (const WellTestTarget& target : targets) {
        if (target.t < 1 || target.t > static_cast<int>(summaries.size())) {
            continue;  // no previous-step estimate exists
        }
        const PosteriorSummary& prev = summaries[target.t - 1];
        ValidationError err;
        err.t = target.t;
        err.well = target.well;
        const auto abs_err = [&](int param, const std::optional<double>& ref) {
            return ref ? std::optional<double>(
                             std::abs(prev.mean[component_index(target.well, param)] - *ref))
                       : std::nullopt;
        };
        err.tuning = abs_err(kTuning, target.tuning);
        err.gas_fraction = abs_err(kGasFraction, target.gas_fraction);
        err.oil_factor = abs_err(kOilFactor, target.oil_factor);
        errors.push_back(err);
    }
    return errors;
}

namespace {

const std::optional<double>& error_of(const ValidationError& e, int param) {
    switch (param) {
        case kTuning: return e.tuning;
        case kGasFraction: return e.gas_fraction;
        default: return e.oil_factor;
    }
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return sorted[lo] + w * (sorted[hi] - sorted[lo]);
}

}  // namespace

EvaluationReport mad_report(const std::vector<ValidationError>& errors,
                            const std::vector<double>& rel_ess_trace, int horizon_steps,
                            int wells, int bucket_days) {
    if (bucket_days < 1) {
        throw std::invalid_argument("mad_report: bucket_days must be positive");
    }
    EvaluationReport report;
    report.bucket_days = bucket_days;
    report.errors = errors;
    report.per_well.resize(wells);

    for (const ValidationError& e : errors) {
        if (e.well < 0 || e.well >= wells) {
            throw std::invalid_argument("mad_report: error references an unknown well");
        }
        for (int param = 0; param < kParamsPerWell; ++param) {
            const auto& v = error_of(e, param);
            if (v) {
                report.aggregate[param].mad += *v;
                report.aggregate[param].n_used += 1;
                report.per_well[e.well][param].mad += *v;
                report.per_well[e.well][param].n_used += 1;
            } else {
                report.aggregate[param].n_undefined += 1;
                report.per_well[e.well][param].n_undefined += 1;
            }
        }
    }
    const auto finish = [](ParamStats& s) {
        if (s.n_used > 0) s.mad /= static_cast<double>(s.n_used);
    };
    for (int param = 0; param < kParamsPerWell; ++param) finish(report.aggregate[param]);
    for (auto& well_stats : report.per_well) {
        for (int param = 0; param < kParamsPerWell; ++param) finish(well_stats[param]);
    }

    if (!rel_ess_trace.empty()) {
        double sum = 0.0;
        for (double v : rel_ess_trace) sum += v;
        report.mean_rel_ess = sum / static_cast<double>(rel_ess_trace.size());
    }

    const int n_buckets = std::max(1, (horizon_steps + bucket_days - 1) / bucket_days);
    report.buckets.resize(n_buckets);
    for (int b = 0; b < n_buckets; ++b) {
        for (int param = 0; param < kParamsPerWell; ++param) {
            report.buckets[b][param].bucket = b;
        }
    }
    for (int param = 0; param < kParamsPerWell; ++param) {
        std::vector<std::vector<double>> per_bucket(n_buckets);
        for (const ValidationError& e : errors) {
            const auto& v = error_of(e, param);
            const int b = e.t / bucket_days;
            if (v && b >= 0 && b < n_buckets) per_bucket[b].push_back(*v);
        }
        for (int b = 0; b < n_buckets; ++b) {
            auto& vals = per_bucket[b];
            BucketStats& stats = report.buckets[b][param];
            stats.count = static_cast<int>(vals.size());
            if (vals.empty()) continue;
            std::sort(vals.begin(), vals.end());
            double sum = 0.0;
            for (double v : vals) sum += v;
            stats.mean = sum / static_cast<double>(vals.size());
            stats.min = vals.front();
            stats.max = vals.back();
            stats.p25 = quantile_sorted(vals, 0.25);
            stats.median = quantile_sorted(vals, 0.50);
            stats.p75 = quantile_sorted(vals, 0.75);
        }
    }
    return report;
}

}  // namespace vfmcal
