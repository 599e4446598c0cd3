#include "vfmcal/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "vfmcal/version.hpp"

namespace vfmcal {

namespace {

bool observation_used(const RunConfig& cfg, const Observation& obs) {
    return cfg.include_welltests || obs.kind == ObservationKind::production;
}

}  // namespace

double resolve_rate_scale(const RunConfig& cfg, const Dataset& ds) {
    if (cfg.rate_scale > 0.0) return cfg.rate_scale;
    if (ds.observations.empty()) {
        throw std::invalid_argument("run_filter: dataset has no observations");
    }
    const Observation& first = ds.observations.front();
    const double n_active = std::max<std::size_t>(first.active.size(), 1);
    const double total = first.rates.sum();
    if (!(total > 0.0)) {
        throw std::invalid_argument("run_filter: first observation has zero total rate");
    }
    return total / n_active;
}

RunResult run_filter(const RunConfig& cfg, const Dataset& ds) {
    if (ds.steps < 1) {
        throw std::invalid_argument("run_filter: empty dataset");
    }
    RunResult result;
    result.rate_scale = resolve_rate_scale(cfg, ds);
    result.transition = resolve_prior_means(cfg.transition, ds.observations.front());
    const double s = result.rate_scale;
    const int wells = ds.wells;
    const int dim = wells * kParamsPerWell;

    const auto log_lik_at = [&](int t) {
        return [&, t](const AssetState& state) {
            const Observation& obs = ds.observations[t];
            const Eigen::Vector3d y = obs.rates / s;
            const Eigen::Vector3d mean =
                predicted_separator_rates(state, ds.features_at(t), obs.active, cfg.fluid) / s;
            const Eigen::Matrix3d cov = observation_covariance(state, y, obs.active, cfg.noise);
            return log_likelihood(y, mean, cov);
        };
    };
    const auto component = [](const AssetState& state, int d) {
        return state.params(d % kParamsPerWell, d / kParamsPerWell);
    };
    const auto transition = [&](const AssetState& prev, AssetState& next, CounterRng& rng) {
        sample_transition(prev, next, result.transition, rng);
    };

    ParticleSet<AssetState> ps;
    if (observation_used(cfg, ds.observations.front())) {
        ps = init_filter<AssetState>(
            cfg.filter,
            [&](CounterRng& rng) { return sample_prior(result.transition, wells, rng); },
            log_lik_at(0));
    } else {
        ps = init_filter<AssetState>(
            cfg.filter,
            [&](CounterRng& rng) { return sample_prior(result.transition, wells, rng); },
            [](const AssetState&) { return 0.0; });
    }
    result.summaries.reserve(ds.steps);
    result.summaries.push_back(summarize(ps, dim, component, cfg.filter.n_threads));

    for (int t = 1; t < ds.steps; ++t) {
        if (observation_used(cfg, ds.observations[t])) {
            const StepDiagnostics diag = advance_filter(ps, transition, log_lik_at(t), cfg.filter);
            if (diag.degenerate) result.degenerate_steps.push_back(t);
        } else {
            predict_filter(ps, transition, cfg.filter);
        }
        result.summaries.push_back(summarize(ps, dim, component, cfg.filter.n_threads));
    }

    const std::vector<WellTestTarget> targets =
        ds.has_truth() ? targets_from_truth(ds) : targets_from_observations(ds, cfg.fluid);
    const std::vector<ValidationError> errors = validation_errors(result.summaries, targets);
    std::vector<double> rel_ess_trace;
    rel_ess_trace.reserve(result.summaries.size());
    for (const PosteriorSummary& summary : result.summaries) {
        rel_ess_trace.push_back(summary.rel_ess);
    }
    result.report = mad_report(errors, rel_ess_trace, ds.steps, wells);
    result.report.n_skipped = static_cast<int>(targets.size() - errors.size());
    return result;
}

namespace {

nlohmann::json config_json(const RunConfig& cfg, const RunResult& result) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["dataset"] = {{"features", cfg.features_path},
                    {"observations", cfg.observations_path},
                    {"truth", cfg.truth_path}};
    j["filter"] = {{"n_particles", cfg.filter.n_particles},
                   {"scheme", cfg.filter.scheme == ResamplingScheme::systematic ? "systematic"
                              : cfg.filter.scheme == ResamplingScheme::multinomial
                                  ? "multinomial"
                                  : "stratified"},
                   {"seed", cfg.filter.seed},
                   {"resample_every_step", cfg.filter.resample_every_step},
                   {"resample_ess_fraction", cfg.filter.resample_ess_fraction},
                   {"n_threads", cfg.filter.n_threads}};
    const TransitionConfig& tc = result.transition;
    j["transition"] = {{"jump_prob", tc.jump_prob},
                       {"sd_tuning", tc.sd_tuning},
                       {"sd_gas_fraction", tc.sd_gas_fraction},
                       {"sd_oil_factor", tc.sd_oil_factor},
                       {"prior_mean_tuning", tc.prior_mean_tuning},
                       {"prior_sd_tuning", tc.prior_sd_tuning},
                       {"prior_mean_gas_fraction", *tc.prior_mean_gas_fraction},
                       {"prior_sd_gas_fraction", tc.prior_sd_gas_fraction},
                       {"prior_mean_oil_factor", *tc.prior_mean_oil_factor},
                       {"prior_sd_oil_factor", tc.prior_sd_oil_factor}};
    j["noise"] = {{"sigma_separator", cfg.noise.sigma_separator},
                  {"sigma_well", cfg.noise.sigma_well},
                  {"sigma_vfm", cfg.noise.sigma_vfm},
                  {"separator_var_squares_rate", cfg.noise.separator_var_squares_rate}};
    j["fluid"] = {{"rho_oil", cfg.fluid.rho_oil},
                  {"rho_water", cfg.fluid.rho_water},
                  {"kappa", cfg.fluid.kappa},
                  {"z_factor", cfg.fluid.z_factor},
                  {"molar_mass", cfg.fluid.molar_mass},
                  {"gas_constant", cfg.fluid.gas_constant},
                  {"critical_ratio", cfg.fluid.critical_ratio},
                  {"discharge_coeff", cfg.fluid.discharge_coeff},
                  {"max_area", cfg.fluid.max_area}};
    j["include_welltests"] = cfg.include_welltests;
    j["rate_scale"] = result.rate_scale;
    return j;
}

}  // namespace

void write_run_outputs(const RunConfig& cfg, const RunResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);
    const int wells = static_cast<int>(result.report.per_well.size());
    write_summaries_csv((dir / "summaries.csv").string(), result.summaries, wells);
    write_ess_csv((dir / "ess.csv").string(), result.summaries);
    write_report_json((dir / "report.json").string(), result.report);
    write_report_text((dir / "report.txt").string(), result.report);

    std::ofstream manifest(dir / "manifest.json");
    if (!manifest) {
        throw std::runtime_error("cannot write manifest under " + cfg.output_dir);
    }
    manifest << config_json(cfg, result).dump(2) << '\n';
}

int run(const RunConfig& cfg) {
    try {
        const Dataset ds =
            read_dataset(cfg.features_path, cfg.observations_path, cfg.truth_path);
        const RunResult result = run_filter(cfg, ds);
        for (int t : result.degenerate_steps) {
            std::cerr << "warning: degenerate filter at step " << t
                      << " (all weight on one particle)\n";
        }
        if (result.report.n_skipped > 0) {
            std::cerr << "warning: " << result.report.n_skipped
                      << " well-test target(s) without a previous step were skipped\n";
        }
        write_run_outputs(cfg, result);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace vfmcal
