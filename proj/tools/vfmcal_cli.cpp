#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vfmcal/io.hpp"
#include "vfmcal/runner.hpp"
#include "vfmcal/synth.hpp"
#include "vfmcal/version.hpp"

namespace {

namespace fs = std::filesystem;

std::string output_dir_override(std::string dir) {
    if (const char* env = std::getenv("VFMCAL_OUTPUT_DIR"); env && *env) {
        return env;
    }
    return dir;
}

void add_model_options(CLI::App* cmd, vfmcal::RunConfig& cfg, double& prior_mean_gas,
                       double& prior_mean_oil) {
    cmd->add_option("--jump-prob", cfg.transition.jump_prob, "Per-well jump probability");
    cmd->add_option("--sd-tuning", cfg.transition.sd_tuning, "Tuning transition std dev");
    cmd->add_option("--sd-gas-fraction", cfg.transition.sd_gas_fraction,
                    "Gas-fraction transition std dev");
    cmd->add_option("--sd-oil-factor", cfg.transition.sd_oil_factor,
                    "Oil-factor transition std dev");
    cmd->add_option("--prior-mean-tuning", cfg.transition.prior_mean_tuning);
    cmd->add_option("--prior-sd-tuning", cfg.transition.prior_sd_tuning);
    cmd->add_option("--prior-mean-gas-fraction", prior_mean_gas,
                    "Gas-fraction prior mean (default: separator average)");
    cmd->add_option("--prior-sd-gas-fraction", cfg.transition.prior_sd_gas_fraction);
    cmd->add_option("--prior-mean-oil-factor", prior_mean_oil,
                    "Oil-factor prior mean (default: separator average)");
    cmd->add_option("--prior-sd-oil-factor", cfg.transition.prior_sd_oil_factor);

    cmd->add_option("--sigma-separator", cfg.noise.sigma_separator);
    cmd->add_option("--sigma-well", cfg.noise.sigma_well);
    cmd->add_option("--sigma-vfm", cfg.noise.sigma_vfm);
    cmd->add_flag("--separator-var-squares-rate", cfg.noise.separator_var_squares_rate,
                  "Separator variance scales with the squared rate");

    cmd->add_option("--rho-oil", cfg.fluid.rho_oil);
    cmd->add_option("--rho-water", cfg.fluid.rho_water);
    cmd->add_option("--kappa", cfg.fluid.kappa);
    cmd->add_option("--z-factor", cfg.fluid.z_factor);
    cmd->add_option("--molar-mass", cfg.fluid.molar_mass);
    cmd->add_option("--gas-constant", cfg.fluid.gas_constant);
    cmd->add_option("--critical-ratio", cfg.fluid.critical_ratio);
    cmd->add_option("--discharge-coeff", cfg.fluid.discharge_coeff);
    cmd->add_option("--max-area", cfg.fluid.max_area);
}

void write_generate_manifest(const fs::path& dir, const std::string& kind, std::uint64_t seed,
                             const vfmcal::Dataset& ds, bool with_noise) {
    nlohmann::json j;
    j["version"] = vfmcal::kVersion;
    j["generator"] = kind;
    j["seed"] = seed;
    j["wells"] = ds.wells;
    j["steps"] = ds.steps;
    j["rate_scale"] = ds.rate_scale;
    j["with_noise"] = with_noise;
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << '\n';
}

int do_generate(const std::string& kind, const std::string& out_dir, std::uint64_t seed,
                int steps, bool no_noise, bool no_well_noise) {
    const fs::path dir(output_dir_override(out_dir));
    fs::create_directories(dir);

    vfmcal::Dataset ds;
    if (kind == "constructed") {
        vfmcal::ConstructedOptions opts;
        opts.with_noise = !no_noise;
        ds = vfmcal::generate_constructed_case(seed, opts);
    } else {
        vfmcal::SyntheticOptions opts;
        opts.steps = steps;
        opts.with_noise = !no_noise;
        opts.include_well_noise = !no_well_noise;
        opts.features.shutin_prob = 0.02;
        const auto& table = vfmcal::default_welltest_table();
        ds = (kind == "copy") ? vfmcal::generate_synthetic_copy(table, opts, seed)
                              : vfmcal::generate_synthetic_random(table, opts, seed);
    }
    vfmcal::write_dataset(ds, (dir / "features.csv").string(),
                          (dir / "observations.csv").string(), (dir / "truth.csv").string());
    write_generate_manifest(dir, kind, seed, ds, !no_noise);
    std::cout << "wrote " << kind << " dataset (" << ds.wells << " wells, " << ds.steps
              << " steps) to " << dir.string() << '\n';
    return 0;
}

int do_evaluate(const std::string& summaries_path, const std::string& features_path,
                const std::string& observations_path, const std::string& truth_path,
                const std::string& out_dir, const vfmcal::FluidProperties& fluid) {
    const fs::path dir(output_dir_override(out_dir));
    fs::create_directories(dir);
    const vfmcal::Dataset ds =
        vfmcal::read_dataset(features_path, observations_path, truth_path);
    const auto summaries = vfmcal::read_summaries_csv(summaries_path);
    const auto targets = ds.has_truth() ? vfmcal::targets_from_truth(ds)
                                        : vfmcal::targets_from_observations(ds, fluid);
    const auto errors = vfmcal::validation_errors(summaries, targets);
    std::vector<double> rel_ess;  // not recoverable from summaries alone
    vfmcal::EvaluationReport report =
        vfmcal::mad_report(errors, rel_ess, ds.steps, ds.wells);
    report.n_skipped = static_cast<int>(targets.size() - errors.size());
    vfmcal::write_report_json((dir / "report.json").string(), report);
    vfmcal::write_report_text((dir / "report.txt").string(), report);
    std::cout << "evaluated " << errors.size() << " well tests\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint calibration of virtual flow meters from separator data"};
    app.set_version_flag("--version", vfmcal::kVersion);
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a synthetic benchmark dataset");
    std::string gen_kind;
    gen->add_option("kind", gen_kind, "constructed | copy | random")
        ->required()
        ->check(CLI::IsMember({"constructed", "copy", "random"}));
    std::string gen_out = "dataset";
    std::uint64_t gen_seed = 1;
    int gen_steps = 650;
    bool gen_no_noise = false, gen_no_well_noise = false;
    gen->add_option("--out", gen_out, "Output directory");
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--steps", gen_steps, "Horizon for copy/random cases");
    gen->add_flag("--no-noise", gen_no_noise, "Disable all generated noise");
    gen->add_flag("--no-well-noise", gen_no_well_noise,
                  "Keep separator noise but drop per-well noise terms");

    // run
    auto* run_cmd = app.add_subcommand("run", "Run the calibration filter over a dataset");
    run_cmd->set_config("--config", "", "Read options from a config file (INI/TOML keys)");
    vfmcal::RunConfig cfg;
    double prior_mean_gas = -1.0, prior_mean_oil = -1.0;  // <0: derive from data
    std::string scheme = "systematic";
    bool no_welltests = false;
    run_cmd->add_option("--features", cfg.features_path, "Features CSV")->required();
    run_cmd->add_option("--observations", cfg.observations_path, "Observations CSV")->required();
    run_cmd->add_option("--truth", cfg.truth_path, "Truth CSV for synthetic datasets");
    run_cmd->add_option("--out", cfg.output_dir, "Output directory");
    run_cmd->add_option("--particles", cfg.filter.n_particles, "Number of particles");
    run_cmd->add_option("--seed", cfg.filter.seed, "Filter seed");
    run_cmd->add_option("--scheme", scheme, "Resampling scheme")
        ->check(CLI::IsMember({"systematic", "multinomial", "stratified"}));
    run_cmd->add_option("--threads", cfg.filter.n_threads, "Propagation threads");
    run_cmd->add_flag("--resample-on-ess", [&cfg](std::int64_t) {
        cfg.filter.resample_every_step = false;
    }, "Resample only when relative ESS drops below --ess-fraction");
    run_cmd->add_option("--ess-fraction", cfg.filter.resample_ess_fraction);
    run_cmd->add_flag("--no-welltests", no_welltests,
                      "Exclude well-test observations from inference");
    run_cmd->add_option("--rate-scale", cfg.rate_scale,
                        "Rate scaling divisor (default: derived from the first observation)");
    add_model_options(run_cmd, cfg, prior_mean_gas, prior_mean_oil);

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Re-evaluate run summaries against well tests");
    std::string eval_summaries, eval_features, eval_observations, eval_truth,
        eval_out = "evaluation";
    vfmcal::RunConfig eval_cfg;  // fluid flags only
    double eval_dummy_gas = -1.0, eval_dummy_oil = -1.0;
    eval_cmd->add_option("--summaries", eval_summaries, "summaries.csv from a run")->required();
    eval_cmd->add_option("--features", eval_features, "Features CSV")->required();
    eval_cmd->add_option("--observations", eval_observations, "Observations CSV")->required();
    eval_cmd->add_option("--truth", eval_truth, "Truth CSV for synthetic datasets");
    eval_cmd->add_option("--out", eval_out, "Output directory");
    add_model_options(eval_cmd, eval_cfg, eval_dummy_gas, eval_dummy_oil);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            return do_generate(gen_kind, gen_out, gen_seed, gen_steps, gen_no_noise,
                               gen_no_well_noise);
        }
        if (run_cmd->parsed()) {
            if (scheme == "multinomial") {
                cfg.filter.scheme = vfmcal::ResamplingScheme::multinomial;
            } else if (scheme == "stratified") {
                cfg.filter.scheme = vfmcal::ResamplingScheme::stratified;
            }
            if (prior_mean_gas >= 0.0) cfg.transition.prior_mean_gas_fraction = prior_mean_gas;
            if (prior_mean_oil >= 0.0) cfg.transition.prior_mean_oil_factor = prior_mean_oil;
            cfg.include_welltests = !no_welltests;
            cfg.output_dir = output_dir_override(cfg.output_dir);
            return vfmcal::run(cfg);
        }
        if (eval_cmd->parsed()) {
            return do_evaluate(eval_summaries, eval_features, eval_observations, eval_truth,
                               eval_out, eval_cfg.fluid);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
