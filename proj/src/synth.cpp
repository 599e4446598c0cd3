#include "vfmcal/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "vfmcal/normal.hpp"

namespace vfmcal {

namespace {

// Sub-stream purposes under rng_stream::synth.
constexpr std::uint64_t kWalkPurpose = 1;
constexpr std::uint64_t kShutinPurpose = 2;
constexpr std::uint64_t kNoisePurpose = 3;
constexpr std::uint64_t kStartPurpose = 4;
constexpr std::uint64_t kPermutePurpose = 5;

double reflect(double x, double lo, double hi) {
    // fold back into [lo, hi]; ranges are wide relative to steps, so one or
    // two folds suffice
    while (x < lo || x > hi) {
        if (x < lo) x = 2.0 * lo - x;
        if (x > hi) x = 2.0 * hi - x;
    }
    return x;
}

void validate_spec(const ScenarioSpec& spec) {
    if (spec.wells < 1 || spec.steps < 1) {
        throw std::invalid_argument("ScenarioSpec: wells and steps must be positive");
    }
    if (static_cast<int>(spec.true_params.size()) != spec.wells) {
        throw std::invalid_argument("ScenarioSpec: one trajectory per well required");
    }
    for (const auto& [t, j] : spec.welltest_schedule) {
        if (t < 0 || t >= spec.steps || j < 0 || j >= spec.wells) {
            throw std::invalid_argument("ScenarioSpec: well-test schedule entry out of range");
        }
    }
    const FeatureSpec& f = spec.features;
    const bool ok = f.u_min >= 0.0 && f.u_max <= 1.0 && f.u_min < f.u_max && f.p1_min > 0.0 &&
                    f.p1_min < f.p1_max && f.ratio_min > 0.0 && f.ratio_max < 1.0 &&
                    f.ratio_min < f.ratio_max && f.temp_min > 0.0 && f.temp_min < f.temp_max &&
                    f.shutin_prob >= 0.0 && f.shutin_prob < 1.0;
    if (!ok) {
        throw std::invalid_argument("ScenarioSpec: feature ranges are not physical");
    }
}

}  // namespace

WellParameters ParamTrajectory::at(int t) const {
    if (nodes.empty()) {
        throw std::invalid_argument("ParamTrajectory: no nodes");
    }
    if (t <= nodes.front().t) {
        const ParamNode& n = nodes.front();
        return {n.tuning, n.gas_fraction, n.oil_factor};
    }
    if (t >= nodes.back().t) {
        const ParamNode& n = nodes.back();
        return {n.tuning, n.gas_fraction, n.oil_factor};
    }
    std::size_t hi = 1;
    while (nodes[hi].t < t || (interp == Interp::hold && nodes[hi].t <= t)) ++hi;
    const ParamNode& a = nodes[hi - 1];
    if (interp == Interp::hold) {
        return {a.tuning, a.gas_fraction, a.oil_factor};
    }
    const ParamNode& b = nodes[hi];
    const double w = static_cast<double>(t - a.t) / static_cast<double>(b.t - a.t);
    return {a.tuning + w * (b.tuning - a.tuning),
            a.gas_fraction + w * (b.gas_fraction - a.gas_fraction),
            a.oil_factor + w * (b.oil_factor - a.oil_factor)};
}

FeatureTable generate_features(const ScenarioSpec& spec) {
    validate_spec(spec);
    const FeatureSpec& fs = spec.features;
    FeatureTable table;
    table.wells = spec.wells;
    table.steps = spec.steps;
    table.x.resize(static_cast<std::size_t>(spec.steps) * spec.wells);
    table.producing.assign(static_cast<std::size_t>(spec.steps) * spec.wells, 1);

    // start every walk in the middle third of its range: wells on one asset
    // run at comparable operating points
    const auto init = [](double lo, double hi, double u01) {
        return lo + (hi - lo) * (1.0 + u01) / 3.0;
    };
    for (int j = 0; j < spec.wells; ++j) {
        CounterRng walk(spec.seed, rng_stream::synth, kWalkPurpose, static_cast<std::uint64_t>(j));
        CounterRng shut(spec.seed, rng_stream::synth, kShutinPurpose,
                        static_cast<std::uint64_t>(j));
        double u = init(fs.u_min, fs.u_max, walk.uniform01());
        double p1 = init(fs.p1_min, fs.p1_max, walk.uniform01());
        double ratio = init(fs.ratio_min, fs.ratio_max, walk.uniform01());
        double temp = init(fs.temp_min, fs.temp_max, walk.uniform01());
        for (int t = 0; t < spec.steps; ++t) {
            const std::size_t idx = static_cast<std::size_t>(t) * spec.wells + j;
            const bool shut_now = fs.shutin_prob > 0.0 && shut.uniform01() < fs.shutin_prob;
            WellFeatures& x = table.x[idx];
            x.u = shut_now ? 0.0 : u;
            x.p1 = p1;
            x.p2 = ratio * p1;
            x.T = temp;
            if (shut_now) table.producing[idx] = 0;

            u = reflect(u + fs.u_sd * standard_normal(walk), fs.u_min, fs.u_max);
            p1 = reflect(p1 + fs.p1_sd * standard_normal(walk), fs.p1_min, fs.p1_max);
            ratio = reflect(ratio + fs.ratio_sd * standard_normal(walk), fs.ratio_min,
                            fs.ratio_max);
            temp = reflect(temp + fs.temp_sd * standard_normal(walk), fs.temp_min, fs.temp_max);
        }
    }
    return table;
}

Dataset generate_dataset(const ScenarioSpec& spec) {
    FeatureTable table = generate_features(spec);

    std::map<int, int> tested_at;  // step -> well
    for (const auto& [t, j] : spec.welltest_schedule) {
        if (tested_at.count(t)) {
            throw std::invalid_argument("ScenarioSpec: two well tests share one step");
        }
        tested_at[t] = j;
    }

    Dataset ds;
    ds.wells = spec.wells;
    ds.steps = spec.steps;
    ds.features = std::move(table.x);
    ds.active.assign(ds.features.size(), 0);
    ds.truth.resize(ds.features.size());
    ds.observations.resize(spec.steps);

    // Activity: a well test observes only the tested well; otherwise every
    // producing, non-excluded well contributes.
    for (int t = 0; t < spec.steps; ++t) {
        const auto tested = tested_at.find(t);
        for (int j = 0; j < spec.wells; ++j) {
            const std::size_t idx = static_cast<std::size_t>(t) * spec.wells + j;
            ds.truth[idx] = spec.true_params[j].at(t);
            if (tested != tested_at.end()) {
                ds.active[idx] = (j == tested->second) ? 1 : 0;
            } else {
                ds.active[idx] = table.producing[idx];
            }
        }
        if (tested != tested_at.end()) {
            // the tested well flows on the test separator even if the
            // shut-in walk closed it
            const std::size_t idx = static_cast<std::size_t>(t) * spec.wells + tested->second;
            if (table.producing[idx] == 0) {
                WellFeatures& x = ds.features[idx];
                x.u = std::max(x.u, spec.features.u_min);
                ds.active[idx] = 1;
            }
        }
    }
    for (const auto& [t, j] : spec.exclusions) {
        if (t < 0 || t >= spec.steps || j < 0 || j >= spec.wells) {
            throw std::invalid_argument("ScenarioSpec: exclusion out of range");
        }
        ds.active[static_cast<std::size_t>(t) * spec.wells + j] = 0;
    }
    // keep at least one contributor per step
    for (int t = 0; t < spec.steps; ++t) {
        bool any = false;
        for (int j = 0; j < spec.wells; ++j) any = any || ds.is_active(t, j);
        if (!any) {
            const std::size_t idx = static_cast<std::size_t>(t) * spec.wells;
            ds.active[idx] = 1;
            WellFeatures& x = ds.features[idx];
            x.u = std::max(x.u, spec.features.u_min);
        }
    }

    // Noise-free per-well rates, and the scale that maps rates to
    // per-well units of about one.
    std::vector<Eigen::Vector3d> rates(ds.features.size(), Eigen::Vector3d::Zero());
    double flow_sum = 0.0;
    std::size_t flow_count = 0;
    for (int t = 0; t < spec.steps; ++t) {
        for (int j = 0; j < spec.wells; ++j) {
            const std::size_t idx = static_cast<std::size_t>(t) * spec.wells + j;
            if (!ds.active[idx]) continue;
            const WellParameters& wp = ds.truth[idx];
            const Composition phi = composition_from_factors(wp.gas_fraction, wp.oil_factor);
            const double flow = total_flow(ds.features[idx], phi, spec.fluid);
            rates[idx] = wp.tuning * flow * phi.vec();
            flow_sum += wp.tuning * flow;
            ++flow_count;
        }
    }
    ds.rate_scale = flow_count > 0 ? flow_sum / static_cast<double>(flow_count) : 1.0;
    const double s = ds.rate_scale;

    for (int t = 0; t < spec.steps; ++t) {
        Observation& obs = ds.observations[t];
        obs.t = t;
        const auto tested = tested_at.find(t);
        obs.kind =
            tested != tested_at.end() ? ObservationKind::welltest : ObservationKind::production;
        Eigen::Vector3d y = Eigen::Vector3d::Zero();
        for (int j = 0; j < spec.wells; ++j) {
            const std::size_t idx = static_cast<std::size_t>(t) * spec.wells + j;
            if (!ds.active[idx]) continue;
            obs.active.push_back(j);
            y += rates[idx];
        }

        if (spec.with_noise) {
            CounterRng noise_rng(spec.seed, rng_stream::synth, kNoisePurpose,
                                 static_cast<std::uint64_t>(t));
            const double s_eps = spec.noise.sigma_separator;
            Eigen::Vector3d y_scaled = y / s;
            for (int c = 0; c < 3; ++c) {
                const double sd = spec.noise.separator_var_squares_rate
                                      ? s_eps * y_scaled[c]
                                      : s_eps * std::sqrt(std::max(y_scaled[c], 0.0));
                y[c] += s * sd * standard_normal(noise_rng);
            }
            if (spec.include_well_noise) {
                for (int j : obs.active) {
                    const std::size_t idx = static_cast<std::size_t>(t) * spec.wells + j;
                    const WellParameters& wp = ds.truth[idx];
                    const Composition phi =
                        composition_from_factors(wp.gas_fraction, wp.oil_factor);
                    for (int c = 0; c < 3; ++c) {
                        y[c] += s * spec.noise.sigma_well * standard_normal(noise_rng);
                    }
                    const double f_err = spec.noise.sigma_vfm * standard_normal(noise_rng);
                    y += s * f_err * wp.tuning * phi.vec();
                }
            }
            y = y.cwiseMax(0.0);  // separator meters do not report negatives
        }
        obs.rates = y;
    }
    return ds;
}

Dataset generate_constructed_case(std::uint64_t seed, const ConstructedOptions& opts) {
    ScenarioSpec spec;
    spec.wells = 3;
    spec.steps = 50;
    spec.seed = seed;
    spec.fluid = opts.fluid;
    spec.with_noise = opts.with_noise;
    spec.include_well_noise = false;  // separator noise only: no modeling error
    spec.noise.sigma_separator = opts.sigma_separator;
    spec.noise.sigma_well = 0.0;
    spec.noise.sigma_vfm = 0.0;

    // Constant truth except the oil-factor jump in well 1.
    spec.true_params.resize(3);
    spec.true_params[0].nodes = {{0, 1.0, 0.15, 0.85}};
    spec.true_params[1].interp = ParamTrajectory::Interp::hold;
    spec.true_params[1].nodes = {{0, 1.0, 0.14, 0.90}, {kConstructedJumpStep, 1.0, 0.14, 0.50}};
    spec.true_params[2].nodes = {{0, 1.0, 0.16, 0.95}};

    spec.welltest_schedule = {{kConstructedWelltestStep, 0}};
    spec.exclusions = {{kConstructedExclusionStep, 0}};

    // steady operation: gentle walks, no shut-ins
    spec.features.u_sd = 0.01;
    spec.features.p1_sd = 0.2e5;
    spec.features.ratio_sd = 0.008;
    spec.features.temp_sd = 0.2;
    spec.features.shutin_prob = 0.0;
    return generate_dataset(spec);
}

namespace {

ScenarioSpec synthetic_spec(const WellTestTable& table, const SyntheticOptions& opts,
                            std::uint64_t seed) {
    int wells = 0;
    for (const WellTestPoint& p : table) wells = std::max(wells, p.well + 1);
    if (wells == 0) {
        throw std::invalid_argument("synthetic case: empty well-test table");
    }
    ScenarioSpec spec;
    spec.wells = wells;
    spec.steps = opts.steps;
    spec.seed = seed;
    spec.noise = opts.noise;
    spec.with_noise = opts.with_noise;
    spec.include_well_noise = opts.include_well_noise;
    spec.features = opts.features;
    spec.fluid = opts.fluid;
    spec.true_params.resize(wells);
    for (int j = 0; j < wells; ++j) {
        spec.true_params[j].interp = ParamTrajectory::Interp::linear;
    }
    for (const WellTestPoint& p : table) {
        if (p.t < 0 || p.t >= opts.steps) {
            throw std::invalid_argument("synthetic case: well test outside the horizon");
        }
        spec.welltest_schedule.emplace_back(p.t, p.well);
    }
    return spec;
}

std::vector<const WellTestPoint*> tests_of_well(const WellTestTable& table, int j) {
    std::vector<const WellTestPoint*> out;
    for (const WellTestPoint& p : table) {
        if (p.well == j) out.push_back(&p);
    }
    std::sort(out.begin(), out.end(),
              [](const WellTestPoint* a, const WellTestPoint* b) { return a->t < b->t; });
    return out;
}

}  // namespace

Dataset generate_synthetic_copy(const WellTestTable& table, const SyntheticOptions& opts,
                                std::uint64_t seed) {
    ScenarioSpec spec = synthetic_spec(table, opts, seed);
    for (int j = 0; j < spec.wells; ++j) {
        const auto tests = tests_of_well(table, j);
        if (tests.size() < 2) {
            throw std::invalid_argument("synthetic copy: need at least two tests per well");
        }
        for (const WellTestPoint* p : tests) {
            spec.true_params[j].nodes.push_back({p->t, 1.0, p->gas_fraction, p->oil_factor});
        }
    }
    return generate_dataset(spec);
}

Dataset generate_synthetic_random(const WellTestTable& table, const SyntheticOptions& opts,
                                  std::uint64_t seed) {
    ScenarioSpec spec = synthetic_spec(table, opts, seed);
    for (int j = 0; j < spec.wells; ++j) {
        const auto tests = tests_of_well(table, j);
        if (tests.size() < 2) {
            throw std::invalid_argument("synthetic random: need at least two tests per well");
        }
        const int n_inc = static_cast<int>(tests.size()) - 1;
        std::vector<double> inc_gas(n_inc), inc_oil(n_inc);
        for (int k = 0; k < n_inc; ++k) {
            inc_gas[k] = tests[k + 1]->gas_fraction - tests[k]->gas_fraction;
            inc_oil[k] = tests[k + 1]->oil_factor - tests[k]->oil_factor;
        }

        CounterRng start_rng(seed, rng_stream::synth, kStartPurpose,
                             static_cast<std::uint64_t>(j));
        CounterRng perm_rng(seed, rng_stream::synth, kPermutePurpose,
                            static_cast<std::uint64_t>(j));
        const double start_gas = start_rng.uniform01();
        const double start_oil = start_rng.uniform01();
        const std::vector<int> perm_gas = random_permutation(n_inc, perm_rng);
        const std::vector<int> perm_oil = random_permutation(n_inc, perm_rng);

        std::vector<double> shuffled_gas(n_inc), shuffled_oil(n_inc);
        for (int k = 0; k < n_inc; ++k) {
            shuffled_gas[k] = inc_gas[perm_gas[k]];
            shuffled_oil[k] = inc_oil[perm_oil[k]];
        }
        const std::vector<double> gas_nodes = clamped_cumsum(start_gas, shuffled_gas);
        const std::vector<double> oil_nodes = clamped_cumsum(start_oil, shuffled_oil);
        for (std::size_t k = 0; k < tests.size(); ++k) {
            spec.true_params[j].nodes.push_back({tests[k]->t, 1.0, gas_nodes[k], oil_nodes[k]});
        }
    }
    return generate_dataset(spec);
}

std::vector<int> random_permutation(int n, CounterRng& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int k = std::min(static_cast<int>(rng.uniform01() * (i + 1)), i);
        std::swap(perm[i], perm[k]);
    }
    return perm;
}

std::vector<double> clamped_cumsum(double start, std::span<const double> increments) {
    std::vector<double> out;
    out.reserve(increments.size() + 1);
    double v = std::clamp(start, 0.0, 1.0);
    out.push_back(v);
    for (double inc : increments) {
        v = std::clamp(v + inc, 0.0, 1.0);
        out.push_back(v);
    }
    return out;
}

}  // namespace vfmcal
