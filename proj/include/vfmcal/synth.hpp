#ifndef VFMCAL_SYNTH_HPP
#define VFMCAL_SYNTH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vfmcal/rng.hpp"
#include "vfmcal/state_space.hpp"

namespace vfmcal {

// Bounded random-walk settings for the measured well features. p2 is
// generated as a ratio of p1 so that p2 < p1 holds at every step.
struct FeatureSpec {
    double u_min = 0.15, u_max = 0.95, u_sd = 0.02;
    double p1_min = 45e5, p1_max = 75e5, p1_sd = 0.4e5;
    double ratio_min = 0.35, ratio_max = 0.75, ratio_sd = 0.012;  // p2/p1
    double temp_min = 330.0, temp_max = 360.0, temp_sd = 0.3;
    // Per-step probability that a producing well is shut in (u = 0).
    double shutin_prob = 0.0;
};

struct ParamNode {
    int t = 0;
    double tuning = 1.0;
    double gas_fraction = 0.0;
    double oil_factor = 0.0;
};

// Piecewise trajectory of one well's true parameters.
struct ParamTrajectory {
    enum class Interp { hold, linear };
    Interp interp = Interp::hold;
    std::vector<ParamNode> nodes;  // sorted by t

    WellParameters at(int t) const;
};

// Full description of a synthetic experiment.
struct ScenarioSpec {
    int wells = 10;
    int steps = 650;
    std::vector<ParamTrajectory> true_params;          // size wells
    std::vector<std::pair<int, int>> welltest_schedule;  // (t, well)
    // Wells removed from the production measurement at specific steps
    // (e.g. routed to the test separator without a reported test).
    std::vector<std::pair<int, int>> exclusions;  // (t, well)
    FeatureSpec features{};
    // Optional per-well overrides (unequal choke sizes, operating bands);
    // empty means every well uses the shared spec.
    std::vector<FeatureSpec> per_well_features;
    NoiseConfig noise{};
    bool with_noise = true;
    bool include_well_noise = true;  // per-well noise terms in generated data
    FluidProperties fluid{};
    std::uint64_t seed = 0;
};

struct Dataset {
    int wells = 0;
    int steps = 0;
    std::vector<WellFeatures> features;  // [t * wells + j]
    std::vector<std::uint8_t> active;    // [t * wells + j], contributes to obs t
    std::vector<Observation> observations;
    std::vector<WellParameters> truth;  // [t * wells + j]; empty for real data
    // Mean per-active-well total flow of the noise-free data; rates divided
    // by this land near one, which is the unit the noise settings assume.
    double rate_scale = 1.0;

    bool has_truth() const { return !truth.empty(); }
    const WellFeatures& feature(int t, int j) const { return features[t * wells + j]; }
    bool is_active(int t, int j) const { return active[t * wells + j] != 0; }
    std::span<const WellFeatures> features_at(int t) const {
        return {features.data() + static_cast<std::size_t>(t) * wells,
                static_cast<std::size_t>(wells)};
    }
};

struct FeatureTable {
    int wells = 0;
    int steps = 0;
    std::vector<WellFeatures> x;          // [t * wells + j]
    std::vector<std::uint8_t> producing;  // shut-in flags only
};

// Bounded random walks for u, p1, p2 (via the p2/p1 ratio) and T, with
// shut-in steps (u = 0, not producing) drawn per well.
FeatureTable generate_features(const ScenarioSpec& spec);

// Synthesize a full dataset (features, observations, truth) from a spec.
Dataset generate_dataset(const ScenarioSpec& spec);

// The three-well case: constant parameters except one oil-factor jump in
// well 1 at t = 10; well 0 removed from production at t = 24 and reported
// as a well test at t = 25; separator noise only.
struct ConstructedOptions {
    bool with_noise = true;
    double sigma_separator = 0.05;
    FluidProperties fluid{};
};
Dataset generate_constructed_case(std::uint64_t seed, const ConstructedOptions& opts = {});
inline constexpr int kConstructedJumpStep = 10;
inline constexpr int kConstructedExclusionStep = 24;
inline constexpr int kConstructedWelltestStep = 25;

// One reference well test: the composition a test measured at step t.
struct WellTestPoint {
    int t = 0;
    int well = 0;
    double gas_fraction = 0.0;
    double oil_factor = 0.0;
};
using WellTestTable = std::vector<WellTestPoint>;

// Frozen benchmark table: 190 tests across ten wells over 650 steps, with
// per-well counts and composition ranges shaped like a year of field data.
const WellTestTable& default_welltest_table();

struct SyntheticOptions {
    int steps = 650;
    NoiseConfig noise{};
    bool with_noise = true;
    bool include_well_noise = true;
    FeatureSpec features{};
    FluidProperties fluid{};
};

// Compositions follow the reference tests exactly, interpolated linearly
// between them; tuning factors are one for all wells.
Dataset generate_synthetic_copy(const WellTestTable& table, const SyntheticOptions& opts,
                                std::uint64_t seed);

// Same as the copy case except each well's composition starts at a uniform
// point in [0, 1] and evolves by a shuffled version of the reference
// increments, clamped to the unit interval.
Dataset generate_synthetic_random(const WellTestTable& table, const SyntheticOptions& opts,
                                  std::uint64_t seed);

// Uniformly random permutation of {0, ..., n-1} (Fisher-Yates).
std::vector<int> random_permutation(int n, CounterRng& rng);

// start, then successive sums with each partial result clamped to [0, 1].
std::vector<double> clamped_cumsum(double start, std::span<const double> increments);

}  // namespace vfmcal

#endif
