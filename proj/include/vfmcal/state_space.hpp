#ifndef VFMCAL_STATE_SPACE_HPP
#define VFMCAL_STATE_SPACE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "vfmcal/choke.hpp"
#include "vfmcal/rng.hpp"
#include "vfmcal/truncated_normal.hpp"

namespace vfmcal {

// Per-well parameter indices within a state column / summary layout.
inline constexpr int kTuning = 0;
inline constexpr int kGasFraction = 1;
inline constexpr int kOilFactor = 2;
inline constexpr int kParamsPerWell = 3;

inline constexpr int component_index(int well, int param) {
    return well * kParamsPerWell + param;
}

// Latent parameters of one well: the multiplicative VFM correction, the gas
// mass fraction, and the oil share of the liquid.
struct WellParameters {
    double tuning = 1.0;
    double gas_fraction = 0.0;
    double oil_factor = 0.0;
};

// Joint latent state across the asset. Column j holds
// (tuning, gas_fraction, oil_factor) of well j; jumps records which wells
// changed in the last transition.
struct AssetState {
    Eigen::Matrix3Xd params;
    std::vector<std::uint8_t> jumps;

    AssetState() = default;
    explicit AssetState(int wells)
        : params(Eigen::Matrix3Xd::Zero(3, wells)), jumps(wells, 0) {}

    int well_count() const { return static_cast<int>(params.cols()); }

    WellParameters well(int j) const {
        return {params(kTuning, j), params(kGasFraction, j), params(kOilFactor, j)};
    }

    void set_well(int j, const WellParameters& w) {
        params(kTuning, j) = w.tuning;
        params(kGasFraction, j) = w.gas_fraction;
        params(kOilFactor, j) = w.oil_factor;
    }
};

// Prior and transition settings. The composition prior means are optional:
// when unset they are derived from the first observation (the separator
// average), which is resolved before filtering starts.
struct TransitionConfig {
    double jump_prob = 0.1;

    double sd_tuning = 0.05;
    double sd_gas_fraction = 0.05;
    double sd_oil_factor = 0.05;

    double prior_mean_tuning = 1.0;
    double prior_sd_tuning = 0.1;
    std::optional<double> prior_mean_gas_fraction{};
    double prior_sd_gas_fraction = 0.1;
    std::optional<double> prior_mean_oil_factor{};
    double prior_sd_oil_factor = 0.1;
};

// Observation noise model: a separator term with variance proportional to
// the measured rate, plus per-well static and prediction-error terms.
struct NoiseConfig {
    double sigma_separator = 0.05;  // separator measurement coefficient
    double sigma_well = 0.05;       // static per-well disturbance
    double sigma_vfm = 0.05;        // VFM prediction error coefficient
    // If set, the separator variance scales with the squared rate instead of
    // the rate (relative-noise reading of the same coefficient).
    bool separator_var_squares_rate = false;
};

enum class ObservationKind { production, welltest };

// One separator measurement: commingled rates from the active wells, or a
// single well's rates when the point is a well test.
struct Observation {
    int t = 0;
    Eigen::Vector3d rates = Eigen::Vector3d::Zero();  // gas, oil, water [kg/s]
    ObservationKind kind = ObservationKind::production;
    std::vector<int> active;  // wells contributing to this measurement
};

// phi = (g, (1-g)l, (1-g)(1-l)) for gas fraction g and oil factor l.
Composition composition_from_factors(double gas_fraction, double oil_factor);

// Inverse of the parametrization. The oil factor is undefined when the
// liquid rate is zero, and is reported as such rather than defaulted.
struct FlowFactors {
    double gas_fraction = 0.0;
    std::optional<double> oil_factor{};
};
FlowFactors factors_from_rates(const Eigen::Vector3d& rates);

// Expected separator rates: sum over the active wells of
// tuning * phi * total_flow(x, phi).
Eigen::Vector3d predicted_separator_rates(const AssetState& state,
                                          std::span<const WellFeatures> features,
                                          std::span<const int> active,
                                          const FluidProperties& props);

// Observation covariance: separator term plus one term per active well.
Eigen::Matrix3d observation_covariance(const AssetState& state, const Eigen::Vector3d& measured,
                                       std::span<const int> active, const NoiseConfig& noise);

// Multivariate normal log density in three dimensions. Throws
// std::domain_error when the covariance is not positive definite.
double log_likelihood(const Eigen::Vector3d& y, const Eigen::Vector3d& mean,
                      const Eigen::Matrix3d& cov);

// Throws std::invalid_argument when a composition prior mean is unset.
const TransitionConfig& require_resolved(const TransitionConfig& cfg);

// Copy of cfg with unset composition prior means filled in from an
// observation's aggregate factors (an undefined oil factor falls back to
// one half).
TransitionConfig resolve_prior_means(TransitionConfig cfg, const Observation& first);

template <class Rng>
AssetState sample_prior(const TransitionConfig& cfg, int wells, Rng& rng) {
    require_resolved(cfg);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const TruncatedNormal tuning(cfg.prior_mean_tuning, cfg.prior_sd_tuning, 0.0, kInf);
    const TruncatedNormal gas(*cfg.prior_mean_gas_fraction, cfg.prior_sd_gas_fraction, 0.0, 1.0);
    const TruncatedNormal oil(*cfg.prior_mean_oil_factor, cfg.prior_sd_oil_factor, 0.0, 1.0);

    AssetState state(wells);
    for (int j = 0; j < wells; ++j) {
        state.params(kTuning, j) = tuning(rng);
        state.params(kGasFraction, j) = gas(rng);
        state.params(kOilFactor, j) = oil(rng);
    }
    return state;
}

// Jump-diffusion transition: per well, with probability jump_prob all three
// parameters move by truncated-normal steps centered at their previous
// values; otherwise they are copied exactly.
template <class Rng>
void sample_transition(const AssetState& prev, AssetState& next, const TransitionConfig& cfg,
                       Rng& rng) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const int m = prev.well_count();
    next.params = prev.params;
    next.jumps.assign(m, 0);
    for (int j = 0; j < m; ++j) {
        const bool jump = rng.uniform01() < cfg.jump_prob;
        if (!jump) continue;
        next.jumps[j] = 1;
        next.params(kTuning, j) =
            sample_truncated_normal(prev.params(kTuning, j), cfg.sd_tuning, 0.0, kInf, rng);
        next.params(kGasFraction, j) = sample_truncated_normal(
            prev.params(kGasFraction, j), cfg.sd_gas_fraction, 0.0, 1.0, rng);
        next.params(kOilFactor, j) =
            sample_truncated_normal(prev.params(kOilFactor, j), cfg.sd_oil_factor, 0.0, 1.0, rng);
    }
}

template <class Rng>
AssetState sample_transition(const AssetState& prev, const TransitionConfig& cfg, Rng& rng) {
    AssetState next;
    sample_transition(prev, next, cfg, rng);
    return next;
}

}  // namespace vfmcal

#endif
