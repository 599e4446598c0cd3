#include "vfmcal/state_space.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace vfmcal {

Composition composition_from_factors(double gas_fraction, double oil_factor) {
    if (!(gas_fraction >= 0.0) || gas_fraction > 1.0 || !(oil_factor >= 0.0) || oil_factor > 1.0) {
        throw std::invalid_argument("composition_from_factors: factors must lie in [0, 1]");
    }
    const double liquid = 1.0 - gas_fraction;
    return {gas_fraction, liquid * oil_factor, liquid * (1.0 - oil_factor)};
}

FlowFactors factors_from_rates(const Eigen::Vector3d& rates) {
    if ((rates.array() < 0.0).any()) {
        throw std::invalid_argument("factors_from_rates: rates must be nonnegative");
    }
    const double total = rates.sum();
    if (!(total > 0.0)) {
        throw std::invalid_argument("factors_from_rates: total rate must be positive");
    }
    FlowFactors f;
    f.gas_fraction = rates[0] / total;
    const double liquid = rates[1] + rates[2];
    if (liquid > 0.0) {
        f.oil_factor = rates[1] / liquid;
    }
    return f;
}

Eigen::Vector3d predicted_separator_rates(const AssetState& state,
                                          std::span<const WellFeatures> features,
                                          std::span<const int> active,
                                          const FluidProperties& props) {
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (int j : active) {
        if (j < 0 || j >= state.well_count() || j >= static_cast<int>(features.size())) {
            throw std::invalid_argument("predicted_separator_rates: active well out of range");
        }
        const Composition phi =
            composition_from_factors(state.params(kGasFraction, j), state.params(kOilFactor, j));
        double flow;
        try {
            flow = total_flow(features[j], phi, props);
        } catch (const std::exception& e) {
            throw std::domain_error("well " + std::to_string(j) + ": " + e.what());
        }
        sum += state.params(kTuning, j) * flow * phi.vec();
    }
    return sum;
}

Eigen::Matrix3d observation_covariance(const AssetState& state, const Eigen::Vector3d& measured,
                                       std::span<const int> active, const NoiseConfig& noise) {
    if ((measured.array() < 0.0).any()) {
        throw std::invalid_argument("observation_covariance: measured rates must be nonnegative");
    }
    const double s_eps2 = noise.sigma_separator * noise.sigma_separator;
    Eigen::Vector3d diag = s_eps2 * measured;
    if (noise.separator_var_squares_rate) diag = s_eps2 * measured.array().square().matrix();
    Eigen::Matrix3d cov = diag.asDiagonal();

    const double s_e2 = noise.sigma_well * noise.sigma_well;
    const double s_f2 = noise.sigma_vfm * noise.sigma_vfm;
    for (int j : active) {
        if (j < 0 || j >= state.well_count()) {
            throw std::invalid_argument("observation_covariance: active well out of range");
        }
        const Composition phi =
            composition_from_factors(state.params(kGasFraction, j), state.params(kOilFactor, j));
        const Eigen::Vector3d scaled = state.params(kTuning, j) * phi.vec();
        cov.diagonal().array() += s_e2;
        cov.noalias() += s_f2 * scaled * scaled.transpose();
    }
    return cov;
}

double log_likelihood(const Eigen::Vector3d& y, const Eigen::Vector3d& mean,
                      const Eigen::Matrix3d& cov) {
    constexpr double kLog2Pi = 1.8378770664093454836;
    const Eigen::LLT<Eigen::Matrix3d> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("log_likelihood: covariance is not positive definite");
    }
    const Eigen::Matrix3d L = llt.matrixL();
    const double log_det = 2.0 * L.diagonal().array().log().sum();
    const Eigen::Vector3d whitened = L.triangularView<Eigen::Lower>().solve(y - mean);
    return -0.5 * (3.0 * kLog2Pi + log_det + whitened.squaredNorm());
}

const TransitionConfig& require_resolved(const TransitionConfig& cfg) {
    if (!cfg.prior_mean_gas_fraction || !cfg.prior_mean_oil_factor) {
        throw std::invalid_argument("TransitionConfig: composition prior means are unset");
    }
    return cfg;
}

TransitionConfig resolve_prior_means(TransitionConfig cfg, const Observation& first) {
    if (cfg.prior_mean_gas_fraction && cfg.prior_mean_oil_factor) return cfg;
    const FlowFactors f = factors_from_rates(first.rates);
    if (!cfg.prior_mean_gas_fraction) {
        cfg.prior_mean_gas_fraction = f.gas_fraction;
    }
    if (!cfg.prior_mean_oil_factor) {
        cfg.prior_mean_oil_factor = f.oil_factor.value_or(0.5);
    }
    return cfg;
}

}  // namespace vfmcal
