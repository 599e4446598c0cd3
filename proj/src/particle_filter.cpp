#include "vfmcal/particle_filter.hpp"

#include <algorithm>
#include <cmath>

namespace vfmcal {

double effective_sample_size(const Eigen::Ref<const Eigen::VectorXd>& weights) {
    const double sum_sq = weights.squaredNorm();
    if (!(sum_sq > 0.0)) {
        throw std::invalid_argument("effective_sample_size: weights must not be all zero");
    }
    const double n = static_cast<double>(weights.size());
    return std::clamp(1.0 / sum_sq, 1.0, n);
}

Eigen::VectorXd normalize_log_weights(const Eigen::Ref<const Eigen::VectorXd>& log_weights) {
    if (log_weights.size() == 0) {
        throw std::invalid_argument("normalize_log_weights: empty input");
    }
    const double max_lw = log_weights.maxCoeff();
    if (!std::isfinite(max_lw)) {
        throw DegenerateFilterError("all log-weights are non-finite");
    }
    Eigen::VectorXd w = (log_weights.array() - max_lw).exp();
    const double total = w.sum();
    w /= total;
    return w;
}

namespace {

// Walk the cumulative weights with sorted positions in [0,1).
void walk_cumulative(const Eigen::Ref<const Eigen::VectorXd>& weights,
                     const std::vector<double>& positions, Eigen::VectorXi& out) {
    const int n = static_cast<int>(weights.size());
    int idx = 0;
    double cum = weights[0];
    for (int k = 0; k < static_cast<int>(positions.size()); ++k) {
        while (positions[k] > cum && idx < n - 1) {
            ++idx;
            cum += weights[idx];
        }
        out[k] = idx;
    }
}

}  // namespace

Eigen::VectorXi resample(const Eigen::Ref<const Eigen::VectorXd>& weights, ResamplingScheme scheme,
                         CounterRng& rng) {
    const int n = static_cast<int>(weights.size());
    if (n == 0) throw std::invalid_argument("resample: empty weights");
    Eigen::VectorXi ancestors(n);

    switch (scheme) {
        case ResamplingScheme::systematic: {
            std::vector<double> pos(n);
            const double u0 = rng.uniform01() / n;
            for (int k = 0; k < n; ++k) pos[k] = u0 + static_cast<double>(k) / n;
            walk_cumulative(weights, pos, ancestors);
            break;
        }
        case ResamplingScheme::stratified: {
            std::vector<double> pos(n);
            for (int k = 0; k < n; ++k) pos[k] = (k + rng.uniform01()) / n;
            walk_cumulative(weights, pos, ancestors);
            break;
        }
        case ResamplingScheme::multinomial: {
            std::vector<double> cum(n);
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += weights[i];
                cum[i] = acc;
            }
            cum[n - 1] = std::max(cum[n - 1], 1.0);  // guard roundoff at the top
            for (int k = 0; k < n; ++k) {
                const double u = rng.uniform01();
                const auto it = std::lower_bound(cum.begin(), cum.end(), u);
                ancestors[k] = static_cast<int>(std::min<std::ptrdiff_t>(
                    it - cum.begin(), static_cast<std::ptrdiff_t>(n) - 1));
            }
            break;
        }
    }
    return ancestors;
}

namespace detail {

void weighted_percentiles(std::vector<std::pair<double, double>>& pairs, double* p5, double* p25,
                          double* p75, double* p95) {
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double total = 0.0;
    for (const auto& pw : pairs) total += pw.second;

    // Each quantile is the smallest value whose cumulative weight reaches
    // q * total; one element may carry several quantiles.
    constexpr double qs[4] = {0.05, 0.25, 0.75, 0.95};
    double* outs[4] = {p5, p25, p75, p95};
    double cum = 0.0;
    int k = 0;
    for (const auto& pw : pairs) {
        cum += pw.second;
        while (k < 4 && cum >= qs[k] * total) {
            *outs[k] = pw.first;
            ++k;
        }
        if (k == 4) break;
    }
    for (; k < 4; ++k) *outs[k] = pairs.back().first;  // roundoff guard
}

}  // namespace detail

double weighted_quantile(const Eigen::Ref<const Eigen::VectorXd>& values,
                         const Eigen::Ref<const Eigen::VectorXd>& weights, double q) {
    if (values.size() == 0 || values.size() != weights.size()) {
        throw std::invalid_argument("weighted_quantile: size mismatch or empty input");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("weighted_quantile: q must lie in [0, 1]");
    }
    const int n = static_cast<int>(values.size());
    std::vector<std::pair<double, double>> pairs(n);
    for (int i = 0; i < n; ++i) pairs[i] = {values[i], weights[i]};
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const double total = weights.sum();
    double cum = 0.0;
    for (int i = 0; i < n; ++i) {
        cum += pairs[i].second;
        if (cum >= q * total) return pairs[i].first;
    }
    return pairs[n - 1].first;
}

}  // namespace vfmcal
