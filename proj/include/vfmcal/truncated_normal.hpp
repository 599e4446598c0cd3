#ifndef VFMCAL_TRUNCATED_NORMAL_HPP
#define VFMCAL_TRUNCATED_NORMAL_HPP

#include <cmath>
#include <stdexcept>

#include "vfmcal/normal.hpp"
#include "vfmcal/rng.hpp"

namespace vfmcal {

// Normal distribution truncated to [lower, upper]. Sampling is by inverse
// CDF, which is exact in distribution and costs one uniform per draw.
// When the truncated mass falls below 1e-10 the inverse transform loses
// precision to cancellation, and sampling switches to tail rejection
// (uniform proposal on narrow windows, shifted-exponential otherwise).
class TruncatedNormal {
public:
    // lower may be -inf, upper may be +inf. Throws std::invalid_argument
    // unless stddev > 0 and lower < upper.
    TruncatedNormal(double mean, double stddev, double lower, double upper);

    template <class Rng>
    double operator()(Rng& rng) const {
        if (!use_rejection_) {
            return mu_ + sigma_ * inverse_transform(vfmcal::uniform01(rng));
        }
        return mu_ + sigma_ * sample_rejection(rng);
    }

    double mean_param() const { return mu_; }
    double stddev_param() const { return sigma_; }
    double lower() const { return mu_ + sigma_ * a_; }
    double upper() const { return std::isinf(b_) ? b_ : mu_ + sigma_ * b_; }
    double truncated_mass() const { return mass_; }

private:
    double inverse_transform(double u) const;

    template <class Rng>
    double sample_rejection(Rng& rng) const {
        // Reduce to a lower-tail-free problem on the positive side.
        if (b_ <= 0.0) return -rejection_positive(-b_, -a_, rng);
        if (a_ >= 0.0) return rejection_positive(a_, b_, rng);
        // Window straddles zero with negligible mass: it is tiny, so the
        // density is flat across it to machine precision.
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const double z = a_ + vfmcal::uniform01(rng) * (b_ - a_);
            if (vfmcal::uniform01(rng) <= std::exp(-0.5 * z * z)) return z;
        }
        throw std::runtime_error("TruncatedNormal: rejection sampling failed to accept");
    }

    template <class Rng>
    double rejection_positive(double a, double b, Rng& rng) const {
        const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
        if (std::isfinite(b) && (b - a) * alpha < 1.0) {
            // Narrow window: uniform proposal, mode at a.
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
                const double z = a + vfmcal::uniform01(rng) * (b - a);
                if (vfmcal::uniform01(rng) <= std::exp(0.5 * (a * a - z * z))) return z;
            }
        } else {
            // Robert (1995): shifted exponential proposal on [a, inf).
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
                const double z = a - std::log(vfmcal::uniform01(rng)) / alpha;
                if (z > b) continue;
                const double d = z - alpha;
                if (vfmcal::uniform01(rng) <= std::exp(-0.5 * d * d)) return z;
            }
        }
        throw std::runtime_error("TruncatedNormal: rejection sampling failed to accept");
    }

    static constexpr int kMaxAttempts = 1000000;
    static constexpr double kRejectionMassThreshold = 1e-10;

    double mu_;
    double sigma_;
    double a_;        // standardized bounds
    double b_;
    double cdf_lo_;   // Phi(a)
    double ccdf_hi_;  // 1 - Phi(b)
    double mass_;     // Phi(b) - Phi(a), computed without cancellation
    bool use_rejection_;
};

// One draw from N(mean, stddev^2) truncated to [lower, upper].
template <class Rng>
double sample_truncated_normal(double mean, double stddev, double lower, double upper, Rng& rng) {
    return TruncatedNormal(mean, stddev, lower, upper)(rng);
}

}  // namespace vfmcal

#endif
