#include "vfmcal/truncated_normal.hpp"

#include <limits>

namespace vfmcal {

TruncatedNormal::TruncatedNormal(double mean, double stddev, double lower, double upper)
    : mu_(mean), sigma_(stddev) {
    if (!(stddev > 0.0)) {
        throw std::invalid_argument("TruncatedNormal: stddev must be > 0");
    }
    if (!(lower < upper)) {
        throw std::invalid_argument("TruncatedNormal: requires lower < upper");
    }
    a_ = (lower - mean) / stddev;
    b_ = (upper - mean) / stddev;

    cdf_lo_ = normal_cdf(a_);
    ccdf_hi_ = normal_cdf_complement(b_);
    if (a_ >= 0.0) {
        mass_ = normal_cdf_complement(a_) - ccdf_hi_;
    } else if (b_ <= 0.0) {
        mass_ = normal_cdf(b_) - cdf_lo_;
    } else {
        mass_ = 1.0 - cdf_lo_ - ccdf_hi_;
    }
    use_rejection_ = mass_ < kRejectionMassThreshold;
}

double TruncatedNormal::inverse_transform(double u) const {
    // Work in whichever tail keeps the argument of the quantile small.
    const double p = cdf_lo_ + u * mass_;
    double z;
    if (p <= 0.5) {
        z = normal_quantile(p);
    } else {
        z = -normal_quantile(ccdf_hi_ + (1.0 - u) * mass_);
    }
    if (z < a_) z = a_;
    if (z > b_) z = b_;
    return z;
}

}  // namespace vfmcal
