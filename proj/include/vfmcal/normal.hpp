#ifndef VFMCAL_NORMAL_HPP
#define VFMCAL_NORMAL_HPP

#include "vfmcal/rng.hpp"

namespace vfmcal {

// Standard normal CDF, Phi(x).
double normal_cdf(double x);

// Upper tail 1 - Phi(x), accurate for large positive x.
double normal_cdf_complement(double x);

// Inverse of the standard normal CDF (Wichura's AS 241, PPND16).
// Requires p in (0, 1).
double normal_quantile(double p);

// One N(0,1) draw per uniform, via the quantile. Deterministic draw count.
template <class Rng>
double standard_normal(Rng& rng) {
    return normal_quantile(uniform01(rng));
}

}  // namespace vfmcal

#endif
