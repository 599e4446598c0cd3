#ifndef VFMCAL_TESTS_SACHDEVA_ORACLE_HPP
#define VFMCAL_TESTS_SACHDEVA_ORACLE_HPP

#include <cmath>

namespace oracle {

// Test-only reference: one straight-line evaluation of the choke equation
// from scalar inputs, kept independent of the library's decomposition into
// pressure-ratio / density / area helpers.
inline double sachdeva_total_flow(double u, double p1, double p2, double T, double phi_g,
                                  double phi_o, double phi_w, double rho_o, double rho_w,
                                  double kappa, double z, double molar_mass, double gas_const,
                                  double rc, double cd, double a_max) {
    double pr = p2 / p1;
    if (pr < rc) pr = rc;
    const double rho_g1 = p1 * molar_mass / (z * gas_const * T);
    const double rho_g2 = rho_g1 * std::pow(pr, 1.0 / kappa);
    const double inv_rho2 = phi_g / rho_g2 + phi_o / rho_o + phi_w / rho_w;
    const double rho2 = 1.0 / inv_rho2;
    const double bracket = kappa / (kappa - 1.0) * phi_g * (1.0 / rho_g1 - pr / rho_g2) +
                           (phi_o / rho_o + phi_w / rho_w) * (1.0 - pr);
    return cd * (a_max * u) * std::sqrt(2.0 * rho2 * rho2 * p1 * bracket);
}

}  // namespace oracle

#endif
