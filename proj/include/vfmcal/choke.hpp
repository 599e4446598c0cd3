#ifndef VFMCAL_CHOKE_HPP
#define VFMCAL_CHOKE_HPP

#include <Eigen/Core>

namespace vfmcal {

// Continuously measured inputs of one well (Figure-of-merit instrumentation:
// choke opening plus pressures either side of the choke and temperature).
struct WellFeatures {
    double u = 0.0;   // choke opening, fraction of fully open [0, 1]
    double p1 = 0.0;  // upstream pressure [Pa]
    double p2 = 0.0;  // downstream pressure [Pa]
    double T = 0.0;   // upstream temperature [K]
};

// Fluid and choke constants of the Sachdeva model. Defaults are plausible
// SI values for a gas/oil/water production choke; all are configurable.
// max_area is sized so a mid-range input gives a total flow of order
// 10 kg/s.
struct FluidProperties {
    double rho_oil = 800.0;        // [kg/m^3]
    double rho_water = 1000.0;     // [kg/m^3]
    double kappa = 1.3;            // gas expansion coefficient, > 1
    double z_factor = 1.0;         // gas compressibility factor
    double molar_mass = 0.016;     // gas molar mass [kg/mol]
    double gas_constant = 8.314;   // [J/(mol K)]
    double critical_ratio = 0.6;   // critical pressure ratio, in (0, 1)
    double discharge_coeff = 0.84; // choke discharge coefficient
    double max_area = 5.0e-3;      // fully open choke area [m^2]
};

// Mass fractions of gas, oil and water; they sum to one.
struct Composition {
    double gas = 0.0;
    double oil = 0.0;
    double water = 0.0;

    Eigen::Vector3d vec() const { return {gas, oil, water}; }
};

// Throws std::invalid_argument unless every fraction lies in [0, 1] and the
// fractions sum to 1 within 1e-12.
void validate_composition(const Composition& phi);

// p_r = max(p2/p1, critical_ratio); below the critical ratio the flow is
// choked and the downstream pressure stops mattering. Requires p2 <= p1.
double pressure_ratio(double p1, double p2, double critical_ratio);

// Ideal-gas density upstream of the choke, p1*M/(Z*R*T).
double gas_density_upstream(double p1, double temperature, const FluidProperties& props);

// Isentropic expansion across the choke: rho_g1 * p_r^(1/kappa).
double gas_density_downstream(double rho_gas_up, double pr, double kappa);

// Mixture density downstream as the weighted harmonic mean of the phase
// densities. The gas density used here is the downstream one; the source
// formulation leaves the side unstated and this code assumes downstream
// conditions throughout the downstream mixture.
double mixture_density_downstream(const Composition& phi, double rho_gas_down,
                                  const FluidProperties& props);

// Flow area as a function of choke opening. Linear profile: A(u) = u*A_max.
double choke_area(double u, double max_area);

// Total mass flow through the choke [kg/s] for the given features and
// composition (Sachdeva-type model). Zero when the choke is closed.
// Throws std::domain_error if the radicand turns negative, which cannot
// happen for inputs satisfying the preconditions.
double total_flow(const WellFeatures& x, const Composition& phi, const FluidProperties& props);

}  // namespace vfmcal

#endif
