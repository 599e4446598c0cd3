#include "vfmcal/choke.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vfmcal {

void validate_composition(const Composition& phi) {
    const bool in_range = phi.gas >= 0.0 && phi.gas <= 1.0 && phi.oil >= 0.0 && phi.oil <= 1.0 &&
                          phi.water >= 0.0 && phi.water <= 1.0;
    if (!in_range || std::abs(phi.gas + phi.oil + phi.water - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "invalid composition (" << phi.gas << ", " << phi.oil << ", " << phi.water << ")";
        throw std::invalid_argument(msg.str());
    }
}

double pressure_ratio(double p1, double p2, double critical_ratio) {
    if (!(p1 > 0.0) || !(p2 > 0.0)) {
        throw std::invalid_argument("pressure_ratio: pressures must be positive");
    }
    if (p2 > p1) {
        throw std::invalid_argument("pressure_ratio: p2 exceeds p1");
    }
    return std::max(p2 / p1, critical_ratio);
}

double gas_density_upstream(double p1, double temperature, const FluidProperties& props) {
    if (!(p1 > 0.0) || !(temperature > 0.0) || !(props.molar_mass > 0.0) ||
        !(props.z_factor > 0.0) || !(props.gas_constant > 0.0)) {
        throw std::invalid_argument("gas_density_upstream: inputs must be positive");
    }
    return p1 * props.molar_mass / (props.z_factor * props.gas_constant * temperature);
}

double gas_density_downstream(double rho_gas_up, double pr, double kappa) {
    if (!(rho_gas_up > 0.0) || !(pr > 0.0) || pr > 1.0 || !(kappa > 1.0)) {
        throw std::invalid_argument("gas_density_downstream: invalid inputs");
    }
    return rho_gas_up * std::pow(pr, 1.0 / kappa);
}

double mixture_density_downstream(const Composition& phi, double rho_gas_down,
                                  const FluidProperties& props) {
    validate_composition(phi);
    if (!(rho_gas_down > 0.0) || !(props.rho_oil > 0.0) || !(props.rho_water > 0.0)) {
        throw std::invalid_argument("mixture_density_downstream: densities must be positive");
    }
    const double inv =
        phi.gas / rho_gas_down + phi.oil / props.rho_oil + phi.water / props.rho_water;
    return 1.0 / inv;
}

double choke_area(double u, double max_area) {
    if (!(u >= 0.0) || u > 1.0) {
        throw std::invalid_argument("choke_area: opening must lie in [0, 1]");
    }
    return u * max_area;
}

double total_flow(const WellFeatures& x, const Composition& phi, const FluidProperties& props) {
    const double area = choke_area(x.u, props.max_area);
    if (area == 0.0) return 0.0;
    validate_composition(phi);

    const double pr = pressure_ratio(x.p1, x.p2, props.critical_ratio);
    const double rho_g1 = gas_density_upstream(x.p1, x.T, props);
    const double rho_g2 = gas_density_downstream(rho_g1, pr, props.kappa);
    const double rho_2 = mixture_density_downstream(phi, rho_g2, props);

    const double gas_term =
        props.kappa / (props.kappa - 1.0) * phi.gas * (1.0 / rho_g1 - pr / rho_g2);
    const double liquid_term =
        (phi.oil / props.rho_oil + phi.water / props.rho_water) * (1.0 - pr);
    const double radicand = 2.0 * rho_2 * rho_2 * x.p1 * (gas_term + liquid_term);
    if (radicand < 0.0) {
        std::ostringstream msg;
        msg << "total_flow: negative radicand " << radicand << " at u=" << x.u << " p1=" << x.p1
            << " p2=" << x.p2 << " T=" << x.T << " phi=(" << phi.gas << "," << phi.oil << ","
            << phi.water << ")";
        throw std::domain_error(msg.str());
    }
    return props.discharge_coeff * area * std::sqrt(radicand);
}

}  // namespace vfmcal
