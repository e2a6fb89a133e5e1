#pragma once

#include <limits>

namespace lowmach {

// Reference-state parameters for the linearized-theory spectra. mu_inv_kT is
// mu_c^{-1} kB T at the reference state; h_par and h_perp are the components
// of the background concentration gradient parallel/perpendicular to gravity,
// g its magnitude. c_T defaults to the low Mach limit (infinite sound speed).
struct TheoryParams {
    double rho = 1.0;
    double beta = 0.0;
    double g = 0.0;
    double nu = 1.0;
    double chi = 1.0;
    double eta = 1.0;
    double h_par = 0.0;
    double h_perp = 0.0;
    double kBT = 1.0;
    double mu_inv_kT = 1.0;
    double dV = 1.0;
    double c_T = std::numeric_limits<double>::infinity();
};

struct EquilibriumFactors {
    double S_rho_rho;
    double S_v_v;  // per velocity component
    double S_c_c;
    double S_c_rho;
};

// k-independent low Mach equilibrium static structure factors; the
// compressible rho kBT/c_T^2 term only enters for finite c_T.
EquilibriumFactors equilibrium_static_factors(const TheoryParams& tp);

// Central Rayleigh peak S_rho_rho(k, omega) = beta^2 rho mu_c^{-1} kBT
//   * 2 chi k^2 / (omega^2 + chi^2 k^4).
double rayleigh_peak(double k, double omega, const TheoryParams& tp);

// Full nonequilibrium concentration spectrum at a wavevector perpendicular to
// gravity, including the equilibrium term and the h_perp constraint term.
double noneq_Scc_full(double k_perp, const TheoryParams& tp);

// Simplified form: equilibrium term and h_perp contribution dropped.
double noneq_Scc_simplified(double k_perp, const TheoryParams& tp);

// Gravity cutoff wavenumber [h_par rho g beta / (eta chi)]^(1/4).
double gravity_cutoff_wavenumber(const TheoryParams& tp);

// Modified wavenumber of the second-order staggered Laplacian,
// k_perp = k sin(k dx/2)/(k dx/2).
double effective_wavenumber(double k, double dx);

}  // namespace lowmach
