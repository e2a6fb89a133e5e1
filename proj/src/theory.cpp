#include "lowmach/theory.hpp"

#include <cmath>

namespace lowmach {

EquilibriumFactors equilibrium_static_factors(const TheoryParams& tp) {
    EquilibriumFactors f{};
    f.S_c_c = tp.mu_inv_kT / tp.rho;
    f.S_c_rho = tp.rho * tp.beta * f.S_c_c;
    f.S_rho_rho = tp.beta * tp.beta * tp.rho * tp.mu_inv_kT;
    if (std::isfinite(tp.c_T)) f.S_rho_rho += tp.rho * tp.kBT / (tp.c_T * tp.c_T);
    f.S_v_v = tp.kBT / tp.rho;
    return f;
}

double rayleigh_peak(double k, double omega, const TheoryParams& tp) {
    const double k2 = k * k;
    const double g2 = tp.chi * tp.chi * k2 * k2;
    return tp.beta * tp.beta * (tp.rho * tp.mu_inv_kT) * 2.0 * tp.chi * k2 /
           (omega * omega + g2);
}

double noneq_Scc_full(double k_perp, const TheoryParams& tp) {
    const double k2 = k_perp * k_perp;
    const double k4 = k2 * k2;
    const double sum = tp.nu + tp.chi;
    const double denom = tp.nu * tp.chi * k4 + tp.h_par * tp.g * tp.beta +
                         tp.beta * tp.beta * (tp.chi * tp.chi * tp.chi * tp.nu / (sum * sum)) *
                             k2 * tp.h_perp * tp.h_perp;
    const double eq = tp.mu_inv_kT / tp.rho;
    return eq + tp.nu * tp.kBT * tp.h_par * tp.h_par / (tp.rho * sum * denom);
}

double noneq_Scc_simplified(double k_perp, const TheoryParams& tp) {
    const double k2 = k_perp * k_perp;
    const double k4 = k2 * k2;
    return (tp.nu / (tp.nu + tp.chi)) * tp.kBT * tp.h_par * tp.h_par /
           (tp.chi * tp.eta * k4 + tp.h_par * tp.rho * tp.g * tp.beta);
}

double gravity_cutoff_wavenumber(const TheoryParams& tp) {
    return std::pow(tp.h_par * tp.rho * tp.g * tp.beta / (tp.eta * tp.chi), 0.25);
}

double effective_wavenumber(double k, double dx) {
    const double a = 0.5 * k * dx;
    if (a == 0.0) return k;
    return k * std::sin(a) / a;
}

}  // namespace lowmach
