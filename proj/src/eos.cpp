#include "lowmach/eos.hpp"

#include <cmath>

namespace lowmach {

double density_from_concentration(double c, const EosParams& p) {
    if (!std::isfinite(c)) throw UnphysicalEosError("density_from_concentration: non-finite c");
    const double denom = c / p.rho1_bar + (1.0 - c) / p.rho2_bar;
    if (!(denom > 0.0))
        throw UnphysicalEosError("density_from_concentration: nonpositive specific volume");
    return 1.0 / denom;
}

CellField density_from_concentration(const CellField& c, const EosParams& p) {
    CellField rho(c.grid);
    for (size_t k = 0; k < c.v.size(); ++k) rho.v[k] = density_from_concentration(c.v[k], p);
    return rho;
}

double solutal_expansion(double c, const EosParams& p) {
    const double denom = c * p.rho2_bar + (1.0 - c) * p.rho1_bar;
    if (!(denom > 0.0)) throw UnphysicalEosError("solutal_expansion: nonpositive denominator");
    return (p.rho1_bar - p.rho2_bar) / denom;
}

CellField eos_residual(const CellField& rho1, const CellField& rho2, const EosParams& p) {
    check_same_grid(rho1.grid, rho2.grid, "eos_residual");
    CellField r(rho1.grid);
    for (size_t k = 0; k < r.v.size(); ++k)
        r.v[k] = rho1.v[k] / p.rho1_bar + rho2.v[k] / p.rho2_bar - 1.0;
    return r;
}

CellField eos_residual_state(const CellField& rho, const CellField& rho1, const EosParams& p) {
    check_same_grid(rho.grid, rho1.grid, "eos_residual_state");
    CellField r(rho.grid);
    for (size_t k = 0; k < r.v.size(); ++k)
        r.v[k] = rho1.v[k] / p.rho1_bar + (rho.v[k] - rho1.v[k]) / p.rho2_bar - 1.0;
    return r;
}

double inv_mu_c_kBT(double c, const EosParams& p) {
    const double cc = std::min(1.0, std::max(0.0, c));
    return cc * (1.0 - cc) * (cc * p.m2 + (1.0 - cc) * p.m1);
}

double ViscosityModel::eta(double c, double rho) const {
    switch (kind) {
        case ViscosityModelKind::constant:
            return eta0;
        case ViscosityModelKind::quadratic:
            return eta_ref * (1.0 + 0.66 * c + 12.0 * c * c);
        case ViscosityModelKind::linear_kinematic: {
            const double nu2 = nu1 / std::sqrt(mass_ratio);
            return rho * (c * nu1 + (1.0 - c) * nu2);
        }
    }
    throw ConfigError("viscosity model: unknown kind");
}

double DiffusionModel::chi(double c) const {
    switch (kind) {
        case DiffusionModelKind::constant:
            return chi0;
        case DiffusionModelKind::stokes_einstein:
            return chi0 * (1.0 - 2.2 * c + 1.2 * c * c);
        case DiffusionModelKind::mass_ratio_scaled:
            return chi_r1 * std::sqrt((1.0 + mass_ratio) / (2.0 * mass_ratio));
    }
    throw ConfigError("diffusion model: unknown kind");
}

double MuModel::inv_mu_c_kBT(double c, const EosParams& p) const {
    switch (kind) {
        case MuModelKind::hard_disk:
            return lowmach::inv_mu_c_kBT(c, p);
        case MuModelKind::constant:
            return value;
    }
    throw ConfigError("mu model: unknown kind");
}

CellField viscosity_of_c(const CellField& c, const CellField& rho, const ViscosityModel& m) {
    check_same_grid(c.grid, rho.grid, "viscosity_of_c");
    CellField eta(c.grid);
    for (size_t k = 0; k < c.v.size(); ++k) eta.v[k] = m.eta(c.v[k], rho.v[k]);
    return eta;
}

CellField diffusion_of_c(const CellField& c, const DiffusionModel& m) {
    CellField chi(c.grid);
    for (size_t k = 0; k < c.v.size(); ++k) chi.v[k] = m.chi(c.v[k]);
    return chi;
}

}  // namespace lowmach
