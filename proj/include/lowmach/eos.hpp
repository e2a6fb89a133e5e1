#pragma once

#include "lowmach/fields.hpp"

namespace lowmach {

struct UnphysicalEosError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Linear model EOS: rho1/rho1_bar + rho2/rho2_bar = 1. rho1_bar and rho2_bar
// are the pure-component densities (c = 1 and c = 0 respectively), kBT the
// thermal energy, m1/m2 the molecular masses entering the hard-disk mixture
// chemical potential.
struct EosParams {
    double rho1_bar = 1.0;
    double rho2_bar = 1.0;
    double kBT = 1.0;
    double m1 = 1.0;
    double m2 = 1.0;
    double eos_tol = 1e-12;

    // beta/rho is a material constant for this EOS.
    double beta_over_rho() const { return 1.0 / rho2_bar - 1.0 / rho1_bar; }
};

double density_from_concentration(double c, const EosParams& p);
CellField density_from_concentration(const CellField& c, const EosParams& p);

double solutal_expansion(double c, const EosParams& p);

// delta - 1 per cell, delta = rho1/rho1_bar + rho2/rho2_bar.
CellField eos_residual(const CellField& rho1, const CellField& rho2, const EosParams& p);
// Same, from (rho, rho1) with rho2 = rho - rho1.
CellField eos_residual_state(const CellField& rho, const CellField& rho1, const EosParams& p);

// Hard-disk mixture value of mu_c^{-1} kB T = c(1-c)[c m2 + (1-c) m1].
// Concentration is clamped to [0,1]; this only feeds noise amplitudes.
double inv_mu_c_kBT(double c, const EosParams& p);

enum class ViscosityModelKind { constant, quadratic, linear_kinematic };
enum class DiffusionModelKind { constant, stokes_einstein, mass_ratio_scaled };
enum class MuModelKind { hard_disk, constant };

// eta(c) models. "quadratic" is the water-glycerol fit
// eta = eta_ref (1 + 0.66 c + 12 c^2); "linear_kinematic" interpolates the
// kinematic viscosity between nu1 = nu(c=1) and nu2 = nu1/sqrt(R).
struct ViscosityModel {
    ViscosityModelKind kind = ViscosityModelKind::constant;
    double eta0 = 1.0;      // constant model
    double eta_ref = 1.0;   // quadratic model prefactor (rho0 * nu0)
    double nu1 = 1.0;       // linear_kinematic
    double mass_ratio = 1.0;

    double eta(double c, double rho) const;
};

// chi(c) models. "stokes_einstein" is chi0 (1 - 2.2 c + 1.2 c^2);
// "mass_ratio_scaled" is chi(R=1) sqrt((1+R)/(2R)), independent of c.
struct DiffusionModel {
    DiffusionModelKind kind = DiffusionModelKind::constant;
    double chi0 = 1.0;
    double chi_r1 = 1.0;
    double mass_ratio = 1.0;

    double chi(double c) const;
};

struct MuModel {
    MuModelKind kind = MuModelKind::hard_disk;
    double value = 0.0;  // constant model: mu_c^{-1} kB T

    double inv_mu_c_kBT(double c, const EosParams& p) const;
};

struct TransportModels {
    ViscosityModel viscosity;
    DiffusionModel diffusion;
    MuModel mu;
};

CellField viscosity_of_c(const CellField& c, const CellField& rho, const ViscosityModel& m);
CellField diffusion_of_c(const CellField& c, const DiffusionModel& m);

}  // namespace lowmach
