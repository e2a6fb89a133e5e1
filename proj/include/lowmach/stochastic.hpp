#pragma once

#include "lowmach/operators.hpp"
#include "lowmach/rng.hpp"

namespace lowmach {

struct NoiseConfig {
    std::uint64_t seed = 0;
    bool include_mass_noise = true;
    bool include_momentum_noise = true;
    int filter_width = 0;          // 0, 2 or 4
    double variance_scale = 1.0;   // global kB T multiplier, for testing

    void validate() const {
        if (filter_width != 0 && filter_width != 2 && filter_width != 4)
            throw ConfigError("noise.filter_width must be 0, 2 or 4");
        if (variance_scale < 0.0) throw ConfigError("noise.variance_scale must be >= 0");
    }
};

// One stage's worth of standard normal variates: face variates for the mass
// flux, cell variates for the diagonal and node variates for the off-diagonal
// of the momentum noise tensor (single stored value, symmetric by
// construction).
struct NoiseDraw {
    FaceVecField wtilde;  // mass flux
    CellField w_xx;
    CellField w_yy;
    NodeField w_node;
};

NoiseDraw draw_noise(const Grid2D& g, const NoiseConfig& cfg, std::uint64_t step,
                     std::uint32_t stage);

// a*d1 + b*d2 entrywise; used for the midpoint and RK3 noise combinations.
NoiseDraw combine_draws(double a, const NoiseDraw& d1, double b, const NoiseDraw& d2);

// RK3 stage weights of the second sample (the first enters with weight 1).
struct Rk3NoiseWeights {
    double stage1, stage2, stage3;
};
Rk3NoiseWeights rk3_noise_weights();

// Psi on faces: sqrt(2 chi rho mu_c^{-1} kB T / (dt dV)) * Wtilde, with the
// same interpolated face coefficients as the deterministic flux. Zero on all
// non-periodic boundary faces. q_faces holds rho * mu_c^{-1} kB T; negative
// interpolated values are clamped to zero.
FaceVecField stochastic_mass_flux(const FaceVecField& chi_faces, const FaceVecField& q_faces,
                                  double dt, double dV, double variance_scale,
                                  const NoiseDraw& draw);

// Divergence of the symmetric stochastic stress sqrt(eta kB T/(dt dV))(W+W^T)
// onto momentum faces. Diagonal entries live at cell centers (cell eta),
// off-diagonal at nodes (node eta, zero on boundary nodes).
FaceVecField stochastic_momentum_flux_div(const CellField& eta_cell, const NodeField& eta_node,
                                          double kBT, double dt, double dV, double variance_scale,
                                          const NoiseDraw& draw);

// In-place tensor-product application of the width-w smoothing stencil along
// each direction; periodic boundaries only.
void apply_filter(std::vector<double>& field, int nx, int ny, int w);
void apply_filter(NoiseDraw& draw, int w);

// One-dimensional transfer function of the filter at discrete wavenumber
// dk = k*dx (cosine polynomial).
double filter_transfer(double dk, int w);

}  // namespace lowmach
