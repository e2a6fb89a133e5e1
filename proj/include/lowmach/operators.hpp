#pragma once

#include "lowmach/eos.hpp"
#include "lowmach/fields.hpp"

namespace lowmach {

// Boundary values derived once per stage from (BoundaryData, EosParams,
// TransportModels): the concentration prescribed on each reservoir side plus
// the EOS/transport quantities evaluated at it. Deterministic and stochastic
// fluxes must share these (same interpolated coefficients).
struct SideValues {
    bool reservoir = false;
    double c = 0.0;
    double rho = 0.0;
    double rho1 = 0.0;
    double chi = 0.0;
    double eta = 0.0;
};

struct BcValues {
    BcKind kx = BcKind::periodic;
    BcKind ky = BcKind::periodic;
    SideValues x_lo, x_hi, y_lo, y_hi;

    bool noslip_x() const { return kx == BcKind::wall_noslip || kx == BcKind::reservoir; }
    bool noslip_y() const { return ky == BcKind::wall_noslip || ky == BcKind::reservoir; }
};

BcValues make_bc_values(const Grid2D& g, const BoundaryData& bd, const EosParams& eos,
                        const TransportModels& tm);

ScalarBc scalar_bc_rho(const BcValues& bv);
ScalarBc scalar_bc_rho1(const BcValues& bv);
ScalarBc scalar_bc_chi(const BcValues& bv);
ScalarBc scalar_bc_c(const BcValues& bv);

// F = rho chi grad(c) on faces. Interior faces use centered differences of c
// with arithmetically averaged face coefficients (passed in); reservoir
// boundary faces use the one-sided difference over dx/2 against the boundary
// concentration; wall faces carry zero flux.
FaceVecField diffusive_flux(const FaceVecField& rho_faces, const FaceVecField& chi_faces,
                            const CellField& c, const BcValues& bv);

CellField divergence_cell(const FaceVecField& F);

// Centered difference of a cell scalar onto faces. Boundary faces of
// non-periodic directions get zero (the projection never corrects them).
FaceVecField gradient_faces(const CellField& phi);

// div(s v) with face values of s from linear interpolation; boundary faces
// use the boundary value of s and the constraint-determined normal velocity
// stored in v.
CellField scalar_advection_div(const CellField& s, const FaceVecField& v, const ScalarBc& sbc);

// Momentum advection on the shifted control volumes, centered products.
FaceVecField momentum_advection_div(const FaceVecField& m, const FaceVecField& v,
                                    const BcValues& bv);

NodeField interp_eta_to_nodes(const CellField& eta, const BcValues& bv);

// div[eta (grad v + grad^T v)] on momentum faces; cell-centered eta for the
// diagonal stress, node eta for the mixed stress, one-sided differences at
// walls, zero tangential stress on free-slip sides.
FaceVecField viscous_divergence(const CellField& eta_cell, const NodeField& eta_node,
                                const FaceVecField& v, const BcValues& bv);

// v_n = -(beta/rho) F_n on a reservoir boundary face.
double reservoir_normal_velocity(double F_n, const EosParams& p);

}  // namespace lowmach
