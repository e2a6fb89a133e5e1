#include "lowmach/operators.hpp"

#include <algorithm>
#include <cmath>

namespace lowmach {

namespace {

SideValues make_side(bool reservoir, double c, const EosParams& eos, const TransportModels& tm) {
    SideValues s;
    s.reservoir = reservoir;
    if (reservoir) {
        s.c = c;
        s.rho = density_from_concentration(c, eos);
        s.rho1 = c * s.rho;
        s.chi = tm.diffusion.chi(c);
        s.eta = tm.viscosity.eta(c, s.rho);
    }
    return s;
}

}  // namespace

BcValues make_bc_values(const Grid2D& g, const BoundaryData& bd, const EosParams& eos,
                        const TransportModels& tm) {
    BcValues bv;
    bv.kx = g.bc_x;
    bv.ky = g.bc_y;
    bv.x_lo = make_side(g.bc_x == BcKind::reservoir, bd.c_x_lo, eos, tm);
    bv.x_hi = make_side(g.bc_x == BcKind::reservoir, bd.c_x_hi, eos, tm);
    bv.y_lo = make_side(g.bc_y == BcKind::reservoir, bd.c_y_lo, eos, tm);
    bv.y_hi = make_side(g.bc_y == BcKind::reservoir, bd.c_y_hi, eos, tm);
    return bv;
}

namespace {

ScalarBc side_values_to_bc(const BcValues& bv, double SideValues::*member) {
    ScalarBc bc;
    if (bv.x_lo.reservoir) {
        bc.has_x_lo = true;
        bc.x_lo = bv.x_lo.*member;
    }
    if (bv.x_hi.reservoir) {
        bc.has_x_hi = true;
        bc.x_hi = bv.x_hi.*member;
    }
    if (bv.y_lo.reservoir) {
        bc.has_y_lo = true;
        bc.y_lo = bv.y_lo.*member;
    }
    if (bv.y_hi.reservoir) {
        bc.has_y_hi = true;
        bc.y_hi = bv.y_hi.*member;
    }
    return bc;
}

}  // namespace

ScalarBc scalar_bc_rho(const BcValues& bv) { return side_values_to_bc(bv, &SideValues::rho); }
ScalarBc scalar_bc_rho1(const BcValues& bv) { return side_values_to_bc(bv, &SideValues::rho1); }
ScalarBc scalar_bc_chi(const BcValues& bv) { return side_values_to_bc(bv, &SideValues::chi); }
ScalarBc scalar_bc_c(const BcValues& bv) { return side_values_to_bc(bv, &SideValues::c); }

FaceVecField diffusive_flux(const FaceVecField& rho_faces, const FaceVecField& chi_faces,
                            const CellField& c, const BcValues& bv) {
    const Grid2D& g = c.grid;
    check_same_grid(rho_faces.grid, g, "diffusive_flux");
    check_same_grid(chi_faces.grid, g, "diffusive_flux");
    FaceVecField F(g);

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nfx(); ++i) {
            const double coef = rho_faces.fx(i, j) * chi_faces.fx(i, j);
            double grad;
            if (g.periodic_x()) {
                const int il = (i + g.nx - 1) % g.nx;
                grad = (c(i, j) - c(il, j)) / g.dx;
            } else if (i == 0) {
                if (!bv.x_lo.reservoir) {
                    F.fx(i, j) = 0.0;
                    continue;
                }
                grad = (c(0, j) - bv.x_lo.c) / (0.5 * g.dx);
            } else if (i == g.nx) {
                if (!bv.x_hi.reservoir) {
                    F.fx(i, j) = 0.0;
                    continue;
                }
                grad = (bv.x_hi.c - c(g.nx - 1, j)) / (0.5 * g.dx);
            } else {
                grad = (c(i, j) - c(i - 1, j)) / g.dx;
            }
            F.fx(i, j) = coef * grad;
        }
    }
    for (int j = 0; j < g.nfy(); ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double coef = rho_faces.fy(i, j) * chi_faces.fy(i, j);
            double grad;
            if (g.periodic_y()) {
                const int jl = (j + g.ny - 1) % g.ny;
                grad = (c(i, j) - c(i, jl)) / g.dy;
            } else if (j == 0) {
                if (!bv.y_lo.reservoir) {
                    F.fy(i, j) = 0.0;
                    continue;
                }
                grad = (c(i, 0) - bv.y_lo.c) / (0.5 * g.dy);
            } else if (j == g.ny) {
                if (!bv.y_hi.reservoir) {
                    F.fy(i, j) = 0.0;
                    continue;
                }
                grad = (bv.y_hi.c - c(i, g.ny - 1)) / (0.5 * g.dy);
            } else {
                grad = (c(i, j) - c(i, j - 1)) / g.dy;
            }
            F.fy(i, j) = coef * grad;
        }
    }
    return F;
}

CellField divergence_cell(const FaceVecField& F) {
    const Grid2D& g = F.grid;
    CellField d(g);
    for (int j = 0; j < g.ny; ++j) {
        const int jr = g.periodic_y() ? (j + 1) % g.ny : j + 1;
        for (int i = 0; i < g.nx; ++i) {
            const int ir = g.periodic_x() ? (i + 1) % g.nx : i + 1;
            d(i, j) = (F.fx(ir, j) - F.fx(i, j)) / g.dx + (F.fy(i, jr) - F.fy(i, j)) / g.dy;
        }
    }
    return d;
}

FaceVecField gradient_faces(const CellField& phi) {
    const Grid2D& g = phi.grid;
    FaceVecField grad(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nfx(); ++i) {
            if (g.periodic_x()) {
                const int il = (i + g.nx - 1) % g.nx;
                grad.fx(i, j) = (phi(i, j) - phi(il, j)) / g.dx;
            } else if (i == 0 || i == g.nx) {
                grad.fx(i, j) = 0.0;
            } else {
                grad.fx(i, j) = (phi(i, j) - phi(i - 1, j)) / g.dx;
            }
        }
    }
    for (int j = 0; j < g.nfy(); ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (g.periodic_y()) {
                const int jl = (j + g.ny - 1) % g.ny;
                grad.fy(i, j) = (phi(i, j) - phi(i, jl)) / g.dy;
            } else if (j == 0 || j == g.ny) {
                grad.fy(i, j) = 0.0;
            } else {
                grad.fy(i, j) = (phi(i, j) - phi(i, j - 1)) / g.dy;
            }
        }
    }
    return grad;
}

CellField scalar_advection_div(const CellField& s, const FaceVecField& v, const ScalarBc& sbc) {
    check_same_grid(s.grid, v.grid, "scalar_advection_div");
    FaceVecField sf = interp_cell_to_faces(s, sbc);
    FaceVecField flux(s.grid);
    for (size_t k = 0; k < flux.x.size(); ++k) flux.x[k] = sf.x[k] * v.x[k];
    for (size_t k = 0; k < flux.y.size(); ++k) flux.y[k] = sf.y[k] * v.y[k];
    return divergence_cell(flux);
}

namespace {

// Right x-face index of cell i (wrapping in periodic x).
inline int rface_x(const Grid2D& g, int i) { return g.periodic_x() ? (i + 1) % g.nx : i + 1; }
inline int rface_y(const Grid2D& g, int j) { return g.periodic_y() ? (j + 1) % g.ny : j + 1; }

}  // namespace

FaceVecField momentum_advection_div(const FaceVecField& m, const FaceVecField& v,
                                    const BcValues& bv) {
    const Grid2D& g = m.grid;
    check_same_grid(g, v.grid, "momentum_advection_div");
    FaceVecField out(g);

    // x-momentum, interior x-faces only
    const int ix_lo = g.periodic_x() ? 0 : 1;
    const int ix_hi = g.periodic_x() ? g.nfx() : g.nx;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = ix_lo; i < ix_hi; ++i) {
            const int cl = g.periodic_x() ? (i + g.nx - 1) % g.nx : i - 1;  // left cell
            const int cr = i % g.nx;                                        // right cell

            auto cell_prod = [&](int a) {
                const int fr = rface_x(g, a);
                const double mx = 0.5 * (m.fx(a, j) + m.fx(fr, j));
                const double ux = 0.5 * (v.fx(a, j) + v.fx(fr, j));
                return mx * ux;
            };
            const double fx_r = cell_prod(cr);
            const double fx_l = cell_prod(cl);

            // product (m_x v) at the node above (jn = j+1) and below (jn = j)
            auto node_prod = [&](int jn) {
                double mx_node, vy_node;
                const int il = g.periodic_x() ? (i + g.nx - 1) % g.nx : i - 1;
                if (g.periodic_y()) {
                    const int ja = (jn + g.ny - 1) % g.ny;
                    const int jb = jn % g.ny;
                    mx_node = 0.5 * (m.fx(i, ja) + m.fx(i, jb));
                    vy_node = 0.5 * (v.fy(il, jb) + v.fy(i, jb));
                } else if (jn == 0 || jn == g.ny) {
                    vy_node = 0.5 * (v.fy(il, jn) + v.fy(i, jn));
                    if (bv.ky == BcKind::wall_freeslip) {
                        const int jrow = (jn == 0) ? 0 : g.ny - 1;
                        mx_node = m.fx(i, jrow);
                    } else {
                        mx_node = 0.0;  // no-slip tangential momentum
                    }
                } else {
                    mx_node = 0.5 * (m.fx(i, jn - 1) + m.fx(i, jn));
                    vy_node = 0.5 * (v.fy(il, jn) + v.fy(i, jn));
                }
                return mx_node * vy_node;
            };
            const double fy_t = node_prod(j + 1);
            const double fy_b = node_prod(j);

            out.fx(i, j) = (fx_r - fx_l) / g.dx + (fy_t - fy_b) / g.dy;
        }
    }

    // y-momentum, interior y-faces only
    const int jy_lo = g.periodic_y() ? 0 : 1;
    const int jy_hi = g.periodic_y() ? g.nfy() : g.ny;
    for (int j = jy_lo; j < jy_hi; ++j) {
        const int cb = g.periodic_y() ? (j + g.ny - 1) % g.ny : j - 1;  // bottom cell
        const int ct = j % g.ny;                                        // top cell
        for (int i = 0; i < g.nx; ++i) {
            auto cell_prod = [&](int a) {
                const int fr = rface_y(g, a);
                const double my = 0.5 * (m.fy(i, a) + m.fy(i, fr));
                const double vy = 0.5 * (v.fy(i, a) + v.fy(i, fr));
                return my * vy;
            };
            const double fy_t = cell_prod(ct);
            const double fy_b = cell_prod(cb);

            auto node_prod = [&](int in) {
                double my_node, vx_node;
                const int jl = g.periodic_y() ? (j + g.ny - 1) % g.ny : j - 1;
                if (g.periodic_x()) {
                    const int ia = (in + g.nx - 1) % g.nx;
                    const int ib = in % g.nx;
                    my_node = 0.5 * (m.fy(ia, j) + m.fy(ib, j));
                    vx_node = 0.5 * (v.fx(ib, jl) + v.fx(ib, j));
                } else if (in == 0 || in == g.nx) {
                    vx_node = 0.5 * (v.fx(in, jl) + v.fx(in, j));
                    if (bv.kx == BcKind::wall_freeslip) {
                        const int irow = (in == 0) ? 0 : g.nx - 1;
                        my_node = m.fy(irow, j);
                    } else {
                        my_node = 0.0;
                    }
                } else {
                    my_node = 0.5 * (m.fy(in - 1, j) + m.fy(in, j));
                    vx_node = 0.5 * (v.fx(in, jl) + v.fx(in, j));
                }
                return my_node * vx_node;
            };
            const double fx_r = node_prod(i + 1);
            const double fx_l = node_prod(i);

            out.fy(i, j) = (fy_t - fy_b) / g.dy + (fx_r - fx_l) / g.dx;
        }
    }
    return out;
}

NodeField interp_eta_to_nodes(const CellField& eta, const BcValues& bv) {
    const Grid2D& g = eta.grid;
    NodeField out(g);
    for (int j = 0; j < g.nny(); ++j) {
        const bool y_lo = !g.periodic_y() && j == 0;
        const bool y_hi = !g.periodic_y() && j == g.ny;
        for (int i = 0; i < g.nnx(); ++i) {
            const bool x_lo = !g.periodic_x() && i == 0;
            const bool x_hi = !g.periodic_x() && i == g.nx;

            if (y_lo && bv.y_lo.reservoir) {
                out(i, j) = bv.y_lo.eta;
                continue;
            }
            if (y_hi && bv.y_hi.reservoir) {
                out(i, j) = bv.y_hi.eta;
                continue;
            }
            if (x_lo && bv.x_lo.reservoir) {
                out(i, j) = bv.x_lo.eta;
                continue;
            }
            if (x_hi && bv.x_hi.reservoir) {
                out(i, j) = bv.x_hi.eta;
                continue;
            }
            // interior averaging, one-sided towards walls
            const int ia = x_lo ? 0 : (g.periodic_x() ? (i + g.nx - 1) % g.nx : i - 1);
            const int ib = x_hi ? g.nx - 1 : i % g.nx;
            const int ja = y_lo ? 0 : (g.periodic_y() ? (j + g.ny - 1) % g.ny : j - 1);
            const int jb = y_hi ? g.ny - 1 : j % g.ny;
            out(i, j) = 0.25 * (eta(ia, ja) + eta(ib, ja) + eta(ia, jb) + eta(ib, jb));
        }
    }
    return out;
}

FaceVecField viscous_divergence(const CellField& eta_cell, const NodeField& eta_node,
                                const FaceVecField& v, const BcValues& bv) {
    const Grid2D& g = v.grid;
    check_same_grid(eta_cell.grid, g, "viscous_divergence");
    FaceVecField out(g);

    // mixed stress eta (du/dy + dv/dx) at node (in, jn)
    auto mixed_stress = [&](int in, int jn) -> double {
        const bool y_lo = !g.periodic_y() && jn == 0;
        const bool y_hi = !g.periodic_y() && jn == g.ny;
        const bool x_lo = !g.periodic_x() && in == 0;
        const bool x_hi = !g.periodic_x() && in == g.nx;

        if ((y_lo || y_hi) && bv.ky == BcKind::wall_freeslip) return 0.0;
        if ((x_lo || x_hi) && bv.kx == BcKind::wall_freeslip) return 0.0;

        // wrapped node indices for array access
        const int inw = g.periodic_x() ? in % g.nx : in;
        const int jnw = g.periodic_y() ? jn % g.ny : jn;
        // cell/face columns adjacent to the node
        const int il = x_lo ? 0 : (g.periodic_x() ? (in + g.nx - 1) % g.nx : in - 1);
        const int ib = g.periodic_x() ? in % g.nx : std::min(in, g.nx - 1);
        const int ja = g.periodic_y() ? (jn + g.ny - 1) % g.ny : jn - 1;  // x-face row below
        const int jb = g.periodic_y() ? jn % g.ny : std::min(jn, g.ny - 1);

        double dudy, dvdx;
        if (y_lo) {
            dudy = (v.fx(inw, 0) - 0.0) / (0.5 * g.dy);  // no-slip tangential value 0
        } else if (y_hi) {
            dudy = (0.0 - v.fx(inw, g.ny - 1)) / (0.5 * g.dy);
        } else {
            dudy = (v.fx(inw, jb) - v.fx(inw, ja)) / g.dy;
        }
        if (x_lo) {
            dvdx = (v.fy(0, jnw) - 0.0) / (0.5 * g.dx);
        } else if (x_hi) {
            dvdx = (0.0 - v.fy(g.nx - 1, jnw)) / (0.5 * g.dx);
        } else {
            dvdx = (v.fy(ib, jnw) - v.fy(il, jnw)) / g.dx;
        }
        return eta_node(inw, jnw) * (dudy + dvdx);
    };

    // x-momentum
    const int ix_lo = g.periodic_x() ? 0 : 1;
    const int ix_hi = g.periodic_x() ? g.nfx() : g.nx;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = ix_lo; i < ix_hi; ++i) {
            const int cl = g.periodic_x() ? (i + g.nx - 1) % g.nx : i - 1;
            const int cr = i % g.nx;
            auto diag = [&](int a) {
                const int fr = rface_x(g, a);
                return eta_cell(a, j) * (v.fx(fr, j) - v.fx(a, j)) / g.dx;
            };
            const double t1 = 2.0 * (diag(cr) - diag(cl)) / g.dx;
            const double t2 = (mixed_stress(i, j + 1) - mixed_stress(i, j)) / g.dy;
            out.fx(i, j) = t1 + t2;
        }
    }

    // y-momentum
    const int jy_lo = g.periodic_y() ? 0 : 1;
    const int jy_hi = g.periodic_y() ? g.nfy() : g.ny;
    for (int j = jy_lo; j < jy_hi; ++j) {
        const int cb = g.periodic_y() ? (j + g.ny - 1) % g.ny : j - 1;
        const int ct = j % g.ny;
        for (int i = 0; i < g.nx; ++i) {
            auto diag = [&](int a) {
                const int fr = rface_y(g, a);
                return eta_cell(i, a) * (v.fy(i, fr) - v.fy(i, a)) / g.dy;
            };
            const double t1 = 2.0 * (diag(ct) - diag(cb)) / g.dy;
            const double t2 = (mixed_stress(i + 1, j) - mixed_stress(i, j)) / g.dx;
            out.fy(i, j) = t1 + t2;
        }
    }
    return out;
}

double reservoir_normal_velocity(double F_n, const EosParams& p) {
    return -p.beta_over_rho() * F_n;
}

}  // namespace lowmach
