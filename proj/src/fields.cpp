#include "lowmach/fields.hpp"

#include <cmath>

namespace lowmach {

void check_same_grid(const Grid2D& a, const Grid2D& b, const char* what) {
    if (!a.same_layout(b)) throw DimensionError(std::string("grid mismatch in ") + what);
}

FaceVecField interp_cell_to_faces(const CellField& a, const ScalarBc& bc) {
    const Grid2D& g = a.grid;
    FaceVecField out(g);
    const int nfx = g.nfx(), nfy = g.nfy();

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < nfx; ++i) {
            if (g.periodic_x()) {
                const int il = (i + g.nx - 1) % g.nx;
                out.fx(i, j) = 0.5 * (a(il, j) + a(i, j));
            } else if (i == 0) {
                out.fx(i, j) = bc.has_x_lo ? bc.x_lo : a(0, j);
            } else if (i == g.nx) {
                out.fx(i, j) = bc.has_x_hi ? bc.x_hi : a(g.nx - 1, j);
            } else {
                out.fx(i, j) = 0.5 * (a(i - 1, j) + a(i, j));
            }
        }
    }
    for (int j = 0; j < nfy; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (g.periodic_y()) {
                const int jl = (j + g.ny - 1) % g.ny;
                out.fy(i, j) = 0.5 * (a(i, jl) + a(i, j));
            } else if (j == 0) {
                out.fy(i, j) = bc.has_y_lo ? bc.y_lo : a(i, 0);
            } else if (j == g.ny) {
                out.fy(i, j) = bc.has_y_hi ? bc.y_hi : a(i, g.ny - 1);
            } else {
                out.fy(i, j) = 0.5 * (a(i, j - 1) + a(i, j));
            }
        }
    }
    return out;
}

FaceVecField velocity_from_momentum(const FaceVecField& m, const FaceVecField& rho_faces) {
    check_same_grid(m.grid, rho_faces.grid, "velocity_from_momentum");
    FaceVecField v(m.grid);
    for (size_t k = 0; k < m.x.size(); ++k) {
        if (!(rho_faces.x[k] > 0.0))
            throw DegenerateStateError("velocity_from_momentum: nonpositive x-face density");
        v.x[k] = m.x[k] / rho_faces.x[k];
    }
    for (size_t k = 0; k < m.y.size(); ++k) {
        if (!(rho_faces.y[k] > 0.0))
            throw DegenerateStateError("velocity_from_momentum: nonpositive y-face density");
        v.y[k] = m.y[k] / rho_faces.y[k];
    }
    return v;
}

CellField concentration(const SimState& state) {
    check_same_grid(state.rho.grid, state.rho1.grid, "concentration");
    CellField c(state.rho.grid);
    for (size_t k = 0; k < c.v.size(); ++k) {
        if (!(state.rho.v[k] > 0.0))
            throw DegenerateStateError("concentration: nonpositive density");
        c.v[k] = state.rho1.v[k] / state.rho.v[k];
    }
    return c;
}

NodeField vorticity(const FaceVecField& v) {
    const Grid2D& g = v.grid;
    if (!g.periodic_x() || !g.periodic_y())
        throw UsageError("vorticity: requires periodic boundaries");
    NodeField w(g);
    for (int j = 0; j < g.ny; ++j) {
        const int jm = (j + g.ny - 1) % g.ny;
        for (int i = 0; i < g.nx; ++i) {
            const int im = (i + g.nx - 1) % g.nx;
            const double dvdx = (v.fy(i, j) - v.fy(im, j)) / g.dx;
            const double dudy = (v.fx(i, j) - v.fx(i, jm)) / g.dy;
            w(i, j) = dvdx - dudy;
        }
    }
    return w;
}

double sum_cells(const CellField& a) {
    double s = 0.0;
    for (double x : a.v) s += x;
    return s;
}

double max_abs(const CellField& a) {
    double s = 0.0;
    for (double x : a.v) s = std::max(s, std::abs(x));
    return s;
}

double min_value(const CellField& a) {
    double s = a.v.empty() ? 0.0 : a.v[0];
    for (double x : a.v) s = std::min(s, x);
    return s;
}

double max_value(const CellField& a) {
    double s = a.v.empty() ? 0.0 : a.v[0];
    for (double x : a.v) s = std::max(s, x);
    return s;
}

}  // namespace lowmach
