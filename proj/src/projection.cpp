#include "lowmach/projection.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lowmach {

namespace {

struct MgLevel {
    int nx, ny;
    double dx, dy;
    bool px, py;
    std::vector<double> ax, ay;  // face coefficients (1/rho), zero on physical boundary faces
    std::vector<double> phi, rhs, res, tmp;

    int nfx() const { return px ? nx : nx + 1; }
    int nfy() const { return py ? ny : ny + 1; }
    size_t cells() const { return static_cast<size_t>(nx) * ny; }

    double& AX(int i, int j) { return ax[static_cast<size_t>(j) * nfx() + i]; }
    double AX(int i, int j) const { return ax[static_cast<size_t>(j) * nfx() + i]; }
    double& AY(int i, int j) { return ay[static_cast<size_t>(j) * nx + i]; }
    double AY(int i, int j) const { return ay[static_cast<size_t>(j) * nx + i]; }
};

// residual = rhs - A phi, where (A phi) = div(a grad phi)
void residual(const MgLevel& L, const std::vector<double>& phi, const std::vector<double>& rhs,
              std::vector<double>& out) {
    const double idx2 = 1.0 / (L.dx * L.dx), idy2 = 1.0 / (L.dy * L.dy);
    for (int j = 0; j < L.ny; ++j) {
        const int jt = L.py ? (j + 1) % L.ny : j + 1;
        const int jb = L.py ? (j + L.ny - 1) % L.ny : j - 1;
        for (int i = 0; i < L.nx; ++i) {
            const int ir = L.px ? (i + 1) % L.nx : i + 1;
            const int il = L.px ? (i + L.nx - 1) % L.nx : i - 1;
            const size_t c = static_cast<size_t>(j) * L.nx + i;
            const double pc = phi[c];
            const double ae = L.AX(L.px ? (i + 1) % L.nfx() : i + 1, j);
            const double aw = L.AX(i, j);
            const double an = L.AY(i, L.py ? (j + 1) % L.nfy() : j + 1);
            const double as = L.AY(i, j);
            double Ap = 0.0;
            if (ae != 0.0) Ap += ae * (phi[static_cast<size_t>(j) * L.nx + ir] - pc) * idx2;
            if (aw != 0.0) Ap -= aw * (pc - phi[static_cast<size_t>(j) * L.nx + il]) * idx2;
            if (an != 0.0) Ap += an * (phi[static_cast<size_t>(jt) * L.nx + i] - pc) * idy2;
            if (as != 0.0) Ap -= as * (pc - phi[static_cast<size_t>(jb) * L.nx + i]) * idy2;
            out[c] = rhs[c] - Ap;
        }
    }
}

void smooth_color(MgLevel& L, std::vector<double>& phi, const std::vector<double>& rhs,
                  int color) {
    const double idx2 = 1.0 / (L.dx * L.dx), idy2 = 1.0 / (L.dy * L.dy);
    for (int j = 0; j < L.ny; ++j) {
        const int jt = L.py ? (j + 1) % L.ny : j + 1;
        const int jb = L.py ? (j + L.ny - 1) % L.ny : j - 1;
        for (int i = (j + color) % 2; i < L.nx; i += 2) {
            const int ir = L.px ? (i + 1) % L.nx : i + 1;
            const int il = L.px ? (i + L.nx - 1) % L.nx : i - 1;
            const size_t c = static_cast<size_t>(j) * L.nx + i;
            const double ae = L.AX(L.px ? (i + 1) % L.nfx() : i + 1, j);
            const double aw = L.AX(i, j);
            const double an = L.AY(i, L.py ? (j + 1) % L.nfy() : j + 1);
            const double as = L.AY(i, j);
            double num = -rhs[c];
            double diag = 0.0;
            if (ae != 0.0) {
                num += ae * phi[static_cast<size_t>(j) * L.nx + ir] * idx2;
                diag += ae * idx2;
            }
            if (aw != 0.0) {
                num += aw * phi[static_cast<size_t>(j) * L.nx + il] * idx2;
                diag += aw * idx2;
            }
            if (an != 0.0) {
                num += an * phi[static_cast<size_t>(jt) * L.nx + i] * idy2;
                diag += an * idy2;
            }
            if (as != 0.0) {
                num += as * phi[static_cast<size_t>(jb) * L.nx + i] * idy2;
                diag += as * idy2;
            }
            if (diag != 0.0) phi[c] = num / diag;
        }
    }
}

// symmetric red-black sweeps: forward = (red, black), reverse = (black, red)
void smooth(MgLevel& L, std::vector<double>& phi, const std::vector<double>& rhs, int sweeps,
            bool reverse) {
    for (int s = 0; s < sweeps; ++s) {
        if (!reverse) {
            smooth_color(L, phi, rhs, 0);
            smooth_color(L, phi, rhs, 1);
        } else {
            smooth_color(L, phi, rhs, 1);
            smooth_color(L, phi, rhs, 0);
        }
    }
}

struct DenseLU {
    int n = 0;
    std::vector<double> a;  // n x n, row-major, factored in place
    std::vector<int> piv;

    void factor() {
        piv.resize(n);
        for (int k = 0; k < n; ++k) {
            int p = k;
            double best = std::abs(a[static_cast<size_t>(k) * n + k]);
            for (int r = k + 1; r < n; ++r) {
                const double v = std::abs(a[static_cast<size_t>(r) * n + k]);
                if (v > best) {
                    best = v;
                    p = r;
                }
            }
            piv[k] = p;
            if (p != k)
                for (int c = 0; c < n; ++c)
                    std::swap(a[static_cast<size_t>(k) * n + c], a[static_cast<size_t>(p) * n + c]);
            const double d = a[static_cast<size_t>(k) * n + k];
            if (d == 0.0) throw SolverError("poisson coarse solve: singular matrix");
            for (int r = k + 1; r < n; ++r) {
                const double f = a[static_cast<size_t>(r) * n + k] / d;
                a[static_cast<size_t>(r) * n + k] = f;
                for (int c = k + 1; c < n; ++c)
                    a[static_cast<size_t>(r) * n + c] -= f * a[static_cast<size_t>(k) * n + c];
            }
        }
    }

    void solve(std::vector<double>& b) const {
        for (int k = 0; k < n; ++k) {
            if (piv[k] != k) std::swap(b[k], b[piv[k]]);
            for (int r = k + 1; r < n; ++r) b[r] -= a[static_cast<size_t>(r) * n + k] * b[k];
        }
        for (int k = n - 1; k >= 0; --k) {
            for (int c = k + 1; c < n; ++c) b[k] -= a[static_cast<size_t>(k) * n + c] * b[c];
            b[k] /= a[static_cast<size_t>(k) * n + k];
        }
    }
};

class Multigrid {
  public:
    Multigrid(const FaceVecField& rho_faces, const PoissonSettings& s) : set_(s) {
        const Grid2D& g = rho_faces.grid;
        MgLevel top;
        top.nx = g.nx;
        top.ny = g.ny;
        top.dx = g.dx;
        top.dy = g.dy;
        top.px = g.periodic_x();
        top.py = g.periodic_y();
        top.ax.assign(static_cast<size_t>(top.nfx()) * top.ny, 0.0);
        top.ay.assign(static_cast<size_t>(top.nx) * top.nfy(), 0.0);
        for (int j = 0; j < top.ny; ++j)
            for (int i = 0; i < top.nfx(); ++i) {
                const bool bnd = !top.px && (i == 0 || i == top.nx);
                top.AX(i, j) = bnd ? 0.0 : 1.0 / rho_faces.fx(i, j);
            }
        for (int j = 0; j < top.nfy(); ++j)
            for (int i = 0; i < top.nx; ++i) {
                const bool bnd = !top.py && (j == 0 || j == top.ny);
                top.AY(i, j) = bnd ? 0.0 : 1.0 / rho_faces.fy(i, j);
            }
        levels_.push_back(std::move(top));

        while (true) {
            MgLevel& f = levels_.back();
            if (static_cast<int>(f.cells()) <= set_.coarsest_cells) break;
            if (f.nx % 2 != 0 || f.ny % 2 != 0 || f.nx / 2 < 2 || f.ny / 2 < 2) break;
            MgLevel c;
            c.nx = f.nx / 2;
            c.ny = f.ny / 2;
            c.dx = 2.0 * f.dx;
            c.dy = 2.0 * f.dy;
            c.px = f.px;
            c.py = f.py;
            c.ax.assign(static_cast<size_t>(c.nfx()) * c.ny, 0.0);
            c.ay.assign(static_cast<size_t>(c.nx) * c.nfy(), 0.0);
            for (int j = 0; j < c.ny; ++j)
                for (int i = 0; i < c.nfx(); ++i)
                    c.AX(i, j) = 0.5 * (f.AX(2 * i, 2 * j) + f.AX(2 * i, 2 * j + 1));
            for (int j = 0; j < c.nfy(); ++j)
                for (int i = 0; i < c.nx; ++i)
                    c.AY(i, j) = 0.5 * (f.AY(2 * i, 2 * j) + f.AY(2 * i + 1, 2 * j));
            levels_.push_back(std::move(c));
        }
        for (auto& L : levels_) {
            L.phi.assign(L.cells(), 0.0);
            L.rhs.assign(L.cells(), 0.0);
            L.res.assign(L.cells(), 0.0);
            L.tmp.assign(L.cells(), 0.0);
        }
        if (levels_.back().cells() > 4096)
            throw ConfigError("poisson: coarsest multigrid level too large; grid dimensions "
                              "should allow factor-2 coarsening");
        factor_coarsest();
    }

    // one V-cycle applied to correction e for A e = r at level l
    void vcycle(size_t l, std::vector<double>& e, const std::vector<double>& r) {
        MgLevel& L = levels_[l];
        if (l + 1 == levels_.size()) {
            coarse_solve(e, r);
            return;
        }
        smooth(L, e, r, set_.pre_smooth, false);
        residual(L, e, r, L.res);
        MgLevel& C = levels_[l + 1];
        for (int j = 0; j < C.ny; ++j)
            for (int i = 0; i < C.nx; ++i) {
                const size_t f00 = static_cast<size_t>(2 * j) * L.nx + 2 * i;
                const size_t f10 = f00 + 1;
                const size_t f01 = f00 + L.nx;
                const size_t f11 = f01 + 1;
                C.rhs[static_cast<size_t>(j) * C.nx + i] =
                    0.25 * (L.res[f00] + L.res[f10] + L.res[f01] + L.res[f11]);
            }
        std::fill(C.phi.begin(), C.phi.end(), 0.0);
        vcycle(l + 1, C.phi, C.rhs);
        for (int j = 0; j < L.ny; ++j)
            for (int i = 0; i < L.nx; ++i)
                e[static_cast<size_t>(j) * L.nx + i] +=
                    C.phi[static_cast<size_t>(j / 2) * C.nx + i / 2];
        smooth(L, e, r, set_.post_smooth, true);
    }

    MgLevel& top() { return levels_.front(); }

  private:
    void factor_coarsest() {
        MgLevel& L = levels_.back();
        const int n = static_cast<int>(L.cells());
        lu_.n = n;
        lu_.a.assign(static_cast<size_t>(n) * n, 0.0);
        const double idx2 = 1.0 / (L.dx * L.dx), idy2 = 1.0 / (L.dy * L.dy);
        double diag_scale = 0.0;
        auto add = [&](int r, int c, double v) { lu_.a[static_cast<size_t>(r) * n + c] += v; };
        for (int j = 0; j < L.ny; ++j) {
            const int jt = L.py ? (j + 1) % L.ny : j + 1;
            const int jb = L.py ? (j + L.ny - 1) % L.ny : j - 1;
            for (int i = 0; i < L.nx; ++i) {
                const int ir = L.px ? (i + 1) % L.nx : i + 1;
                const int il = L.px ? (i + L.nx - 1) % L.nx : i - 1;
                const int c = j * L.nx + i;
                const double ae = L.AX(L.px ? (i + 1) % L.nfx() : i + 1, j);
                const double aw = L.AX(i, j);
                const double an = L.AY(i, L.py ? (j + 1) % L.nfy() : j + 1);
                const double as = L.AY(i, j);
                double d = 0.0;
                if (ae != 0.0) {
                    add(c, j * L.nx + ir, ae * idx2);
                    d += ae * idx2;
                }
                if (aw != 0.0) {
                    add(c, j * L.nx + il, aw * idx2);
                    d += aw * idx2;
                }
                if (an != 0.0) {
                    add(c, jt * L.nx + i, an * idy2);
                    d += an * idy2;
                }
                if (as != 0.0) {
                    add(c, jb * L.nx + i, as * idy2);
                    d += as * idy2;
                }
                add(c, c, -d);
                diag_scale += d;
            }
        }
        diag_scale = std::max(diag_scale / n, 1e-300);
        // pin the constant nullspace: A - scale * (1/N) 1 1^T is nonsingular and
        // returns the mean-zero solution for mean-zero rhs
        const double shift = diag_scale / n;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) lu_.a[static_cast<size_t>(r) * n + c] -= shift;
        lu_.factor();
    }

    void coarse_solve(std::vector<double>& e, const std::vector<double>& r) {
        const int n = lu_.n;
        std::vector<double> b(r.begin(), r.end());
        double mean = 0.0;
        for (double v : b) mean += v;
        mean /= n;
        for (double& v : b) v -= mean;
        lu_.solve(b);
        for (int k = 0; k < n; ++k) e[k] = b[k];
    }

    std::vector<MgLevel> levels_;
    DenseLU lu_;
    PoissonSettings set_;
};

double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

CellField solve_variable_poisson(const FaceVecField& rho_faces, const CellField& rhs_in,
                                 const PoissonSettings& settings, PoissonStats* stats) {
    settings.validate();
    const Grid2D& g = rhs_in.grid;
    check_same_grid(g, rho_faces.grid, "solve_variable_poisson");

    // compatibility: the pure Neumann / periodic problem needs a mean-zero rhs
    const double dV = g.cell_volume();
    double total = 0.0, scale = 0.0;
    for (double v : rhs_in.v) {
        total += v * dV;
        scale += std::abs(v) * dV;
    }
    if (scale > 0.0 && std::abs(total) > settings.compat_tol * scale)
        throw SolverError("solve_variable_poisson: incompatible right-hand side, sum(rhs dV) = " +
                          std::to_string(total));

    CellField phi(g);
    const size_t n = rhs_in.v.size();
    std::vector<double> rhs(rhs_in.v);
    const double mean = total / (dV * static_cast<double>(n));
    for (double& v : rhs) v -= mean;

    const double rhs_norm = l2_norm(rhs);
    if (stats) {
        stats->rhs_norm = rhs_norm;
        stats->cycles = 0;
        stats->final_residual = 0.0;
    }
    if (rhs_norm == 0.0) return phi;

    Multigrid mg(rho_faces, settings);
    MgLevel& top = mg.top();
    const double target = settings.rel_tol * rhs_norm + settings.abs_tol;

    std::vector<double>& x = phi.v;
    std::vector<double> r(rhs);
    double rn = rhs_norm;
    int cycles = 0;

    if (!settings.use_cg) {
        std::vector<double> e(n, 0.0);
        while (rn > target) {
            if (cycles >= settings.max_vcycles)
                throw SolverError("solve_variable_poisson: no convergence after " +
                                  std::to_string(cycles) +
                                  " V-cycles, residual = " + std::to_string(rn));
            std::fill(e.begin(), e.end(), 0.0);
            mg.vcycle(0, e, r);
            for (size_t k = 0; k < n; ++k) x[k] += e[k];
            residual(top, x, rhs, r);
            rn = l2_norm(r);
            ++cycles;
        }
    } else {
        // preconditioned CG on the negated (positive semidefinite) system
        std::vector<double> z(n, 0.0), p(n), Ap(n), negr(n);
        for (size_t k = 0; k < n; ++k) negr[k] = -r[k];
        auto precond = [&](const std::vector<double>& rr, std::vector<double>& zz) {
            std::fill(zz.begin(), zz.end(), 0.0);
            std::vector<double> flip(rr);
            for (double& v : flip) v = -v;
            mg.vcycle(0, zz, flip);  // solves A zz = -rr, i.e. (-A) zz = rr
        };
        precond(negr, z);
        p = z;
        double rz = 0.0;
        for (size_t k = 0; k < n; ++k) rz += negr[k] * z[k];
        while (rn > target) {
            if (cycles >= settings.max_vcycles)
                throw SolverError("solve_variable_poisson: no convergence after " +
                                  std::to_string(cycles) +
                                  " CG iterations, residual = " + std::to_string(rn));
            residual(top, p, std::vector<double>(n, 0.0), Ap);  // Ap = -A p
            double pAp = 0.0;
            for (size_t k = 0; k < n; ++k) pAp += p[k] * Ap[k];
            if (pAp == 0.0) break;
            const double alpha = rz / pAp;
            for (size_t k = 0; k < n; ++k) {
                x[k] += alpha * p[k];
                negr[k] -= alpha * Ap[k];
            }
            rn = l2_norm(negr);
            precond(negr, z);
            double rz_new = 0.0;
            for (size_t k = 0; k < n; ++k) rz_new += negr[k] * z[k];
            const double beta = rz_new / rz;
            rz = rz_new;
            for (size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
            ++cycles;
        }
    }

    // gauge: mean-zero phi
    double pm = 0.0;
    for (double v : x) pm += v;
    pm /= static_cast<double>(n);
    for (double& v : x) v -= pm;

    if (stats) {
        stats->cycles = cycles;
        stats->final_residual = rn;
    }
    return phi;
}

CellField compute_S(const FaceVecField& F, const EosParams& p) {
    CellField S = divergence_cell(F);
    const double fac = 1.0 / p.rho1_bar - 1.0 / p.rho2_bar;
    for (double& v : S.v) v *= fac;
    return S;
}

ProjectionResult project_RS(const FaceVecField& m_tilde, const CellField& rho,
                            const FaceVecField& rho_faces, const CellField& S,
                            const PoissonSettings& settings) {
    check_same_grid(m_tilde.grid, rho.grid, "project_RS");
    check_same_grid(S.grid, rho.grid, "project_RS");
    ProjectionResult out;
    out.v = velocity_from_momentum(m_tilde, rho_faces);

    CellField rhs = divergence_cell(out.v);
    for (size_t k = 0; k < rhs.v.size(); ++k) rhs.v[k] -= S.v[k];

    CellField phi = solve_variable_poisson(rho_faces, rhs, settings, &out.stats);
    FaceVecField grad = gradient_faces(phi);

    out.m = FaceVecField(m_tilde.grid);
    for (size_t k = 0; k < out.v.x.size(); ++k) {
        out.v.x[k] -= grad.x[k] / rho_faces.x[k];
        out.m.x[k] = rho_faces.x[k] * out.v.x[k];
    }
    for (size_t k = 0; k < out.v.y.size(); ++k) {
        out.v.y[k] -= grad.y[k] / rho_faces.y[k];
        out.m.y[k] = rho_faces.y[k] * out.v.y[k];
    }
    return out;
}

}  // namespace lowmach
