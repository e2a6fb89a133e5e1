#include "lowmach/stochastic.hpp"

#include <cmath>

namespace lowmach {

NoiseDraw draw_noise(const Grid2D& g, const NoiseConfig& cfg, std::uint64_t step,
                     std::uint32_t stage) {
    NoiseDraw d{FaceVecField(g), CellField(g), CellField(g), NodeField(g)};
    const std::uint64_t seed = cfg.seed;

    for (std::uint64_t k = 0; k < d.wtilde.x.size(); ++k)
        d.wtilde.x[k] = normal_variate(seed, step, stage, NoiseField::mass_x, k);
    for (std::uint64_t k = 0; k < d.wtilde.y.size(); ++k)
        d.wtilde.y[k] = normal_variate(seed, step, stage, NoiseField::mass_y, k);
    for (std::uint64_t k = 0; k < d.w_xx.v.size(); ++k)
        d.w_xx.v[k] = normal_variate(seed, step, stage, NoiseField::mom_xx, k);
    for (std::uint64_t k = 0; k < d.w_yy.v.size(); ++k)
        d.w_yy.v[k] = normal_variate(seed, step, stage, NoiseField::mom_yy, k);
    for (std::uint64_t k = 0; k < d.w_node.v.size(); ++k)
        d.w_node.v[k] = normal_variate(seed, step, stage, NoiseField::mom_node, k);

    if (cfg.filter_width != 0) apply_filter(d, cfg.filter_width);
    return d;
}

NoiseDraw combine_draws(double a, const NoiseDraw& d1, double b, const NoiseDraw& d2) {
    NoiseDraw out = d1;
    for (size_t k = 0; k < out.wtilde.x.size(); ++k)
        out.wtilde.x[k] = a * d1.wtilde.x[k] + b * d2.wtilde.x[k];
    for (size_t k = 0; k < out.wtilde.y.size(); ++k)
        out.wtilde.y[k] = a * d1.wtilde.y[k] + b * d2.wtilde.y[k];
    for (size_t k = 0; k < out.w_xx.v.size(); ++k) out.w_xx.v[k] = a * d1.w_xx.v[k] + b * d2.w_xx.v[k];
    for (size_t k = 0; k < out.w_yy.v.size(); ++k) out.w_yy.v[k] = a * d1.w_yy.v[k] + b * d2.w_yy.v[k];
    for (size_t k = 0; k < out.w_node.v.size(); ++k)
        out.w_node.v[k] = a * d1.w_node.v[k] + b * d2.w_node.v[k];
    return out;
}

Rk3NoiseWeights rk3_noise_weights() {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    return {(2.0 * s2 + s3) / 5.0, (-4.0 * s2 + 3.0 * s3) / 5.0, (s2 - 2.0 * s3) / 10.0};
}

FaceVecField stochastic_mass_flux(const FaceVecField& chi_faces, const FaceVecField& q_faces,
                                  double dt, double dV, double variance_scale,
                                  const NoiseDraw& draw) {
    const Grid2D& g = chi_faces.grid;
    check_same_grid(g, q_faces.grid, "stochastic_mass_flux");
    FaceVecField psi(g);
    if (!(dt > 0.0) || !(dV > 0.0))
        throw UsageError("stochastic_mass_flux: dt and dV must be positive");
    const double pref = 2.0 * variance_scale / (dt * dV);

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nfx(); ++i) {
            if (!g.periodic_x() && (i == 0 || i == g.nx)) continue;  // zero at boundaries
            const double a2 = pref * chi_faces.fx(i, j) * std::max(0.0, q_faces.fx(i, j));
            psi.fx(i, j) = std::sqrt(std::max(0.0, a2)) * draw.wtilde.fx(i, j);
        }
    }
    for (int j = 0; j < g.nfy(); ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (!g.periodic_y() && (j == 0 || j == g.ny)) continue;
            const double a2 = pref * chi_faces.fy(i, j) * std::max(0.0, q_faces.fy(i, j));
            psi.fy(i, j) = std::sqrt(std::max(0.0, a2)) * draw.wtilde.fy(i, j);
        }
    }
    return psi;
}

FaceVecField stochastic_momentum_flux_div(const CellField& eta_cell, const NodeField& eta_node,
                                          double kBT, double dt, double dV, double variance_scale,
                                          const NoiseDraw& draw) {
    const Grid2D& g = eta_cell.grid;
    FaceVecField out(g);
    const double pref = variance_scale * kBT / (dt * dV);

    // sigma_xx = 2 sqrt(eta_cell pref) W_xx, sigma_yy likewise
    CellField sxx(g), syy(g);
    for (size_t k = 0; k < sxx.v.size(); ++k) {
        const double amp = std::sqrt(std::max(0.0, eta_cell.v[k] * pref));
        sxx.v[k] = 2.0 * amp * draw.w_xx.v[k];
        syy.v[k] = 2.0 * amp * draw.w_yy.v[k];
    }
    // sigma_xy = sigma_yx = sqrt(2 eta_node pref) W_node, zero on boundary nodes
    NodeField sxy(g);
    for (int j = 0; j < g.nny(); ++j) {
        const bool ybnd = !g.periodic_y() && (j == 0 || j == g.ny);
        for (int i = 0; i < g.nnx(); ++i) {
            const bool xbnd = !g.periodic_x() && (i == 0 || i == g.nx);
            if (xbnd || ybnd) continue;
            const double amp = std::sqrt(std::max(0.0, 2.0 * eta_node(i, j) * pref));
            sxy(i, j) = amp * draw.w_node(i, j);
        }
    }

    // x-momentum: d(sxx)/dx + d(sxy)/dy on interior x-faces
    const int ix_lo = g.periodic_x() ? 0 : 1;
    const int ix_hi = g.periodic_x() ? g.nfx() : g.nx;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = ix_lo; i < ix_hi; ++i) {
            const int cl = g.periodic_x() ? (i + g.nx - 1) % g.nx : i - 1;
            const int cr = i % g.nx;
            const int jt = g.periodic_y() ? (j + 1) % g.nny() : j + 1;
            out.fx(i, j) = (sxx(cr, j) - sxx(cl, j)) / g.dx + (sxy(i, jt) - sxy(i, j)) / g.dy;
        }
    }
    // y-momentum: d(sxy)/dx + d(syy)/dy on interior y-faces
    const int jy_lo = g.periodic_y() ? 0 : 1;
    const int jy_hi = g.periodic_y() ? g.nfy() : g.ny;
    for (int j = jy_lo; j < jy_hi; ++j) {
        const int cb = g.periodic_y() ? (j + g.ny - 1) % g.ny : j - 1;
        const int ct = j % g.ny;
        for (int i = 0; i < g.nx; ++i) {
            const int ir = g.periodic_x() ? (i + 1) % g.nnx() : i + 1;
            out.fy(i, j) = (syy(i, ct) - syy(i, cb)) / g.dy + (sxy(ir, j) - sxy(i, j)) / g.dx;
        }
    }
    return out;
}

namespace {

void filter_line(std::vector<double>& buf, std::vector<double>& tmp, int n, const double* w,
                 int hw) {
    for (int i = 0; i < n; ++i) {
        double s = w[0] * buf[i];
        for (int o = 1; o <= hw; ++o)
            s += w[o] * (buf[(i + o) % n] + buf[(i - o + 2 * n) % n]);
        tmp[i] = s;
    }
    buf.swap(tmp);
}

void filter_2d(std::vector<double>& v, int nx, int ny, const double* w, int hw) {
    std::vector<double> line(std::max(nx, ny)), tmp(std::max(nx, ny));
    // along x
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) line[i] = v[static_cast<size_t>(j) * nx + i];
        line.resize(nx);
        tmp.resize(nx);
        filter_line(line, tmp, nx, w, hw);
        for (int i = 0; i < nx; ++i) v[static_cast<size_t>(j) * nx + i] = line[i];
    }
    // along y
    line.resize(ny);
    tmp.resize(ny);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) line[j] = v[static_cast<size_t>(j) * nx + i];
        filter_line(line, tmp, ny, w, hw);
        for (int j = 0; j < ny; ++j) v[static_cast<size_t>(j) * nx + i] = line[j];
    }
}

// stencil weights, center first
constexpr double kW2[3] = {5.0 / 8.0, 1.0 / 4.0, -1.0 / 16.0};
constexpr double kW4[5] = {93.0 / 128.0, 7.0 / 32.0, -7.0 / 64.0, 1.0 / 32.0, -1.0 / 256.0};

}  // namespace

void apply_filter(std::vector<double>& field, int nx, int ny, int w) {
    if (w == 0) return;
    if (w == 2)
        filter_2d(field, nx, ny, kW2, 2);
    else if (w == 4)
        filter_2d(field, nx, ny, kW4, 4);
    else
        throw ConfigError("apply_filter: width must be 0, 2 or 4");
}

void apply_filter(NoiseDraw& draw, int w) {
    const Grid2D& g = draw.wtilde.grid;
    if (!g.periodic_x() || !g.periodic_y())
        throw ConfigError("noise filtering requires periodic boundary conditions");
    apply_filter(draw.wtilde.x, g.nfx(), g.ny, w);
    apply_filter(draw.wtilde.y, g.nx, g.nfy(), w);
    apply_filter(draw.w_xx.v, g.nx, g.ny, w);
    apply_filter(draw.w_yy.v, g.nx, g.ny, w);
    apply_filter(draw.w_node.v, g.nnx(), g.nny(), w);
}

double filter_transfer(double dk, int w) {
    if (w == 0) return 1.0;
    if (w == 2) return kW2[0] + 2.0 * kW2[1] * std::cos(dk) + 2.0 * kW2[2] * std::cos(2.0 * dk);
    if (w == 4)
        return kW4[0] + 2.0 * kW4[1] * std::cos(dk) + 2.0 * kW4[2] * std::cos(2.0 * dk) +
               2.0 * kW4[3] * std::cos(3.0 * dk) + 2.0 * kW4[4] * std::cos(4.0 * dk);
    throw ConfigError("filter_transfer: width must be 0, 2 or 4");
}

}  // namespace lowmach
