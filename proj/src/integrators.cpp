#include "lowmach/integrators.hpp"

#include <cmath>

namespace lowmach {

namespace {

ScalarBc scalar_bc_q(const BcValues& bv, const StepContext& ctx) {
    ScalarBc bc;
    auto fill = [&](const SideValues& s, bool& has, double& val) {
        if (s.reservoir) {
            has = true;
            val = s.rho * ctx.transport.mu.inv_mu_c_kBT(s.c, ctx.eos);
        }
    };
    fill(bv.x_lo, bc.has_x_lo, bc.x_lo);
    fill(bv.x_hi, bc.has_x_hi, bc.x_hi);
    fill(bv.y_lo, bc.has_y_lo, bc.y_lo);
    fill(bv.y_hi, bc.has_y_hi, bc.y_hi);
    return bc;
}

// Boundary faces of the momentum are not free variables: reservoir faces get
// rho_b v_n with v_n from the constraint, walls get zero.
void impose_momentum_bc(FaceVecField& m, const FaceVecField& F, const BcValues& bv,
                        const EosParams& eos) {
    const Grid2D& g = m.grid;
    if (!g.periodic_x()) {
        for (int j = 0; j < g.ny; ++j) {
            m.fx(0, j) = bv.x_lo.reservoir
                             ? bv.x_lo.rho * reservoir_normal_velocity(F.fx(0, j), eos)
                             : 0.0;
            m.fx(g.nx, j) = bv.x_hi.reservoir
                                ? bv.x_hi.rho * reservoir_normal_velocity(F.fx(g.nx, j), eos)
                                : 0.0;
        }
    }
    if (!g.periodic_y()) {
        for (int i = 0; i < g.nx; ++i) {
            m.fy(i, 0) = bv.y_lo.reservoir
                             ? bv.y_lo.rho * reservoir_normal_velocity(F.fy(i, 0), eos)
                             : 0.0;
            m.fy(i, g.ny) = bv.y_hi.reservoir
                                ? bv.y_hi.rho * reservoir_normal_velocity(F.fy(i, g.ny), eos)
                                : 0.0;
        }
    }
}

struct DrawSet {
    NoiseDraw d;
};

void record_eos(const StepContext& ctx, const SimState& s, StepDiagnostics* diag) {
    if (!diag) return;
    CellField r = eos_residual_state(s.rho, s.rho1, ctx.eos);
    diag->max_eos_residual = std::max(diag->max_eos_residual, max_abs(r));
}

}  // namespace

EulerIncrements euler_substep(const StepContext& ctx, const SimState& eval, double dt_noise,
                              double dt_adv, const NoiseDraw& draw, StepDiagnostics* diag) {
    const Grid2D& g = eval.rho.grid;
    const double dV = g.cell_volume();

    CellField c = concentration(eval);
    BcValues bv = make_bc_values(g, ctx.boundary, ctx.eos, ctx.transport);

    CellField chi_cell = diffusion_of_c(c, ctx.transport.diffusion);
    CellField eta_cell = viscosity_of_c(c, eval.rho, ctx.transport.viscosity);
    NodeField eta_node = interp_eta_to_nodes(eta_cell, bv);

    FaceVecField rho_faces = interp_cell_to_faces(eval.rho, scalar_bc_rho(bv));
    FaceVecField chi_faces = interp_cell_to_faces(chi_cell, scalar_bc_chi(bv));

    const double rho_floor = 1e-12 * std::max(ctx.eos.rho1_bar, ctx.eos.rho2_bar);
    for (double r : rho_faces.x)
        if (r < rho_floor) throw DegenerateStateError("euler_substep: face density below floor");
    for (double r : rho_faces.y)
        if (r < rho_floor) throw DegenerateStateError("euler_substep: face density below floor");

    // diffusive + stochastic mass flux, both built from the same face coefficients
    FaceVecField F = diffusive_flux(rho_faces, chi_faces, c, bv);
    if (ctx.noise.include_mass_noise && ctx.noise.variance_scale > 0.0) {
        CellField q(g);
        for (size_t k = 0; k < q.v.size(); ++k)
            q.v[k] = eval.rho.v[k] * ctx.transport.mu.inv_mu_c_kBT(c.v[k], ctx.eos);
        FaceVecField q_faces = interp_cell_to_faces(q, scalar_bc_q(bv, ctx));
        FaceVecField psi =
            stochastic_mass_flux(chi_faces, q_faces, dt_noise, dV, ctx.noise.variance_scale, draw);
        for (size_t k = 0; k < F.x.size(); ++k) F.x[k] += psi.x[k];
        for (size_t k = 0; k < F.y.size(); ++k) F.y[k] += psi.y[k];
    }

    CellField S = compute_S(F, ctx.eos);

    FaceVecField m_work = eval.m;
    impose_momentum_bc(m_work, F, bv, ctx.eos);
    ProjectionResult proj = project_RS(m_work, eval.rho, rho_faces, S, ctx.poisson);
    if (diag) {
        diag->poisson_cycles += proj.stats.cycles;
        if (proj.stats.rhs_norm > 0.0)
            diag->poisson_residual = std::max(diag->poisson_residual,
                                              proj.stats.final_residual / proj.stats.rhs_norm);
        ++diag->substeps;
    }

    CellField adv_rho1 = scalar_advection_div(eval.rho1, proj.v, scalar_bc_rho1(bv));
    CellField adv_rho = scalar_advection_div(eval.rho, proj.v, scalar_bc_rho(bv));
    FaceVecField adv_m = momentum_advection_div(proj.m, proj.v, bv);
    FaceVecField visc = viscous_divergence(eta_cell, eta_node, proj.v, bv);

    FaceVecField noise_m(g);
    if (ctx.noise.include_momentum_noise && ctx.noise.variance_scale > 0.0)
        noise_m = stochastic_momentum_flux_div(eta_cell, eta_node, ctx.eos.kBT, dt_noise, dV,
                                               ctx.noise.variance_scale, draw);

    CellField divF = divergence_cell(F);

    EulerIncrements out{CellField(g), CellField(g), FaceVecField(g), std::move(proj.m),
                        std::move(proj.v)};
    for (size_t k = 0; k < out.d_rho1.v.size(); ++k) {
        out.d_rho1.v[k] = dt_adv * (divF.v[k] - adv_rho1.v[k]);
        out.d_rho.v[k] = dt_adv * (-adv_rho.v[k]);
    }
    const int ix_lo = g.periodic_x() ? 0 : 1;
    const int ix_hi = g.periodic_x() ? g.nfx() : g.nx;
    for (int j = 0; j < g.ny; ++j)
        for (int i = ix_lo; i < ix_hi; ++i)
            out.d_m.fx(i, j) = dt_adv * (-adv_m.fx(i, j) + visc.fx(i, j) + noise_m.fx(i, j) +
                                         ctx.gx * rho_faces.fx(i, j));
    const int jy_lo = g.periodic_y() ? 0 : 1;
    const int jy_hi = g.periodic_y() ? g.nfy() : g.ny;
    for (int j = jy_lo; j < jy_hi; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.d_m.fy(i, j) = dt_adv * (-adv_m.fy(i, j) + visc.fy(i, j) + noise_m.fy(i, j) +
                                         ctx.gy * rho_faces.fy(i, j));
    return out;
}

namespace {

SimState assemble(const Grid2D& g, CellField rho1, CellField rho, FaceVecField m, double t,
                  std::int64_t step) {
    SimState s(g);
    s.rho1 = std::move(rho1);
    s.rho = std::move(rho);
    s.m = std::move(m);
    s.t = t;
    s.step = step;
    return s;
}

CellField lincomb(double a, const CellField& x, double b, const CellField& y) {
    CellField out(x.grid);
    for (size_t k = 0; k < out.v.size(); ++k) out.v[k] = a * x.v[k] + b * y.v[k];
    return out;
}

FaceVecField lincomb(double a, const FaceVecField& x, double b, const FaceVecField& y) {
    FaceVecField out(x.grid);
    for (size_t k = 0; k < out.x.size(); ++k) out.x[k] = a * x.x[k] + b * y.x[k];
    for (size_t k = 0; k < out.y.size(); ++k) out.y[k] = a * x.y[k] + b * y.y[k];
    return out;
}

CellField add(const CellField& x, const CellField& y) { return lincomb(1.0, x, 1.0, y); }
FaceVecField add(const FaceVecField& x, const FaceVecField& y) { return lincomb(1.0, x, 1.0, y); }

}  // namespace

SimState step_euler_maruyama(const StepContext& ctx, const SimState& s, double dt,
                             StepDiagnostics* diag) {
    NoiseDraw d = draw_noise(s.rho.grid, ctx.noise, static_cast<std::uint64_t>(s.step), 0);
    EulerIncrements e = euler_substep(ctx, s, dt, dt, d, diag);
    SimState next = assemble(s.rho.grid, add(s.rho1, e.d_rho1), add(s.rho, e.d_rho),
                             add(e.m_proj, e.d_m), s.t + dt, s.step + 1);
    record_eos(ctx, next, diag);
    return next;
}

SimState step_trapezoidal(const StepContext& ctx, const SimState& s, double dt,
                          StepDiagnostics* diag) {
    const Grid2D& g = s.rho.grid;
    NoiseDraw d = draw_noise(g, ctx.noise, static_cast<std::uint64_t>(s.step), 0);

    EulerIncrements e1 = euler_substep(ctx, s, dt, dt, d, diag);
    SimState pred = assemble(g, add(s.rho1, e1.d_rho1), add(s.rho, e1.d_rho),
                             add(e1.m_proj, e1.d_m), s.t + dt, s.step);
    record_eos(ctx, pred, diag);

    EulerIncrements e2 = euler_substep(ctx, pred, dt, dt, d, diag);
    SimState next = assemble(
        g, lincomb(0.5, s.rho1, 0.5, add(pred.rho1, e2.d_rho1)),
        lincomb(0.5, s.rho, 0.5, add(pred.rho, e2.d_rho)),
        lincomb(0.5, e1.m_proj, 0.5, add(e2.m_proj, e2.d_m)), s.t + dt, s.step + 1);
    record_eos(ctx, next, diag);
    return next;
}

SimState step_midpoint(const StepContext& ctx, const SimState& s, double dt,
                       StepDiagnostics* diag) {
    const Grid2D& g = s.rho.grid;
    const auto step_id = static_cast<std::uint64_t>(s.step);
    NoiseDraw d1 = draw_noise(g, ctx.noise, step_id, 0);
    NoiseDraw d2 = draw_noise(g, ctx.noise, step_id, 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    NoiseDraw dc = combine_draws(inv_sqrt2, d1, inv_sqrt2, d2);

    EulerIncrements e1 = euler_substep(ctx, s, 0.5 * dt, 0.5 * dt, d1, diag);
    SimState mid = assemble(g, add(s.rho1, e1.d_rho1), add(s.rho, e1.d_rho),
                            add(e1.m_proj, e1.d_m), s.t + 0.5 * dt, s.step);
    record_eos(ctx, mid, diag);

    EulerIncrements e2 = euler_substep(ctx, mid, dt, dt, dc, diag);
    SimState next = assemble(g, add(s.rho1, e2.d_rho1), add(s.rho, e2.d_rho),
                             add(e1.m_proj, e2.d_m), s.t + dt, s.step + 1);
    record_eos(ctx, next, diag);
    return next;
}

SimState step_rk3(const StepContext& ctx, const SimState& s, double dt, StepDiagnostics* diag) {
    const Grid2D& g = s.rho.grid;
    const auto step_id = static_cast<std::uint64_t>(s.step);
    NoiseDraw d1 = draw_noise(g, ctx.noise, step_id, 0);
    NoiseDraw d2 = draw_noise(g, ctx.noise, step_id, 1);
    const Rk3NoiseWeights w = rk3_noise_weights();
    NoiseDraw da = combine_draws(1.0, d1, w.stage1, d2);
    NoiseDraw db = combine_draws(1.0, d1, w.stage2, d2);
    NoiseDraw dc = combine_draws(1.0, d1, w.stage3, d2);

    EulerIncrements e1 = euler_substep(ctx, s, dt, dt, da, diag);
    SimState s1 = assemble(g, add(s.rho1, e1.d_rho1), add(s.rho, e1.d_rho), add(e1.m_proj, e1.d_m),
                           s.t + dt, s.step);
    record_eos(ctx, s1, diag);

    EulerIncrements e2 = euler_substep(ctx, s1, dt, dt, db, diag);
    SimState s2 = assemble(
        g, lincomb(0.75, s.rho1, 0.25, add(s1.rho1, e2.d_rho1)),
        lincomb(0.75, s.rho, 0.25, add(s1.rho, e2.d_rho)),
        lincomb(0.75, e1.m_proj, 0.25, add(e2.m_proj, e2.d_m)), s.t + 0.5 * dt, s.step);
    record_eos(ctx, s2, diag);

    const double third = 1.0 / 3.0, two_thirds = 2.0 / 3.0;
    EulerIncrements e3 = euler_substep(ctx, s2, dt, dt, dc, diag);
    SimState next = assemble(
        g, lincomb(third, s.rho1, two_thirds, add(s2.rho1, e3.d_rho1)),
        lincomb(third, s.rho, two_thirds, add(s2.rho, e3.d_rho)),
        lincomb(third, e1.m_proj, two_thirds, add(e3.m_proj, e3.d_m)), s.t + dt, s.step + 1);
    record_eos(ctx, next, diag);
    return next;
}

void eos_drift_correction(CellField& rho1, CellField& rho2, const EosParams& p) {
    check_same_grid(rho1.grid, rho2.grid, "eos_drift_correction");
    const double r1 = p.rho1_bar, r2 = p.rho2_bar;
    const double denom = r1 * r1 + r2 * r2;
    const double A1 = r1 * r1 / denom;
    const double A2 = r2 * r2 / denom;
    const double B = r1 * r2 / denom;
    const size_t n = rho1.v.size();

    double mean_p1 = 0.0, mean_p2 = 0.0, mean_r1 = 0.0, mean_r2 = 0.0;
    for (size_t k = 0; k < n; ++k) {
        mean_p1 += A1 * rho1.v[k] - B * rho2.v[k];
        mean_p2 += A2 * rho2.v[k] - B * rho1.v[k];
        mean_r1 += rho1.v[k];
        mean_r2 += rho2.v[k];
    }
    mean_p1 /= static_cast<double>(n);
    mean_p2 /= static_cast<double>(n);
    mean_r1 /= static_cast<double>(n);
    mean_r2 /= static_cast<double>(n);

    for (size_t k = 0; k < n; ++k) {
        const double a = rho1.v[k], b = rho2.v[k];
        rho1.v[k] = A1 * a - B * b - mean_p1 + mean_r1;
        rho2.v[k] = A2 * b - B * a - mean_p2 + mean_r2;
    }
}

void eos_drift_correction_state(SimState& s, const EosParams& p) {
    CellField rho2(s.rho.grid);
    for (size_t k = 0; k < rho2.v.size(); ++k) rho2.v[k] = s.rho.v[k] - s.rho1.v[k];
    eos_drift_correction(s.rho1, rho2, p);
    for (size_t k = 0; k < rho2.v.size(); ++k) s.rho.v[k] = s.rho1.v[k] + rho2.v[k];
}

SimState advance(const StepContext& ctx, const StepScheme& scheme, const SimState& s, double dt,
                 StepDiagnostics* diag) {
    scheme.validate();
    SimState next;
    switch (scheme.kind) {
        case SchemeKind::euler_maruyama:
            next = step_euler_maruyama(ctx, s, dt, diag);
            break;
        case SchemeKind::trapezoidal:
            next = step_trapezoidal(ctx, s, dt, diag);
            break;
        case SchemeKind::midpoint:
            next = step_midpoint(ctx, s, dt, diag);
            break;
        case SchemeKind::rk3:
            next = step_rk3(ctx, s, dt, diag);
            break;
    }

    const int cadence = scheme.resolved_cadence();
    if (cadence > 0 && next.step % cadence == 0) {
        eos_drift_correction_state(next, ctx.eos);
        record_eos(ctx, next, diag);
    }

    double checksum = 0.0;
    for (double v : next.rho1.v) checksum += v;
    for (double v : next.m.x) checksum += v;
    for (double v : next.m.y) checksum += v;
    if (!std::isfinite(checksum))
        throw SolverError("advance: non-finite state at step " + std::to_string(next.step));

    CellField c = concentration(next);
    const double cmin = min_value(c), cmax = max_value(c);
    if (diag) {
        diag->min_c = cmin;
        diag->max_c = cmax;
    }
    if (cmin < -ctx.c_abort_excursion || cmax > 1.0 + ctx.c_abort_excursion)
        throw SolverError("advance: concentration excursion beyond abort threshold at step " +
                          std::to_string(next.step) + " (min " + std::to_string(cmin) + ", max " +
                          std::to_string(cmax) + ")");
    return next;
}

double viscous_cfl(const StepContext& ctx, const SimState& s, double dt) {
    CellField c = concentration(s);
    double numax = 0.0;
    for (size_t k = 0; k < c.v.size(); ++k) {
        const double eta = ctx.transport.viscosity.eta(c.v[k], s.rho.v[k]);
        numax = std::max(numax, eta / s.rho.v[k]);
    }
    const double h = std::min(s.rho.grid.dx, s.rho.grid.dy);
    return numax * dt / (h * h);
}

FaceVecField deterministic_velocity(const StepContext& ctx, const SimState& s) {
    const Grid2D& g = s.rho.grid;
    CellField c = concentration(s);
    BcValues bv = make_bc_values(g, ctx.boundary, ctx.eos, ctx.transport);
    CellField chi_cell = diffusion_of_c(c, ctx.transport.diffusion);
    FaceVecField rho_faces = interp_cell_to_faces(s.rho, scalar_bc_rho(bv));
    FaceVecField chi_faces = interp_cell_to_faces(chi_cell, scalar_bc_chi(bv));
    FaceVecField F = diffusive_flux(rho_faces, chi_faces, c, bv);
    CellField S = compute_S(F, ctx.eos);
    FaceVecField m_work = s.m;
    impose_momentum_bc(m_work, F, bv, ctx.eos);
    ProjectionResult proj = project_RS(m_work, s.rho, rho_faces, S, ctx.poisson);
    return proj.v;
}

}  // namespace lowmach
