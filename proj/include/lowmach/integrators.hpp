#pragma once

#include "lowmach/projection.hpp"
#include "lowmach/stochastic.hpp"

#include <array>
#include <functional>

namespace lowmach {

enum class SchemeKind { euler_maruyama, trapezoidal, midpoint, rk3 };

struct StepScheme {
    SchemeKind kind = SchemeKind::midpoint;
    // 0 disables the EOS drift correction. Trapezoidal and RK3 exhibit a
    // systematic drift and require a nonzero cadence unless explicitly
    // overridden (for diagnostics runs).
    int drift_correction_every = -1;  // -1: scheme default (1 for trap/rk3, 0 otherwise)
    bool allow_no_drift_correction = false;

    int resolved_cadence() const {
        if (drift_correction_every >= 0) return drift_correction_every;
        return (kind == SchemeKind::trapezoidal || kind == SchemeKind::rk3) ? 1 : 0;
    }

    void validate() const {
        if (resolved_cadence() == 0 && !allow_no_drift_correction &&
            (kind == SchemeKind::trapezoidal || kind == SchemeKind::rk3))
            throw ConfigError(
                "integrator.drift_correction_every=0 is invalid for trapezoidal/rk3 "
                "(set integrator.allow_no_drift_correction=true to override)");
    }
};

struct StepContext {
    Grid2D grid;
    EosParams eos;
    TransportModels transport;
    BoundaryData boundary;
    NoiseConfig noise;
    PoissonSettings poisson;
    double gx = 0.0, gy = 0.0;
    // Concentration excursions outside [0,1] are reported, not clamped; an
    // excursion beyond this magnitude aborts the run.
    double c_abort_excursion = 0.5;
};

struct StepDiagnostics {
    double max_eos_residual = 0.0;     // max |delta-1| over stages
    double min_c = 0.0, max_c = 0.0;   // of the accepted state
    int poisson_cycles = 0;            // total over substeps
    double poisson_residual = 0.0;     // worst relative residual
    int substeps = 0;
};

// One projected Euler building block evaluated at state `eval`:
// fluxes, constraint divergence S, projection of eval's own momentum, and the
// conservative increments over dt_adv (noise amplitudes use dt_noise).
struct EulerIncrements {
    CellField d_rho1;
    CellField d_rho;
    FaceVecField d_m;       // interior faces
    FaceVecField m_proj;    // projected momentum of eval (with boundary values)
    FaceVecField v;         // projected velocity
};

EulerIncrements euler_substep(const StepContext& ctx, const SimState& eval, double dt_noise,
                              double dt_adv, const NoiseDraw& draw, StepDiagnostics* diag);

SimState step_euler_maruyama(const StepContext& ctx, const SimState& s, double dt,
                             StepDiagnostics* diag = nullptr);
SimState step_trapezoidal(const StepContext& ctx, const SimState& s, double dt,
                          StepDiagnostics* diag = nullptr);
SimState step_midpoint(const StepContext& ctx, const SimState& s, double dt,
                       StepDiagnostics* diag = nullptr);
SimState step_rk3(const StepContext& ctx, const SimState& s, double dt,
                  StepDiagnostics* diag = nullptr);

// Globally conservative L2 projection of (rho1, rho2) onto the linear EOS;
// total masses are conserved to roundoff.
void eos_drift_correction(CellField& rho1, CellField& rho2, const EosParams& p);
void eos_drift_correction_state(SimState& s, const EosParams& p);

// Advance one full step with the configured scheme, drift correction cadence,
// and state checks (NaN, EOS tolerance, concentration excursions).
SimState advance(const StepContext& ctx, const StepScheme& scheme, const SimState& s, double dt,
                 StepDiagnostics* diag = nullptr);

// Momentum-diffusion CFL number alpha_nu = nu dt / dx^2 (worst cell).
double viscous_cfl(const StepContext& ctx, const SimState& s, double dt);

// Projected velocity of a state using its own deterministic fluxes (no noise).
FaceVecField deterministic_velocity(const StepContext& ctx, const SimState& s);

}  // namespace lowmach
