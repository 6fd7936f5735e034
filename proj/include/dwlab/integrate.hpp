#pragma once
#include "dwlab/model.hpp"
#include "dwlab/phase.hpp"

#include <vector>

namespace dwlab::integrate {

struct ObserverConfig {
    int stride = 1;                   // energy sample every `stride` steps
    std::vector<double> tail_radii;   // radii for masked energies
    int snapshot_stride = 0;          // 0 disables state snapshots
};

struct Trajectory {
    std::vector<phase::EnergySample> samples;
    std::vector<phase::State> snapshots;
    double dt = 0.0;
    double T = 0.0;
};

// One step of the linearly implicit trapezoidal scheme:
//   (I + dt/2 G) w+ = (I - dt/2 G) w + dt R(u_hat),
// with u_hat the midpoint extrapolation (3 u_n - u_{n-1})/2 from the state's
// history (explicit evaluation on the first step). The Schur complement in u+
// is a Helmholtz solve: direct tridiagonal in 1D, conjugate gradients with
// tolerance 1e-12 and a 500-iteration budget in 2D.
// dt must not exceed the min grid spacing when forcing or a nonlinearity is
// active (accuracy gate); homogeneous linear runs accept any dt, where the
// trapezoidal treatment of the accretive operator dissipates unconditionally.
phase::State step(const phase::State& w, const model::ModelConfig& m, double dt);

// ceil(T/dt) steps from w0, energy samples every stride steps (t = 0
// included), deterministic for fixed (w0, model, dt, observers).
Trajectory simulate(const phase::State& w0, const model::ModelConfig& m, double T, double dt,
                    const ObserverConfig& obs);

struct ModeSolution {
    double u;      // modal amplitude of u at time t
    double udot;   // time derivative
};

// Closed-form solution of u'' + lambda u' + (lambda_h + c) u = 0 for one
// discrete Dirichlet mode, all damping branches; initial (u, udot) = (a, b).
ModeSolution linear_mode_oracle(const geometry::Grid& grid, const std::vector<int>& mode,
                                double lambda, double c, double t, double a, double b);

// Product of per-axis Dirichlet sine modes, amplitude one.
geometry::ScalarField mode_field(const geometry::GridPtr& grid, const std::vector<int>& mode);

// Discrete Laplacian eigenvalue of the given mode (positive sign convention).
double mode_eigenvalue(const geometry::Grid& grid, const std::vector<int>& mode);

// Solves (beta I - Lap) x = rhs on the grid (direct in 1D, CG in 2D with a
// generous budget). Setup-time utility, not the stepper's inner solver.
geometry::ScalarField helmholtz_solve(const geometry::GridPtr& grid, double beta,
                                      const geometry::ScalarField& rhs);

}  // namespace dwlab::integrate
