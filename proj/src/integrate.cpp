#include "dwlab/integrate.hpp"
#include "dwlab/common.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dwlab::integrate {

using geometry::Grid;
using geometry::ScalarField;
using phase::State;

namespace {

// Solves (beta - (dt/2)^2 Lap) x = rhs on the grid. Thomas algorithm in 1D;
// conjugate gradients in 2D (constant diagonal, so Jacobi preconditioning is
// a uniform scaling and is absorbed into the tolerance).
class HelmholtzSolver {
  public:
    HelmholtzSolver(const Grid& grid, double beta, double a, int max_iter = 500,
                    double rel_tol = 1e-12)
        : grid_(grid), beta_(beta), a2_(a * a), max_iter_(max_iter), rel_tol_(rel_tol) {}

    void solve(const std::vector<double>& rhs, std::vector<double>& x) const {
        if (grid_.dim == 1)
            solve_1d(rhs, x);
        else
            solve_2d(rhs, x);
    }

  private:
    void solve_1d(const std::vector<double>& rhs, std::vector<double>& x) const {
        const int n = grid_.n[0];
        const double ih2 = a2_ / (grid_.h[0] * grid_.h[0]);
        const double diag = beta_ + 2.0 * ih2, off = -ih2;
        std::vector<double> c(n), d(n);
        c[0] = off / diag;
        d[0] = rhs[0] / diag;
        for (int i = 1; i < n; ++i) {
            const double m = diag - off * c[i - 1];
            c[i] = off / m;
            d[i] = (rhs[i] - off * d[i - 1]) / m;
        }
        x.assign(n, 0.0);
        x[n - 1] = d[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    }

    void apply(const std::vector<double>& in, std::vector<double>& out) const {
        const int n0 = grid_.n[0], n1 = grid_.n[1];
        const double ih0 = a2_ / (grid_.h[0] * grid_.h[0]);
        const double ih1 = a2_ / (grid_.h[1] * grid_.h[1]);
        for (int i = 0; i < n0; ++i) {
            const std::size_t row = std::size_t(i) * n1;
            for (int j = 0; j < n1; ++j) {
                const double c = in[row + j];
                const double up = i > 0 ? in[row - n1 + j] : 0.0;
                const double dn = i + 1 < n0 ? in[row + n1 + j] : 0.0;
                const double lf = j > 0 ? in[row + j - 1] : 0.0;
                const double rt = j + 1 < n1 ? in[row + j + 1] : 0.0;
                out[row + j] = beta_ * c - ((up - 2.0 * c + dn) * ih0 + (lf - 2.0 * c + rt) * ih1);
            }
        }
    }

    void solve_2d(const std::vector<double>& rhs, std::vector<double>& x) const {
        const std::size_t size = rhs.size();
        auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
            double acc = 0.0;
            for (std::size_t i = 0; i < size; ++i) acc += u[i] * v[i];
            return acc;
        };
        x.assign(size, 0.0);
        std::vector<double> r = rhs, p = rhs, Ap(size);
        double rr = dot(r, r);
        const double target = rel_tol_ * rel_tol_ * rr;
        int it = 0;
        for (; it < max_iter_ && rr > target; ++it) {
            apply(p, Ap);
            const double alpha = rr / dot(p, Ap);
            for (std::size_t i = 0; i < size; ++i) x[i] += alpha * p[i];
            for (std::size_t i = 0; i < size; ++i) r[i] -= alpha * Ap[i];
            const double rr_new = dot(r, r);
            const double beta = rr_new / rr;
            rr = rr_new;
            for (std::size_t i = 0; i < size; ++i) p[i] = r[i] + beta * p[i];
        }
        ensure(rr <= target || rr == 0.0, "step: 2D linear solve exceeded its iteration budget");
    }

    const Grid& grid_;
    double beta_, a2_;
    int max_iter_;
    double rel_tol_;
};

}  // namespace

ScalarField helmholtz_solve(const geometry::GridPtr& grid, double beta,
                            const ScalarField& rhs) {
    HelmholtzSolver solver(*grid, beta, 1.0, 50000, 1e-13);
    ScalarField out(grid);
    solver.solve(rhs.values, out.values);
    return out;
}

State step(const State& w, const model::ModelConfig& m, double dt) {
    ensure(dt > 0.0, "step: dt must be positive");
    const Grid& grid = *w.u.grid;
    const bool inhomogeneous =
        m.has_forcing() || m.nonlinearity.kind != model::NonlinearityKind::Zero;
    if (inhomogeneous)
        ensure(dt <= grid.min_h() * (1.0 + 1e-12),
               "step: dt exceeds the grid spacing accuracy gate");

    const double a = 0.5 * dt;
    const double delta = m.k.delta, lambda = m.lambda;
    const double c = model::mass_coefficient(m.variant);
    const double q = delta * delta - delta * lambda + c;
    const double beta = 1.0 + a * lambda + a * a * c;

    // Right side of the trapezoidal system: (I - a G) w + dt R(u_hat).
    const ScalarField lap_u = geometry::laplacian_apply(w.u);
    const std::size_t size = grid.size();
    std::vector<double> bu(size), bv(size);
    for (std::size_t i = 0; i < size; ++i) {
        bu[i] = w.u.values[i] - a * (delta * w.u.values[i] - w.v.values[i]);
        bv[i] = w.v.values[i] - a * (-lap_u.values[i] + (lambda - delta) * w.v.values[i] +
                                     q * w.u.values[i]);
    }
    if (inhomogeneous) {
        // Midpoint extrapolation of u for the nonlinearity; explicit on the
        // first step (no history yet).
        const bool extrapolate = w.prev_u.has_value();
        for (std::size_t i = 0; i < size; ++i) {
            const double u_hat = extrapolate
                                     ? 1.5 * w.u.values[i] - 0.5 * w.prev_u->values[i]
                                     : w.u.values[i];
            double r = 0.0;
            if (m.nonlinearity.kind != model::NonlinearityKind::Zero)
                r -= m.nonlinearity.f(u_hat);
            if (m.g) r += m.g->values[i];
            bv[i] += dt * r;
        }
    }

    // Schur complement in u+: (beta - a^2 Lap) u+ = a bv + (1 + a(lambda-delta)) bu,
    // then v+ = ((1 + a delta) u+ - bu) / a.
    std::vector<double> rhs(size), u_next;
    const double cu = 1.0 + a * (lambda - delta);
    for (std::size_t i = 0; i < size; ++i) rhs[i] = a * bv[i] + cu * bu[i];
    HelmholtzSolver solver(grid, beta, a);
    solver.solve(rhs, u_next);

    State out;
    out.u = ScalarField(w.u.grid);
    out.v = ScalarField(w.u.grid);
    const double inv_a = 1.0 / a;
    const double cv = 1.0 + a * delta;
    for (std::size_t i = 0; i < size; ++i) {
        out.u.values[i] = u_next[i];
        out.v.values[i] = (cv * u_next[i] - bu[i]) * inv_a;
    }
    out.t = w.t + dt;
    out.prev_u = w.u;
    out.prev_t = w.t;
    ensure(phase::all_finite(out), "step: non-finite state at t = " + std::to_string(out.t));
    return out;
}

Trajectory simulate(const State& w0, const model::ModelConfig& m, double T, double dt,
                    const ObserverConfig& obs) {
    ensure(T >= 0.0, "simulate: T must be nonnegative");
    ensure(obs.stride >= 1, "simulate: stride must be at least 1");
    for (double k : obs.tail_radii) {
        ensure(k > 0.0, "simulate: tail radius must be positive");
        double max_abs = 0.0;
        const Grid& g = *w0.u.grid;
        for (int ax = 0; ax < g.dim; ++ax)
            max_abs = std::max(max_abs, std::max(std::abs(g.a[ax]), std::abs(g.b[ax])));
        ensure(k < max_abs, "simulate: tail radius exceeds the truncation box");
    }

    Trajectory traj;
    traj.dt = dt;
    traj.T = T;
    const long steps = T > 0.0 ? static_cast<long>(std::ceil(T / dt - 1e-12)) : 0;

    State w = w0;
    traj.samples.push_back(phase::make_energy_sample(w, m, obs.tail_radii));
    if (obs.snapshot_stride > 0) traj.snapshots.push_back(w);
    for (long n = 1; n <= steps; ++n) {
        try {
            w = step(w, m, dt);
        } catch (const std::exception& e) {
            throw std::runtime_error("simulate: step failed at t = " +
                                     std::to_string(w.t + dt) + ": " + e.what());
        }
        if (n % obs.stride == 0 || n == steps)
            traj.samples.push_back(phase::make_energy_sample(w, m, obs.tail_radii));
        if (obs.snapshot_stride > 0 && (n % obs.snapshot_stride == 0 || n == steps))
            traj.snapshots.push_back(w);
    }
    return traj;
}

double mode_eigenvalue(const Grid& grid, const std::vector<int>& mode) {
    ensure(static_cast<int>(mode.size()) == grid.dim, "mode_eigenvalue: rank mismatch");
    double acc = 0.0;
    for (int ax = 0; ax < grid.dim; ++ax) {
        ensure(mode[ax] >= 1 && mode[ax] <= grid.n[ax], "mode_eigenvalue: invalid mode index");
        const double L = grid.b[ax] - grid.a[ax];
        const double s = std::sin(mode[ax] * std::numbers::pi * grid.h[ax] / (2.0 * L));
        acc += 4.0 / (grid.h[ax] * grid.h[ax]) * s * s;
    }
    return acc;
}

ScalarField mode_field(const geometry::GridPtr& grid, const std::vector<int>& mode) {
    const Grid& g = *grid;
    ensure(static_cast<int>(mode.size()) == g.dim, "mode_field: rank mismatch");
    ScalarField f(grid);
    if (g.dim == 1) {
        const double L = g.b[0] - g.a[0];
        for (int i = 0; i < g.n[0]; ++i)
            f.values[i] = std::sin(mode[0] * std::numbers::pi * (g.coord(0, i) - g.a[0]) / L);
        return f;
    }
    const double L0 = g.b[0] - g.a[0], L1 = g.b[1] - g.a[1];
    for (int i = 0; i < g.n[0]; ++i) {
        const double s0 = std::sin(mode[0] * std::numbers::pi * (g.coord(0, i) - g.a[0]) / L0);
        for (int j = 0; j < g.n[1]; ++j)
            f.values[std::size_t(i) * g.n[1] + j] =
                s0 * std::sin(mode[1] * std::numbers::pi * (g.coord(1, j) - g.a[1]) / L1);
    }
    return f;
}

ModeSolution linear_mode_oracle(const Grid& grid, const std::vector<int>& mode, double lambda,
                                double c, double t, double a, double b) {
    const double omega_sq = mode_eigenvalue(grid, mode) + c;
    const double disc = 0.25 * lambda * lambda - omega_sq;
    ModeSolution out{};
    if (t == 0.0) return ModeSolution{a, b};
    const double half = 0.5 * lambda;
    if (std::abs(disc) <= 1e-14 * (0.25 * lambda * lambda + omega_sq)) {
        // Critical damping: double root -lambda/2.
        const double c1 = a, c2 = b + half * a;
        const double e = std::exp(-half * t);
        out.u = (c1 + c2 * t) * e;
        out.udot = (c2 - half * (c1 + c2 * t)) * e;
    } else if (disc > 0.0) {
        // Overdamped: two real roots.
        const double s = std::sqrt(disc);
        const double r1 = -half + s, r2 = -half - s;
        const double c2 = (b - r1 * a) / (r2 - r1), c1 = a - c2;
        out.u = c1 * std::exp(r1 * t) + c2 * std::exp(r2 * t);
        out.udot = c1 * r1 * std::exp(r1 * t) + c2 * r2 * std::exp(r2 * t);
    } else {
        // Underdamped oscillation.
        const double om = std::sqrt(-disc);
        const double c1 = a, c2 = (b + half * a) / om;
        const double e = std::exp(-half * t);
        const double cs = std::cos(om * t), sn = std::sin(om * t);
        out.u = e * (c1 * cs + c2 * sn);
        out.udot = e * (-half * (c1 * cs + c2 * sn) + om * (-c1 * sn + c2 * cs));
    }
    return out;
}

}  // namespace dwlab::integrate
