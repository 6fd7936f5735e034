#include "dwlab/geometry.hpp"
#include "dwlab/common.hpp"

#include <cmath>
#include <numbers>

namespace dwlab::geometry {

Grid build_grid(const GridConfig& cfg) {
    ensure(cfg.dim == 1 || cfg.dim == 2, "build_grid: dim must be 1 or 2");
    Grid g{};
    g.dim = cfg.dim;
    g.kind = cfg.kind;
    g.bounded_axis = 0;
    if (cfg.kind == DomainKind::Strip) {
        ensure(cfg.bounded_axis >= 0 && cfg.bounded_axis < cfg.dim,
               "build_grid: bounded axis outside dimension range");
        g.bounded_axis = cfg.bounded_axis;
    }
    for (int ax = 0; ax < cfg.dim; ++ax) {
        ensure(cfg.b[ax] > cfg.a[ax], "build_grid: non-positive extent");
        ensure(cfg.n[ax] >= 3, "build_grid: need at least 3 interior nodes per axis");
        g.a[ax] = cfg.a[ax];
        g.b[ax] = cfg.b[ax];
        g.n[ax] = cfg.n[ax];
        g.h[ax] = (cfg.b[ax] - cfg.a[ax]) / (cfg.n[ax] + 1);
    }
    for (int ax = cfg.dim; ax < 2; ++ax) {
        g.a[ax] = 0.0;
        g.b[ax] = 0.0;
        g.n[ax] = 0;
        g.h[ax] = 0.0;
    }
    return g;
}

GridPtr make_grid(const GridConfig& cfg) {
    return std::make_shared<const Grid>(build_grid(cfg));
}

bool same_grid(const Grid& lhs, const Grid& rhs) {
    if (&lhs == &rhs) return true;
    if (lhs.dim != rhs.dim || lhs.kind != rhs.kind || lhs.bounded_axis != rhs.bounded_axis)
        return false;
    for (int ax = 0; ax < lhs.dim; ++ax)
        if (lhs.a[ax] != rhs.a[ax] || lhs.b[ax] != rhs.b[ax] || lhs.n[ax] != rhs.n[ax])
            return false;
    return true;
}

ScalarField laplacian_apply(const ScalarField& f) {
    const Grid& g = *f.grid;
    ScalarField out(f.grid);
    if (g.dim == 1) {
        const int n = g.n[0];
        const double ih2 = 1.0 / (g.h[0] * g.h[0]);
        for (int i = 0; i < n; ++i) {
            const double left = i > 0 ? f.values[i - 1] : 0.0;
            const double right = i + 1 < n ? f.values[i + 1] : 0.0;
            out.values[i] = (left - 2.0 * f.values[i] + right) * ih2;
        }
        return out;
    }
    const int n0 = g.n[0], n1 = g.n[1];
    const double ih0 = 1.0 / (g.h[0] * g.h[0]);
    const double ih1 = 1.0 / (g.h[1] * g.h[1]);
    for (int i = 0; i < n0; ++i) {
        const std::size_t row = std::size_t(i) * n1;
        for (int j = 0; j < n1; ++j) {
            const double c = f.values[row + j];
            const double up = i > 0 ? f.values[row - n1 + j] : 0.0;
            const double dn = i + 1 < n0 ? f.values[row + n1 + j] : 0.0;
            const double lf = j > 0 ? f.values[row + j - 1] : 0.0;
            const double rt = j + 1 < n1 ? f.values[row + j + 1] : 0.0;
            out.values[row + j] = (up - 2.0 * c + dn) * ih0 + (lf - 2.0 * c + rt) * ih1;
        }
    }
    return out;
}

double l2_inner(const ScalarField& f, const ScalarField& g) {
    ensure(same_grid(*f.grid, *g.grid), "l2_inner: grid mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * g.values[i];
    return acc * f.grid->cell_weight();
}

double l2_norm_sq(const ScalarField& f) { return l2_inner(f, f); }

double grad_sq_norm(const ScalarField& f) {
    const Grid& g = *f.grid;
    const double vol = g.cell_weight();
    double acc = 0.0;
    if (g.dim == 1) {
        const int n = g.n[0];
        const double ih2 = 1.0 / (g.h[0] * g.h[0]);
        double prev = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = f.values[i] - prev;
            acc += d * d * ih2;
            prev = f.values[i];
        }
        acc += prev * prev * ih2;  // closing edge to the Dirichlet zero
        return acc * vol;
    }
    const int n0 = g.n[0], n1 = g.n[1];
    const double ih0 = 1.0 / (g.h[0] * g.h[0]);
    const double ih1 = 1.0 / (g.h[1] * g.h[1]);
    for (int j = 0; j < n1; ++j) {
        double prev = 0.0;
        for (int i = 0; i < n0; ++i) {
            const double d = f.values[std::size_t(i) * n1 + j] - prev;
            acc += d * d * ih0;
            prev = f.values[std::size_t(i) * n1 + j];
        }
        acc += prev * prev * ih0;
    }
    for (int i = 0; i < n0; ++i) {
        const std::size_t row = std::size_t(i) * n1;
        double prev = 0.0;
        for (int j = 0; j < n1; ++j) {
            const double d = f.values[row + j] - prev;
            acc += d * d * ih1;
            prev = f.values[row + j];
        }
        acc += prev * prev * ih1;
    }
    return acc * vol;
}

std::vector<double> grad_sq_node_share(const ScalarField& f) {
    const Grid& g = *f.grid;
    const double vol = g.cell_weight();
    std::vector<double> share(f.values.size(), 0.0);
    auto deposit_axis = [&](int axis, auto index_of) {
        const int len = g.n[axis];
        const double ih2 = 1.0 / (g.h[axis] * g.h[axis]);
        const int lanes = g.dim == 1 ? 1 : g.n[1 - axis];
        for (int lane = 0; lane < lanes; ++lane) {
            double prev = 0.0;
            for (int i = 0; i < len; ++i) {
                const std::size_t idx = index_of(lane, i);
                const double d = f.values[idx] - prev;
                const double e = d * d * ih2 * vol;
                if (i == 0) {
                    share[idx] += e;  // boundary edge: all to the interior endpoint
                } else {
                    share[idx] += 0.5 * e;
                    share[index_of(lane, i - 1)] += 0.5 * e;
                }
                prev = f.values[idx];
            }
            // closing boundary edge
            share[index_of(lane, len - 1)] += prev * prev * ih2 * vol;
        }
    };
    if (g.dim == 1) {
        deposit_axis(0, [&](int, int i) { return std::size_t(i); });
    } else {
        const int n1 = g.n[1];
        deposit_axis(0, [&](int lane, int i) { return std::size_t(i) * n1 + lane; });
        deposit_axis(1, [&](int lane, int i) { return std::size_t(lane) * n1 + i; });
    }
    return share;
}

double cutoff_theta(double s) {
    ensure(s >= 0.0, "cutoff_theta: argument must be nonnegative");
    if (s <= 1.0) return 0.0;
    if (s >= 2.0) return 1.0;
    const double t = s - 1.0;
    return t * t * (3.0 - 2.0 * t);
}

ScalarField tail_mask(const GridPtr& grid, double k) {
    ensure(k > 0.0, "tail_mask: radius must be positive");
    const Grid& g = *grid;
    ScalarField m(grid);
    const double ik2 = 1.0 / (k * k);
    if (g.dim == 1) {
        for (int i = 0; i < g.n[0]; ++i) {
            const double x = g.coord(0, i);
            m.values[i] = cutoff_theta(x * x * ik2);
        }
        return m;
    }
    for (int i = 0; i < g.n[0]; ++i) {
        const double x0 = g.coord(0, i);
        for (int j = 0; j < g.n[1]; ++j) {
            const double x1 = g.coord(1, j);
            m.values[std::size_t(i) * g.n[1] + j] = cutoff_theta((x0 * x0 + x1 * x1) * ik2);
        }
    }
    return m;
}

double dirichlet_lambda_min_closed_form(const Grid& grid) {
    double acc = 0.0;
    for (int ax = 0; ax < grid.dim; ++ax) {
        const double L = grid.b[ax] - grid.a[ax];
        const double s = std::sin(std::numbers::pi * grid.h[ax] / (2.0 * L));
        acc += 4.0 / (grid.h[ax] * grid.h[ax]) * s * s;
    }
    return acc;
}

namespace {

// Solves (-Laplacian) z = y. Thomas in 1D; plain CG in 2D (the operator has a
// constant diagonal, so Jacobi preconditioning reduces to a scaling). Fixed
// sequential summation order throughout.
void solve_neg_laplacian(const Grid& g, const std::vector<double>& y, std::vector<double>& z) {
    if (g.dim == 1) {
        const int n = g.n[0];
        const double ih2 = 1.0 / (g.h[0] * g.h[0]);
        const double diag = 2.0 * ih2, off = -ih2;
        std::vector<double> c(n), d(n);
        c[0] = off / diag;
        d[0] = y[0] / diag;
        for (int i = 1; i < n; ++i) {
            const double m = diag - off * c[i - 1];
            c[i] = off / m;
            d[i] = (y[i] - off * d[i - 1]) / m;
        }
        z.assign(n, 0.0);
        z[n - 1] = d[n - 1];
        for (int i = n - 2; i >= 0; --i) z[i] = d[i] - c[i] * z[i + 1];
        return;
    }
    const int n0 = g.n[0], n1 = g.n[1];
    const std::size_t size = std::size_t(n0) * n1;
    const double ih0 = 1.0 / (g.h[0] * g.h[0]);
    const double ih1 = 1.0 / (g.h[1] * g.h[1]);
    auto apply = [&](const std::vector<double>& x, std::vector<double>& out) {
        for (int i = 0; i < n0; ++i) {
            const std::size_t row = std::size_t(i) * n1;
            for (int j = 0; j < n1; ++j) {
                const double c = x[row + j];
                const double up = i > 0 ? x[row - n1 + j] : 0.0;
                const double dn = i + 1 < n0 ? x[row + n1 + j] : 0.0;
                const double lf = j > 0 ? x[row + j - 1] : 0.0;
                const double rt = j + 1 < n1 ? x[row + j + 1] : 0.0;
                out[row + j] = -((up - 2.0 * c + dn) * ih0 + (lf - 2.0 * c + rt) * ih1);
            }
        }
    };
    auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double acc = 0.0;
        for (std::size_t i = 0; i < size; ++i) acc += u[i] * v[i];
        return acc;
    };
    if (z.size() != size) z.assign(size, 0.0);  // warm start from the caller's previous solve
    std::vector<double> r(size), p(size), Ap(size);
    apply(z, Ap);
    for (std::size_t i = 0; i < size; ++i) r[i] = y[i] - Ap[i];
    p = r;
    double rr = dot(r, r);
    const double target = 1e-26 * dot(y, y);  // relative residual 1e-13
    for (int it = 0; it < 20000 && rr > target; ++it) {
        apply(p, Ap);
        const double alpha = rr / dot(p, Ap);
        for (std::size_t i = 0; i < size; ++i) z[i] += alpha * p[i];
        for (std::size_t i = 0; i < size; ++i) r[i] -= alpha * Ap[i];
        const double rr_new = dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < size; ++i) p[i] = r[i] + beta * p[i];
    }
    ensure(rr <= target * 1e6, "poincare_constant: inner solve failed to converge");
}

}  // namespace

PoincareResult poincare_constant(const Grid& grid, bool strict) {
    const bool is_strip = grid.kind == DomainKind::Strip;
    ensure(!strict || is_strip, "poincare_constant: strict mode requires a strip grid");

    const std::size_t size = grid.size();
    std::vector<double> y(size, 1.0), z;
    auto normalize = [&](std::vector<double>& v) {
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (double& x : v) x /= nrm;
    };
    normalize(y);

    double rayleigh = 0.0, rayleigh_prev = -1.0;
    int it = 0;
    for (; it < 20000; ++it) {
        solve_neg_laplacian(grid, y, z);
        // Rayleigh quotient of z: <Az, z>/<z, z> = <y, z>/<z, z>.
        double yz = 0.0, zz = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            yz += y[i] * z[i];
            zz += z[i] * z[i];
        }
        rayleigh = yz / zz;
        y = z;
        normalize(y);
        if (rayleigh_prev > 0.0 && std::abs(rayleigh - rayleigh_prev) <= 1e-10 * rayleigh) break;
        rayleigh_prev = rayleigh;
    }
    ensure(rayleigh > 0.0, "poincare_constant: iteration failed");
    return PoincareResult{1.0 / std::sqrt(rayleigh), rayleigh, it + 1, !is_strip};
}

}  // namespace dwlab::geometry
