#pragma once
#include <cstddef>
#include <memory>
#include <vector>

namespace dwlab::geometry {

enum class DomainKind { TruncatedWholeSpace, Strip };

struct GridConfig {
    int dim = 1;
    double a[2] = {0.0, 0.0};
    double b[2] = {1.0, 1.0};
    int n[2] = {3, 3};                // interior nodes per axis
    DomainKind kind = DomainKind::TruncatedWholeSpace;
    int bounded_axis = 0;             // Strip: the axis carrying the physical width
};

// Dirichlet box: interior nodes only, ghost values are identically zero.
// Node i on an axis sits at a + (i+1)h with h = (b-a)/(n+1).
struct Grid {
    int dim;
    double a[2], b[2], h[2];
    int n[2];
    DomainKind kind;
    int bounded_axis;

    std::size_t size() const {
        return dim == 1 ? std::size_t(n[0]) : std::size_t(n[0]) * std::size_t(n[1]);
    }
    double cell_weight() const { return dim == 1 ? h[0] : h[0] * h[1]; }
    double coord(int axis, int i) const { return a[axis] + (i + 1) * h[axis]; }
    double min_h() const { return dim == 1 ? h[0] : (h[0] < h[1] ? h[0] : h[1]); }
};

using GridPtr = std::shared_ptr<const Grid>;

Grid build_grid(const GridConfig& cfg);
GridPtr make_grid(const GridConfig& cfg);

bool same_grid(const Grid& lhs, const Grid& rhs);

struct ScalarField {
    GridPtr grid;
    std::vector<double> values;   // row-major over interior nodes

    ScalarField() = default;
    explicit ScalarField(GridPtr g) : grid(std::move(g)), values(grid->size(), 0.0) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

// Second-order central difference with Dirichlet-zero ghosts.
ScalarField laplacian_apply(const ScalarField& f);

// Nodal quadrature: sum f_i g_i times the cell volume.
double l2_inner(const ScalarField& f, const ScalarField& g);
double l2_norm_sq(const ScalarField& f);

// Edge-wise squared gradient (forward differences, boundary edges to the
// Dirichlet zero included). Equals l2_inner(-laplacian_apply(f), f) to
// round-off: the discrete summation-by-parts identity.
double grad_sq_norm(const ScalarField& f);

// Per-node attribution of grad_sq_norm: interior edges split half to each
// endpoint, boundary edges go fully to their interior endpoint, so the
// shares total grad_sq_norm exactly. Used by masked (tail) energies.
std::vector<double> grad_sq_node_share(const ScalarField& f);

// C1 smoothstep: 0 on [0,1], 3t^2-2t^3 with t = s-1 on (1,2), 1 on [2,inf).
// Max slope 3/2. Rejects s < 0.
double cutoff_theta(double s);

// Nodal mask theta(|x|^2 / k^2); |x| uses all coordinates on every domain kind.
ScalarField tail_mask(const GridPtr& grid, double k);

struct PoincareResult {
    double constant;       // best discrete C with ||u|| <= C ||grad u||
    double lambda_min;     // smallest eigenvalue of the discrete Dirichlet Laplacian
    int iterations;
    bool non_strip_warning;
};

// Inverse power iteration on -Laplacian, Rayleigh quotient converged to
// relative tolerance 1e-10. strict=true rejects non-strip grids; otherwise
// the constant is returned for any Dirichlet box with a warning flag.
PoincareResult poincare_constant(const Grid& grid, bool strict = false);

// Closed-form smallest eigenvalue of the discrete Dirichlet Laplacian on a
// box: sum over axes of (4/h^2) sin^2(pi h / (2 L)). Oracle for tests.
double dirichlet_lambda_min_closed_form(const Grid& grid);

}  // namespace dwlab::geometry
