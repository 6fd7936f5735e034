#pragma once
#include "dwlab/geometry.hpp"
#include "dwlab/model.hpp"

#include <optional>
#include <vector>

namespace dwlab::phase {

// First-order state w = (u, v) with v = delta*u + u_t. prev_u carries the
// one-step history the integrator's midpoint extrapolation needs, so that
// trajectory composition is bit-reproducible.
struct State {
    geometry::ScalarField u, v;
    double t = 0.0;
    std::optional<geometry::ScalarField> prev_u;
    double prev_t = 0.0;

    State() = default;
    State(geometry::ScalarField u_, geometry::ScalarField v_, double t_)
        : u(std::move(u_)), v(std::move(v_)), t(t_) {}
};

struct EnergySample {
    double t = 0.0;
    double E = 0.0;       // quasi-energy
    double X2 = 0.0;      // squared X-norm
    double flux = 0.0;    // Phi(w)
    double u2 = 0.0;      // ||u||_H^2
    double grad2 = 0.0;   // ||grad u||^2
    double v2 = 0.0;      // ||v||_H^2
    double intF = 0.0;    // integral of F(u); in-memory only, not serialized
    std::vector<double> tails;   // tail energies, parallel to the radii list
};

// w0 = (u0, u1 + delta*u0) at t = 0.
State lift(const geometry::ScalarField& u0, const geometry::ScalarField& u1, double delta);
// Inverse of lift: recovers (u0, u1) with u1 = v - delta*u.
std::pair<geometry::ScalarField, geometry::ScalarField> unlift(const State& w, double delta);

// MassTermWholeSpace: ||u||_H^2 + ||grad u||^2 + ||v||^2. NoMassStrip drops
// the ||u||_H^2 term (gradient-only V-norm).
double x_norm_sq(const State& w, model::Variant variant);

// E(w) = (delta^2 - lambda*delta + 1)||u||^2 + ||grad u||^2 + ||v||^2.
double quasi_energy(const State& w, double lambda, double delta);

// Phi(w) = -2(lambda - c_v*delta)||v||^2 + 2<g,v> - 2<f(u),v>, with c_v = 2
// for MassTermWholeSpace and c_v = 3 for NoMassStrip.
double flux(const State& w, const model::ModelConfig& m);

// Masked quasi-energy beyond radius k: nodal sum of
// theta(|x|^2/k^2) [ (delta^2-lambda*delta+1)|u|^2 + |grad u|^2_edge + |v|^2 ].
double tail_energy(const State& w, double k, double lambda, double delta);

// G w = (delta*u - v, -Lap u + (lambda-delta) v + (delta^2 - delta*lambda + c) u).
State apply_G(const State& w, const model::ModelConfig& m);

struct AccretivityForm {
    double lhs;     // <G_h w, w>_X
    double bound;   // sigma ||w||_X^2 + (lambda/2) ||v||_H^2
};

AccretivityForm accretivity_form(const State& w, const model::ModelConfig& m);

// Seeded nodal noise scaled to unit X-norm; reproducible across platforms.
State random_unit_state(const geometry::GridPtr& grid, model::Variant variant,
                        std::uint64_t seed);

EnergySample make_energy_sample(const State& w, const model::ModelConfig& m,
                                const std::vector<double>& tail_radii);

bool all_finite(const State& w);

}  // namespace dwlab::phase

namespace dwlab::model {

// R(w) = (0, -f(u) + g).
phase::State rhs(const phase::State& w, const ModelConfig& m);

}  // namespace dwlab::model
