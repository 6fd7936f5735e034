#include "dwlab/phase.hpp"
#include "dwlab/common.hpp"

#include <cmath>

namespace dwlab::phase {

using geometry::ScalarField;

State lift(const ScalarField& u0, const ScalarField& u1, double delta) {
    ensure(geometry::same_grid(*u0.grid, *u1.grid), "lift: grid mismatch");
    ScalarField v(u0.grid);
    for (std::size_t i = 0; i < v.size(); ++i) v.values[i] = u1.values[i] + delta * u0.values[i];
    return State(u0, std::move(v), 0.0);
}

std::pair<ScalarField, ScalarField> unlift(const State& w, double delta) {
    ScalarField u1(w.u.grid);
    for (std::size_t i = 0; i < u1.size(); ++i)
        u1.values[i] = w.v.values[i] - delta * w.u.values[i];
    return {w.u, std::move(u1)};
}

double x_norm_sq(const State& w, model::Variant variant) {
    double acc = geometry::grad_sq_norm(w.u) + geometry::l2_norm_sq(w.v);
    if (variant == model::Variant::MassTermWholeSpace) acc += geometry::l2_norm_sq(w.u);
    return acc;
}

double quasi_energy(const State& w, double lambda, double delta) {
    const double coeff = delta * delta - lambda * delta + 1.0;
    ensure(coeff > 0.0, "quasi_energy: nonpositive coefficient signals corrupted constants");
    return coeff * geometry::l2_norm_sq(w.u) + geometry::grad_sq_norm(w.u) +
           geometry::l2_norm_sq(w.v);
}

double flux(const State& w, const model::ModelConfig& m) {
    const double c_v = m.variant == model::Variant::MassTermWholeSpace ? 2.0 : 3.0;
    double acc = -2.0 * (m.lambda - c_v * m.k.delta) * geometry::l2_norm_sq(w.v);
    if (m.g) acc += 2.0 * geometry::l2_inner(*m.g, w.v);
    if (m.nonlinearity.kind != model::NonlinearityKind::Zero) {
        ScalarField fu(w.u.grid);
        for (std::size_t i = 0; i < fu.size(); ++i) fu.values[i] = m.nonlinearity.f(w.u.values[i]);
        acc -= 2.0 * geometry::l2_inner(fu, w.v);
    }
    return acc;
}

double tail_energy(const State& w, double k, double lambda, double delta) {
    ensure(k > 0.0, "tail_energy: radius must be positive");
    const double coeff = delta * delta - lambda * delta + 1.0;
    const ScalarField mask = geometry::tail_mask(w.u.grid, k);
    const std::vector<double> grad_share = geometry::grad_sq_node_share(w.u);
    const double vol = w.u.grid->cell_weight();
    double acc = 0.0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const double nodal =
            (coeff * w.u.values[i] * w.u.values[i] + w.v.values[i] * w.v.values[i]) * vol +
            grad_share[i];
        acc += mask.values[i] * nodal;
    }
    return acc;
}

State apply_G(const State& w, const model::ModelConfig& m) {
    const double delta = m.k.delta;
    const double lambda = m.lambda;
    const double q = delta * delta - delta * lambda + model::mass_coefficient(m.variant);
    ScalarField lap = geometry::laplacian_apply(w.u);
    ScalarField gu(w.u.grid), gv(w.u.grid);
    for (std::size_t i = 0; i < gu.size(); ++i) {
        gu.values[i] = delta * w.u.values[i] - w.v.values[i];
        gv.values[i] = -lap.values[i] + (lambda - delta) * w.v.values[i] + q * w.u.values[i];
    }
    State out(std::move(gu), std::move(gv), w.t);
    return out;
}

AccretivityForm accretivity_form(const State& w, const model::ModelConfig& m) {
    const State Gw = apply_G(w, m);
    // <Gw, w>_X: V-inner product on the first slot, L2 on the second. The
    // V-product is <grad a, grad b> (+ <a,b> for the mass variant), and
    // <grad a, grad b> = <-Lap a, b> by summation by parts.
    const ScalarField lap_gu = geometry::laplacian_apply(Gw.u);
    double v_inner = -geometry::l2_inner(lap_gu, w.u);
    if (m.variant == model::Variant::MassTermWholeSpace)
        v_inner += geometry::l2_inner(Gw.u, w.u);
    const double lhs = v_inner + geometry::l2_inner(Gw.v, w.v);
    const double bound = m.k.sigma * x_norm_sq(w, m.variant) +
                         0.5 * m.lambda * geometry::l2_norm_sq(w.v);
    return AccretivityForm{lhs, bound};
}

State random_unit_state(const geometry::GridPtr& grid, model::Variant variant,
                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ScalarField u(grid), v(grid);
    for (std::size_t i = 0; i < u.size(); ++i) u.values[i] = symmetric_uniform(rng);
    for (std::size_t i = 0; i < v.size(); ++i) v.values[i] = symmetric_uniform(rng);
    State w(std::move(u), std::move(v), 0.0);
    const double nrm = std::sqrt(x_norm_sq(w, variant));
    ensure(nrm > 0.0, "random_unit_state: degenerate draw");
    for (std::size_t i = 0; i < w.u.size(); ++i) {
        w.u.values[i] /= nrm;
        w.v.values[i] /= nrm;
    }
    return w;
}

EnergySample make_energy_sample(const State& w, const model::ModelConfig& m,
                                const std::vector<double>& tail_radii) {
    EnergySample s;
    s.t = w.t;
    s.u2 = geometry::l2_norm_sq(w.u);
    s.grad2 = geometry::grad_sq_norm(w.u);
    s.v2 = geometry::l2_norm_sq(w.v);
    const double coeff = m.k.delta * m.k.delta - m.lambda * m.k.delta + 1.0;
    s.E = coeff * s.u2 + s.grad2 + s.v2;
    s.X2 = s.grad2 + s.v2 +
           (m.variant == model::Variant::MassTermWholeSpace ? s.u2 : 0.0);
    s.flux = flux(w, m);
    if (m.nonlinearity.kind != model::NonlinearityKind::Zero) {
        double acc = 0.0;
        for (std::size_t i = 0; i < w.u.size(); ++i) acc += m.nonlinearity.F(w.u.values[i]);
        s.intF = acc * w.u.grid->cell_weight();
    }
    s.tails.reserve(tail_radii.size());
    for (double k : tail_radii) s.tails.push_back(tail_energy(w, k, m.lambda, m.k.delta));
    ensure(std::isfinite(s.E) && std::isfinite(s.X2) && std::isfinite(s.flux),
           "make_energy_sample: non-finite state");
    return s;
}

bool all_finite(const State& w) {
    for (double x : w.u.values)
        if (!std::isfinite(x)) return false;
    for (double x : w.v.values)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace dwlab::phase

namespace dwlab::model {

phase::State rhs(const phase::State& w, const ModelConfig& m) {
    geometry::ScalarField zero(w.u.grid), second(w.u.grid);
    const bool has_f = m.nonlinearity.kind != NonlinearityKind::Zero;
    for (std::size_t i = 0; i < second.size(); ++i) {
        double val = 0.0;
        if (has_f) val -= m.nonlinearity.f(w.u.values[i]);
        if (m.g) val += m.g->values[i];
        second.values[i] = val;
    }
    return phase::State(std::move(zero), std::move(second), w.t);
}

}  // namespace dwlab::model
