#include "dwlab/attract.hpp"
#include "dwlab/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dwlab::attract {

using phase::State;

double state_distance(const State& a, const State& b, model::Variant variant) {
    ensure(geometry::same_grid(*a.u.grid, *b.u.grid), "state_distance: grid mismatch");
    geometry::ScalarField du(a.u.grid), dv(a.u.grid);
    for (std::size_t i = 0; i < du.size(); ++i) {
        du.values[i] = a.u.values[i] - b.u.values[i];
        dv.values[i] = a.v.values[i] - b.v.values[i];
    }
    State diff(std::move(du), std::move(dv), 0.0);
    return std::sqrt(phase::x_norm_sq(diff, variant));
}

double hausdorff_semidistance(const Ensemble& A, const Ensemble& B, model::Variant variant) {
    ensure(!A.members.empty() && !B.members.empty(), "hausdorff_semidistance: empty ensemble");
    double sup = 0.0;
    for (const auto& a : A.members) {
        double inf = std::numeric_limits<double>::infinity();
        for (const auto& b : B.members) inf = std::min(inf, state_distance(a, b, variant));
        sup = std::max(sup, inf);
    }
    return sup;
}

Ensemble attractor_approximate(const std::vector<State>& seeds, const model::ModelConfig& m,
                               double T_transient, double T_sample, double dt,
                               int snapshot_stride) {
    ensure(!seeds.empty(), "attractor_approximate: no seed states");
    ensure(snapshot_stride >= 1, "attractor_approximate: snapshot stride must be positive");
    Ensemble ens;
    integrate::ObserverConfig obs;
    obs.stride = 1 << 20;   // energy samples are not the product here
    obs.snapshot_stride = snapshot_stride;
    for (const auto& w0 : seeds) {
        ens.run_offsets.push_back(ens.members.size());
        integrate::Trajectory traj =
            integrate::simulate(w0, m, T_transient + T_sample, dt, obs);
        for (const auto& snap : traj.snapshots)
            if (snap.t >= T_transient - 1e-9) ens.members.push_back(snap);
    }
    ensure(!ens.members.empty(), "attractor_approximate: no snapshots in the sampling window");
    return ens;
}

namespace {

// Evolves every member by the requested horizon in lockstep.
std::vector<State> evolve_members(const std::vector<State>& members,
                                  const model::ModelConfig& m, double horizon, double dt) {
    const long steps = std::lround(horizon / dt);
    ensure(std::abs(steps * dt - horizon) <= 1e-9 * (1.0 + std::abs(horizon)),
           "evolution horizon must be a multiple of dt");
    std::vector<State> out = members;
    for (auto& w : out)
        for (long s = 0; s < steps; ++s) w = integrate::step(w, m, dt);
    return out;
}

}  // namespace

std::vector<std::pair<double, double>> attraction_curve(const Ensemble& B, const Ensemble& A,
                                                        const model::ModelConfig& m,
                                                        const std::vector<double>& times,
                                                        double dt) {
    std::vector<double> sorted = times;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> curve;
    std::vector<State> current = B.members;
    double elapsed = 0.0;
    for (double target : sorted) {
        ensure(target >= elapsed, "attraction_curve: times must be nonnegative");
        current = evolve_members(current, m, target - elapsed, dt);
        elapsed = target;
        Ensemble moved;
        moved.members = current;
        curve.emplace_back(target, hausdorff_semidistance(moved, A, m.variant));
    }
    return curve;
}

EpsilonNet epsilon_net(const Ensemble& A, double eps, model::Variant variant) {
    ensure(eps > 0.0, "epsilon_net: eps must be positive");
    ensure(!A.members.empty(), "epsilon_net: empty ensemble");
    const std::size_t n = A.members.size();
    std::vector<double> norm(n);
    for (std::size_t i = 0; i < n; ++i)
        norm[i] = std::sqrt(phase::x_norm_sq(A.members[i], variant));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (norm[a] != norm[b]) return norm[a] > norm[b];
        return a < b;
    });

    std::vector<double> dist_to_net(n, std::numeric_limits<double>::infinity());
    EpsilonNet result;
    std::size_t next = order[0];
    while (true) {
        result.net.members.push_back(A.members[next]);
        ++result.size;
        double farthest = 0.0;
        std::size_t farthest_idx = order[0];
        for (std::size_t rank = 0; rank < n; ++rank) {
            const std::size_t i = order[rank];
            dist_to_net[i] = std::min(dist_to_net[i],
                                      state_distance(A.members[i], result.net.members.back(),
                                                     variant));
            if (dist_to_net[i] > farthest) {
                farthest = dist_to_net[i];
                farthest_idx = i;
            }
        }
        if (farthest <= eps) break;
        next = farthest_idx;
    }
    return result;
}

InvarianceDefect invariance_defect(const Ensemble& A, const model::ModelConfig& m, double t,
                                   double dt) {
    Ensemble moved;
    moved.members = evolve_members(A.members, m, t, dt);
    return InvarianceDefect{hausdorff_semidistance(moved, A, m.variant),
                            hausdorff_semidistance(A, moved, m.variant)};
}

double sampling_resolution(const Ensemble& A, model::Variant variant) {
    double res = 1e-12;   // floor
    for (std::size_t run = 0; run < A.run_offsets.size(); ++run) {
        const std::size_t begin = A.run_offsets[run];
        const std::size_t end =
            run + 1 < A.run_offsets.size() ? A.run_offsets[run + 1] : A.members.size();
        for (std::size_t i = begin; i + 1 < end; ++i)
            res = std::max(res, state_distance(A.members[i], A.members[i + 1], variant));
    }
    return res;
}

phase::State steady_state_forced_linear(const model::ModelConfig& m) {
    ensure(m.has_forcing(), "steady_state_forced_linear: forcing required");
    ensure(m.nonlinearity.kind == model::NonlinearityKind::Zero,
           "steady_state_forced_linear: linear model required");
    const double c = model::mass_coefficient(m.variant);
    geometry::ScalarField u = integrate::helmholtz_solve(m.g->grid, c, *m.g);
    geometry::ScalarField v(u.grid);
    for (std::size_t i = 0; i < v.size(); ++i) v.values[i] = m.k.delta * u.values[i];
    return State(std::move(u), std::move(v), 0.0);
}

}  // namespace dwlab::attract
