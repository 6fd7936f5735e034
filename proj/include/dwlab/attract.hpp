#pragma once
#include "dwlab/integrate.hpp"

#include <string>
#include <vector>

namespace dwlab::attract {

struct Ensemble {
    std::vector<phase::State> members;
    std::vector<std::size_t> run_offsets;   // start index of each collection run
    std::string provenance;
};

// X-norm distance between two states on a common grid.
double state_distance(const phase::State& a, const phase::State& b, model::Variant variant);

// sup over a in A of the min over b in B of ||a - b||_X. Exact O(|A||B|).
double hausdorff_semidistance(const Ensemble& A, const Ensemble& B, model::Variant variant);

// Simulates each seed state, discards [0, T_transient), and collects
// snapshots every stride*dt over [T_transient, T_transient + T_sample].
Ensemble attractor_approximate(const std::vector<phase::State>& seeds,
                               const model::ModelConfig& m, double T_transient, double T_sample,
                               double dt, int snapshot_stride);

// h(S(t)B, A) at the requested times (each a multiple of dt).
std::vector<std::pair<double, double>> attraction_curve(const Ensemble& B, const Ensemble& A,
                                                        const model::ModelConfig& m,
                                                        const std::vector<double>& times,
                                                        double dt);

struct EpsilonNet {
    Ensemble net;
    int size = 0;
};

// Greedy farthest-point cover; members visited in a fixed order (sorted by
// norm, ties by index) so the result is reproducible.
EpsilonNet epsilon_net(const Ensemble& A, double eps, model::Variant variant);

struct InvarianceDefect {
    double forward;    // h(S(t)A, A)
    double backward;   // h(A, S(t)A)
};

InvarianceDefect invariance_defect(const Ensemble& A, const model::ModelConfig& m, double t,
                                   double dt);

// Max X-distance between consecutive snapshots of the collection runs; the
// scale against which invariance defects are judged.
double sampling_resolution(const Ensemble& A, model::Variant variant);

// Steady state of the forced linear system: (-Lap + c) u* = g, v* = delta u*.
phase::State steady_state_forced_linear(const model::ModelConfig& m);

}  // namespace dwlab::attract
