#pragma once
#include "dwlab/integrate.hpp"

#include <string>
#include <vector>

namespace dwlab::diagnose {

struct CheckReport {
    std::string name;
    bool passed = false;
    bool applicable = true;   // false: preconditions of the check not met
    double margin = 0.0;      // signed distance to the bound; >= 0 iff passed
    std::string details;
};

// E(t) <= E(0) e^{-2 delta t} (1 + 1e-6) on a homogeneous run (f = 0, g = 0).
// delta_override injects a corrupted rate into the bound (negative controls).
CheckReport decay_check(const integrate::Trajectory& traj, const model::ModelConfig& m,
                        double delta_override = 0.0);

// Entry of every trajectory into {||w||_X^2 <= M} by 2 T1, no exit beyond
// 1e-8 relative afterwards; M and T1 from the absorbing estimate at radius R.
CheckReport absorbing_check(const std::vector<integrate::Trajectory>& trajectories,
                            const model::ModelConfig& m, double R,
                            double mu_corruption_factor = 1.0);

struct TailLadderRow {
    double k;
    double first_time_small = -1.0;   // smallest sample time T with sup_{t>=T} tail <= eps
    double sup_tail = 0.0;            // sup over all samples
};

struct TailReport {
    CheckReport check;                // monotonicity in k across every sample
    std::vector<TailLadderRow> rows;
    double eps = 0.0;
};

TailReport tail_check(const integrate::Trajectory& traj, const std::vector<double>& radii,
                      double eps);

// Difference quotient of y = ||w||_X^2 + 2 int F(u) against
// -mu y + (1/alpha)||g||^2, with an O(dt^2)-scaled tolerance.
CheckReport dissipative_inequality_check(const integrate::Trajectory& traj,
                                         const model::ModelConfig& m);

// y(t) <= y(t0) exp(int g) + int exp(int g) h against trapezoidal quadrature
// with nested exponentials. The hypothesis dy/dt <= g y + h is validated on
// the data first; a violated hypothesis marks the report not applicable.
CheckReport gronwall_verify(const std::vector<double>& t, const std::vector<double>& y,
                            const std::vector<double>& g, const std::vector<double>& h);

// Right side of the integral bound at every sample (exposed for equality
// tests against closed-form solutions).
std::vector<double> gronwall_bound(const std::vector<double>& t, const std::vector<double>& y,
                                   const std::vector<double>& g, const std::vector<double>& h);

}  // namespace dwlab::diagnose
