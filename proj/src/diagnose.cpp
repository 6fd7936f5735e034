#include "dwlab/diagnose.hpp"
#include "dwlab/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace dwlab::diagnose {

namespace {

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return std::string(buf);
}

}  // namespace

CheckReport decay_check(const integrate::Trajectory& traj, const model::ModelConfig& m,
                        double delta_override) {
    CheckReport r;
    r.name = "decay";
    if (m.has_forcing() || m.nonlinearity.kind != model::NonlinearityKind::Zero) {
        r.applicable = false;
        r.details = "requires a homogeneous run (f = 0, g = 0)";
        return r;
    }
    const double delta = delta_override > 0.0 ? delta_override : m.k.delta;
    const double E0 = traj.samples.front().E;
    double min_margin = std::numeric_limits<double>::infinity();
    double worst_t = 0.0;
    for (const auto& s : traj.samples) {
        const double bound = E0 * std::exp(-2.0 * delta * s.t) * (1.0 + 1e-6);
        const double margin = bound - s.E;
        if (margin < min_margin) {
            min_margin = margin;
            worst_t = s.t;
        }
    }
    r.margin = min_margin;
    r.passed = min_margin >= 0.0;
    r.details = format("min margin %.3e at t = %.6g (E0 = %.6g)", min_margin, worst_t, E0);
    return r;
}

CheckReport absorbing_check(const std::vector<integrate::Trajectory>& trajectories,
                            const model::ModelConfig& m, double R, double mu_corruption_factor) {
    CheckReport r;
    r.name = "absorbing";
    if (!m.has_forcing()) {
        r.applicable = false;
        r.details = "requires nonzero forcing";
        return r;
    }
    model::AbsorbingEstimate est = model::absorbing_radius_and_time(m, R);
    if (mu_corruption_factor != 1.0) {
        const double mu = m.k.mu * mu_corruption_factor;
        est.M = 2.0 / (mu * m.k.alpha) * m.g_norm_sq();
        const double C = m.f_lin_bound * m.f_lin_bound;
        const double arg = mu * m.k.alpha * (R * R + C * R * R / m.nu) / m.g_norm_sq();
        est.T1 = arg > 1.0 ? std::log(arg) / mu : 0.0;
    }
    const double deadline = 2.0 * est.T1;
    double min_margin = std::numeric_limits<double>::infinity();
    std::string worst;
    for (std::size_t traj_idx = 0; traj_idx < trajectories.size(); ++traj_idx) {
        const auto& traj = trajectories[traj_idx];
        ensure(phase::EnergySample(traj.samples.front()).X2 <= R * R * (1.0 + 1e-9),
               "absorbing_check: initial state outside the declared radius");
        double entry = -1.0;
        double max_excess_after = -std::numeric_limits<double>::infinity();
        for (const auto& s : traj.samples) {
            if (entry < 0.0 && s.X2 <= est.M) entry = s.t;
            if (entry >= 0.0) max_excess_after = std::max(max_excess_after, s.X2 - est.M);
        }
        double margin;
        if (entry < 0.0) {
            margin = -1.0;  // never entered
            if (margin < min_margin) {
                min_margin = margin;
                worst = format("trajectory %g never entered (max X2 = %.6g vs M = %.6g)",
                               double(traj_idx),
                               std::max_element(traj.samples.begin(), traj.samples.end(),
                                                [](const auto& a, const auto& b) {
                                                    return a.X2 < b.X2;
                                                })->X2,
                               est.M);
            }
            continue;
        }
        // Entry deadline and no-exit margins, both normalized to be comparable.
        const double deadline_margin = (deadline - entry) / (1.0 + deadline);
        const double exit_margin = (1e-8 * est.M - max_excess_after) / est.M;
        margin = std::min(deadline_margin, exit_margin);
        if (margin < min_margin) {
            min_margin = margin;
            worst = format("trajectory %g: entry t = %.6g (deadline %.6g)", double(traj_idx),
                           entry, deadline);
        }
    }
    r.margin = min_margin;
    r.passed = min_margin >= 0.0;
    r.details = worst + format("; M = %.6g, T1 = %.6g", est.M, est.T1) +
                " [M uses the mu*alpha reading; the mu*lambda print is a known discrepancy]";
    return r;
}

TailReport tail_check(const integrate::Trajectory& traj, const std::vector<double>& radii,
                      double eps) {
    TailReport report;
    report.eps = eps;
    report.check.name = "tail";
    ensure(!traj.samples.empty(), "tail_check: empty trajectory");
    ensure(radii.size() == traj.samples.front().tails.size(),
           "tail_check: radii do not match the recorded tail ladder");
    for (std::size_t j = 1; j < radii.size(); ++j)
        ensure(radii[j] > radii[j - 1], "tail_check: radii must increase");

    // Monotone improvement in k at every sample.
    double worst_violation = 0.0;
    for (const auto& s : traj.samples)
        for (std::size_t j = 1; j < s.tails.size(); ++j)
            worst_violation = std::max(worst_violation, s.tails[j] - s.tails[j - 1]);
    const double tol = 1e-12 * (1.0 + traj.samples.front().E);
    report.check.margin = tol - worst_violation;
    report.check.passed = report.check.margin >= 0.0;
    report.check.details =
        format("worst k-monotonicity violation %.3e (tol %.3e)", worst_violation, tol);

    // Per radius: suffix suprema and the first time the suffix drops under eps.
    const std::size_t count = traj.samples.size();
    for (std::size_t j = 0; j < radii.size(); ++j) {
        TailLadderRow row;
        row.k = radii[j];
        std::vector<double> suffix(count);
        double running = 0.0;
        for (std::size_t i = count; i-- > 0;) {
            running = std::max(running, traj.samples[i].tails[j]);
            suffix[i] = running;
        }
        row.sup_tail = suffix.front();
        for (std::size_t i = 0; i < count; ++i) {
            if (suffix[i] <= eps) {
                row.first_time_small = traj.samples[i].t;
                break;
            }
        }
        report.rows.push_back(row);
    }
    return report;
}

CheckReport dissipative_inequality_check(const integrate::Trajectory& traj,
                                         const model::ModelConfig& m) {
    CheckReport r;
    r.name = "dissipative_inequality";
    const double g2 = m.g_norm_sq();
    const double mu = m.k.mu, alpha = m.k.alpha;
    double y_max = 0.0;
    for (const auto& s : traj.samples) y_max = std::max(y_max, s.X2 + 2.0 * s.intF);
    // The continuum inequality carries an O(y) slack reserve (the alpha split
    // and the sigma/nu margins), so a fixed small tolerance stays honest.
    const double tol = 1e-3 * (1.0 + y_max);
    double min_margin = std::numeric_limits<double>::infinity();
    double worst_t = 0.0;
    for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
        const auto& s0 = traj.samples[i];
        const auto& s1 = traj.samples[i + 1];
        const double dt = s1.t - s0.t;
        const double y0 = s0.X2 + 2.0 * s0.intF;
        const double y1 = s1.X2 + 2.0 * s1.intF;
        const double quotient = (y1 - y0) / dt;
        const double rhs = -mu * 0.5 * (y0 + y1) + g2 / alpha;
        const double margin = rhs + tol - quotient;
        if (margin < min_margin) {
            min_margin = margin;
            worst_t = s0.t;
        }
    }
    r.margin = min_margin;
    r.passed = min_margin >= 0.0;
    r.details = format("min margin %.3e at t = %.6g (tol %.3e)", min_margin, worst_t, tol);
    return r;
}

std::vector<double> gronwall_bound(const std::vector<double>& t, const std::vector<double>& y,
                                   const std::vector<double>& g, const std::vector<double>& h) {
    ensure(t.size() == y.size() && t.size() == g.size() && t.size() == h.size(),
           "gronwall_bound: series lengths differ");
    ensure(t.size() >= 2, "gronwall_bound: need at least two samples");
    const std::size_t n = t.size();
    // Cumulative integral of g by the trapezoidal rule.
    std::vector<double> G(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        G[i] = G[i - 1] + 0.5 * (t[i] - t[i - 1]) * (g[i] + g[i - 1]);
    // B(t_i) = y0 e^{G_i} + int_0^{t_i} e^{G_i - G_s} h(s) ds: accumulate
    // e^{-G_s} h(s) and scale by e^{G_i} at the end of each prefix.
    std::vector<double> bound(n);
    double inner = 0.0;
    bound[0] = y[0];
    for (std::size_t i = 1; i < n; ++i) {
        inner += 0.5 * (t[i] - t[i - 1]) *
                 (std::exp(-G[i]) * h[i] + std::exp(-G[i - 1]) * h[i - 1]);
        bound[i] = std::exp(G[i]) * (y[0] + inner);
    }
    return bound;
}

CheckReport gronwall_verify(const std::vector<double>& t, const std::vector<double>& y,
                            const std::vector<double>& g, const std::vector<double>& h) {
    CheckReport r;
    r.name = "gronwall";
    // Hypothesis dy/dt <= g y + h, validated on midpoint difference quotients.
    double scale = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        scale = std::max(scale, std::abs(y[i]) + std::abs(h[i]));
    double worst_hyp = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double dt = t[i + 1] - t[i];
        ensure(dt > 0.0, "gronwall_verify: time series must increase");
        const double quotient = (y[i + 1] - y[i]) / dt;
        const double rhs = 0.5 * (g[i] + g[i + 1]) * 0.5 * (y[i] + y[i + 1]) +
                           0.5 * (h[i] + h[i + 1]);
        worst_hyp = std::max(worst_hyp, quotient - rhs);
    }
    const double dt0 = t[1] - t[0];
    if (worst_hyp > 50.0 * dt0 * dt0 * (1.0 + scale) + 1e-9 * (1.0 + scale)) {
        r.applicable = false;
        r.details = format("hypothesis dy/dt <= g y + h violated by %.3e", worst_hyp);
        return r;
    }

    const std::vector<double> bound = gronwall_bound(t, y, g, h);
    double min_margin = std::numeric_limits<double>::infinity();
    double worst_t = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double margin = bound[i] * (1.0 + 1e-6) + 1e-12 - y[i];
        if (margin < min_margin) {
            min_margin = margin;
            worst_t = t[i];
        }
    }
    r.margin = min_margin;
    r.passed = min_margin >= 0.0;
    r.details = format("min margin %.3e at t = %.6g", min_margin, worst_t);
    return r;
}

}  // namespace dwlab::diagnose
