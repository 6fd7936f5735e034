#include "dwlab/model.hpp"
#include "dwlab/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dwlab::model {

DerivedConstants derive_constants(double lambda, double nu, double alpha_fraction) {
    ensure(lambda > 0.0, "derive_constants: lambda must be positive");
    ensure(nu > 0.0, "derive_constants: nu must be positive");
    ensure(alpha_fraction > 0.0 && alpha_fraction < 1.0,
           "derive_constants: alpha_fraction must lie in (0,1)");
    DerivedConstants k{};
    const double root = std::sqrt(lambda * lambda + 4.0);
    k.delta = lambda / (lambda * lambda + 4.0);
    k.sigma = lambda / (root * (lambda + root));
    k.alpha = alpha_fraction * k.sigma;
    k.mu = std::min(2.0 * (k.sigma - k.alpha), k.delta * nu);
    return k;
}

NonlinearitySpec NonlinearitySpec::zero() { return NonlinearitySpec{}; }

NonlinearitySpec NonlinearitySpec::saturating_cubic() {
    NonlinearitySpec s;
    s.kind = NonlinearityKind::SaturatingCubic;
    return s;
}

NonlinearitySpec NonlinearitySpec::user_table(std::vector<double> s, std::vector<double> f,
                                              std::vector<double> F) {
    ensure(s.size() >= 2 && s.size() == f.size() && s.size() == F.size(),
           "user_table: need matching tables with at least two rows");
    ensure(std::is_sorted(s.begin(), s.end()), "user_table: abscissae must be sorted");
    NonlinearitySpec spec;
    spec.kind = NonlinearityKind::UserTable;
    spec.table_s = std::move(s);
    spec.table_f = std::move(f);
    spec.table_F = std::move(F);
    return spec;
}

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    ensure(x >= xs.front() && x <= xs.back(), "user_table: argument outside tabulated range");
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = std::min<std::size_t>(it - xs.begin(), xs.size() - 1);
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace

double NonlinearitySpec::f(double s) const {
    switch (kind) {
        case NonlinearityKind::Zero: return 0.0;
        case NonlinearityKind::SaturatingCubic: return s * s * s / (1.0 + s * s);
        case NonlinearityKind::UserTable: return interp(table_s, table_f, s);
    }
    return 0.0;
}

double NonlinearitySpec::F(double s) const {
    switch (kind) {
        case NonlinearityKind::Zero: return 0.0;
        case NonlinearityKind::SaturatingCubic: return 0.5 * (s * s - std::log1p(s * s));
        case NonlinearityKind::UserTable: return interp(table_s, table_F, s);
    }
    return 0.0;
}

double NonlinearitySpec::linear_growth_bound() const {
    switch (kind) {
        case NonlinearityKind::Zero: return 0.0;
        case NonlinearityKind::SaturatingCubic: return 1.0;  // |f(s)/s| = s^2/(1+s^2) < 1
        case NonlinearityKind::UserTable: {
            double cap = 0.0;
            for (std::size_t i = 0; i < table_s.size(); ++i) {
                if (std::abs(table_s[i]) < 1e-12) continue;
                cap = std::max(cap, std::abs(table_f[i] / table_s[i]));
            }
            return cap;
        }
    }
    return 0.0;
}

ModelConfig make_model(Variant variant, double lambda, double nu, double alpha_fraction,
                       NonlinearitySpec nonlinearity, std::optional<geometry::ScalarField> g) {
    ModelConfig m;
    m.variant = variant;
    m.lambda = lambda;
    m.nu = nu;
    m.alpha_fraction = alpha_fraction;
    m.k = derive_constants(lambda, nu, alpha_fraction);
    const double d = m.k.delta;
    const double coeff = d * d - lambda * d + 1.0;
    ensure(coeff > 0.0 && coeff < 1.0, "make_model: energy coefficient outside (0,1)");
    ensure(lambda - 2.0 * d > 0.0, "make_model: lambda - 2 delta must be positive");
    ensure(lambda - 3.0 * d > 0.0, "make_model: lambda - 3 delta must be positive");
    ensure(m.k.alpha > 0.0 && m.k.alpha < m.k.sigma, "make_model: alpha outside (0, sigma)");
    ensure(m.k.mu > 0.0, "make_model: mu must be positive");
    m.nonlinearity = std::move(nonlinearity);
    m.f_lin_bound = m.nonlinearity.linear_growth_bound();
    m.g = std::move(g);
    return m;
}

AbsorbingEstimate absorbing_radius_and_time(const ModelConfig& m, double R) {
    const double g2 = m.g_norm_sq();
    if (g2 == 0.0) return AbsorbingEstimate{0.0, 0.0};
    const double M = 2.0 / (m.k.mu * m.k.alpha) * g2;
    const double C = m.f_lin_bound * m.f_lin_bound;
    const double arg = m.k.mu * m.k.alpha * (R * R + C * R * R / m.nu) / g2;
    const double T1 = arg > 1.0 ? std::log(arg) / m.k.mu : 0.0;
    return AbsorbingEstimate{M, T1};
}

namespace {

// Adaptive Simpson on f, used to cross-check the shipped antiderivative.
double adaptive_simpson(const NonlinearitySpec& spec, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = spec.f(lm), frm = spec.f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(spec, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(spec, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_f(const NonlinearitySpec& spec, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = spec.f(a), fb = spec.f(b), fm = spec.f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(spec, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

ConditionReport verify_growth_conditions(const NonlinearitySpec& spec, double nu, double range_lo,
                                         double range_hi, int samples, double ratio_cap) {
    ensure(samples >= 1000, "verify_growth_conditions: need at least 1000 samples");
    ensure(range_hi > range_lo, "verify_growth_conditions: empty range");
    ConditionReport r{};
    r.ratio_cap = ratio_cap;
    r.min_fs_minus_nuF = std::numeric_limits<double>::infinity();
    r.min_F = std::numeric_limits<double>::infinity();
    r.max_ratio = 0.0;
    r.quadrature_error = 0.0;

    const double step = (range_hi - range_lo) / (samples - 1);
    for (int i = 0; i < samples; ++i) {
        const double s = range_lo + i * step;
        const double fs = spec.f(s);
        const double Fs = spec.F(s);
        r.min_fs_minus_nuF = std::min(r.min_fs_minus_nuF, fs * s - nu * Fs);
        r.min_F = std::min(r.min_F, Fs);
        if (std::abs(s) > 1e-12) r.max_ratio = std::max(r.max_ratio, std::abs(fs / s));
    }
    // Quadrature cross-check of F at a coarse subset of the sample grid.
    const int checks = 33;
    for (int i = 0; i < checks; ++i) {
        const double s = range_lo + (range_hi - range_lo) * i / (checks - 1);
        const double quad = integrate_f(spec, 0.0, s, 1e-12);
        r.quadrature_error = std::max(r.quadrature_error, std::abs(quad - spec.F(s)));
    }

    const double scale = 1.0 + std::abs(r.min_fs_minus_nuF);
    r.sign_condition_ok = r.min_fs_minus_nuF >= -1e-9 * scale && r.min_F >= -1e-12;
    r.growth_condition_ok = r.max_ratio <= ratio_cap;
    r.quadrature_ok = r.quadrature_error <= 1e-10 * (1.0 + std::abs(spec.F(range_hi)));
    return r;
}

}  // namespace dwlab::model
