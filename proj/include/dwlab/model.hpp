#pragma once
#include "dwlab/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dwlab::model {

enum class Variant { MassTermWholeSpace, NoMassStrip };

// Mass coefficient c in the linear operator: -Lap u + (lambda-delta) v + (delta^2 - delta*lambda + c) u.
inline double mass_coefficient(Variant v) { return v == Variant::MassTermWholeSpace ? 1.0 : 0.0; }

struct DerivedConstants {
    double delta;   // lambda / (lambda^2 + 4)
    double sigma;   // lambda / (sqrt(lambda^2+4) (lambda + sqrt(lambda^2+4)))
    double alpha;   // alpha_fraction * sigma
    double mu;      // min{ 2(sigma - alpha), delta * nu }
};

DerivedConstants derive_constants(double lambda, double nu, double alpha_fraction);

enum class NonlinearityKind { Zero, SaturatingCubic, UserTable };

// f with antiderivative F (F(0) = 0). UserTable ships both on a sorted
// abscissa grid and interpolates linearly; no symbolic integration happens.
struct NonlinearitySpec {
    NonlinearityKind kind = NonlinearityKind::Zero;
    std::vector<double> table_s, table_f, table_F;

    static NonlinearitySpec zero();
    static NonlinearitySpec saturating_cubic();   // f(s) = s^3/(1+s^2)
    static NonlinearitySpec user_table(std::vector<double> s, std::vector<double> f,
                                       std::vector<double> F);

    double f(double s) const;
    double F(double s) const;
    double linear_growth_bound() const;   // C with |f(s)| <= C|s| on the working range
};

struct ModelConfig {
    Variant variant = Variant::MassTermWholeSpace;
    double lambda = 1.0;
    double nu = 2.0;
    double alpha_fraction = 0.5;
    DerivedConstants k{};                      // derived, validated at construction
    NonlinearitySpec nonlinearity;
    std::optional<geometry::ScalarField> g;    // forcing; absent means zero
    double f_lin_bound = 0.0;

    bool has_forcing() const { return g.has_value(); }
    double g_norm_sq() const { return g ? geometry::l2_norm_sq(*g) : 0.0; }
};

// Validates the constant pipeline: 0 < delta^2 - lambda*delta + 1 < 1,
// lambda - 2 delta > 0, lambda - 3 delta > 0, 0 < alpha < sigma, mu > 0.
ModelConfig make_model(Variant variant, double lambda, double nu, double alpha_fraction,
                       NonlinearitySpec nonlinearity,
                       std::optional<geometry::ScalarField> g = std::nullopt);

struct AbsorbingEstimate {
    double M;     // bound on ||w||_X^2: (2/(mu alpha)) ||g||_H^2
    double T1;    // entry deadline from radius R, clamped to >= 0
};

AbsorbingEstimate absorbing_radius_and_time(const ModelConfig& m, double R);

struct ConditionReport {
    double min_fs_minus_nuF;    // min over samples of f(s)s - nu F(s)
    double min_F;
    double max_ratio;           // max |f(s)/s|
    double quadrature_error;    // max |F(s) - adaptive quadrature of f|
    double ratio_cap;
    bool sign_condition_ok;     // f(s)s >= nu F(s) >= 0
    bool growth_condition_ok;   // max |f/s| <= ratio_cap
    bool quadrature_ok;
    bool passed() const { return sign_condition_ok && growth_condition_ok && quadrature_ok; }
};

ConditionReport verify_growth_conditions(const NonlinearitySpec& spec, double nu,
                                         double range_lo, double range_hi, int samples,
                                         double ratio_cap = 1e3);

}  // namespace dwlab::model
