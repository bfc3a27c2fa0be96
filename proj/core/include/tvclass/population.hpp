#pragma once

#include <functional>
#include <vector>

namespace tvclass {

enum class AutocovKind {
    /// z_i = a(t) eps_{i-1} + eps_i: gamma(t,0) = a(t)^2 + 1,
    /// gamma(t,1) = a(t), gamma(t,h) = 0 for h >= 2.
    TvMA1,
    /// z_i = a(t) z_{i-1} + eps_i with sup |a| < 1:
    /// gamma(t,h) = a(t)^h / (1 - a(t)^2).
    TvAR1,
    /// TvAR1 with a constant coefficient (same closed form).
    StationaryAR1,
    /// gamma supplied directly by custom_gamma.
    Custom,
};

/// Population autocovariance gamma(t, h) of a reference process, used to
/// compute the predictive coefficients the estimator should recover.
struct AutocovModel {
    AutocovKind kind = AutocovKind::StationaryAR1;
    /// Coefficient function a(t) for the closed-form kinds.
    std::function<double(double)> coef;
    /// Only read when kind == Custom.
    std::function<double(double, int)> custom_gamma;
};

AutocovModel make_tv_ma1(std::function<double(double)> coef);
AutocovModel make_tv_ar1(std::function<double(double)> coef);
AutocovModel make_stationary_ar1(double coef);

/// gamma(t, h) for h >= 0, t in [0,1]. Throws ArgumentError on violations
/// and NumericError when an AR1 coefficient has |a(t)| >= 1.
double gamma_cov(const AutocovModel& model, double t, int h);

/// Best linear predictor coefficients of order b at rescaled time t: solves
/// Gamma_b(t) phi = nu_b(t), where Gamma_b has entries gamma(t, |i-j|) and
/// nu_b entries gamma(t, 1..b). The matrix must be symmetric positive
/// definite (smallest eigenvalue >= 1e-10), else NumericError.
std::vector<double> population_phi(const AutocovModel& model, int b, double t);

/// max minus min of the j-th predictive coefficient over a uniform grid of
/// grid_size points on [0,1]. 1 <= j <= b.
double population_feature(const AutocovModel& model, int b, int j, int grid_size);

} // namespace tvclass
