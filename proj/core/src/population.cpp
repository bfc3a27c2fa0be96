#include "tvclass/population.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>

#include "tvclass/errors.hpp"

namespace tvclass {

AutocovModel make_tv_ma1(std::function<double(double)> coef) {
    AutocovModel m;
    m.kind = AutocovKind::TvMA1;
    m.coef = std::move(coef);
    return m;
}

AutocovModel make_tv_ar1(std::function<double(double)> coef) {
    AutocovModel m;
    m.kind = AutocovKind::TvAR1;
    m.coef = std::move(coef);
    return m;
}

AutocovModel make_stationary_ar1(double coef) {
    AutocovModel m;
    m.kind = AutocovKind::StationaryAR1;
    m.coef = [coef](double) { return coef; };
    return m;
}

namespace {

double ar1_gamma(double a, int h) {
    if (!(std::abs(a) < 1.0)) {
        throw NumericError("AR(1) autocovariance requires |a(t)| < 1");
    }
    return std::pow(a, h) / (1.0 - a * a);
}

} // namespace

double gamma_cov(const AutocovModel& model, double t, int h) {
    if (h < 0) throw ArgumentError("autocovariance lag h must be >= 0");
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("autocovariance time t must lie in [0,1]");
    switch (model.kind) {
        case AutocovKind::TvMA1: {
            const double a = model.coef(t);
            if (h == 0) return a * a + 1.0;
            if (h == 1) return a;
            return 0.0;
        }
        case AutocovKind::TvAR1:
        case AutocovKind::StationaryAR1:
            return ar1_gamma(model.coef(t), h);
        case AutocovKind::Custom:
            if (!model.custom_gamma) throw ArgumentError("custom autocovariance not set");
            return model.custom_gamma(t, h);
    }
    throw ArgumentError("unknown autocovariance kind");
}

std::vector<double> population_phi(const AutocovModel& model, int b, double t) {
    if (b < 1) throw ArgumentError("predictor order b must be >= 1");
    Eigen::MatrixXd Gamma(b, b);
    Eigen::VectorXd nu(b);
    for (int i = 0; i < b; ++i) {
        nu(i) = gamma_cov(model, t, i + 1);
        for (int j = 0; j <= i; ++j) {
            const double g = gamma_cov(model, t, i - j);
            Gamma(i, j) = g;
            Gamma(j, i) = g;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Gamma, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() < 1e-10) {
        throw NumericError("population covariance matrix is not positive definite");
    }
    Eigen::VectorXd phi = Gamma.ldlt().solve(nu);
    return std::vector<double>(phi.data(), phi.data() + b);
}

double population_feature(const AutocovModel& model, int b, int j, int grid_size) {
    if (j < 1 || j > b) throw ArgumentError("lag index j must lie in [1, b]");
    if (grid_size < 2) throw ArgumentError("population_feature grid_size must be >= 2");
    double lo = 0.0, hi = 0.0;
    for (int g = 0; g < grid_size; ++g) {
        const double t = static_cast<double>(g) / static_cast<double>(grid_size - 1);
        const double v = population_phi(model, b, t)[static_cast<std::size_t>(j - 1)];
        if (g == 0) {
            lo = hi = v;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi - lo;
}

} // namespace tvclass
