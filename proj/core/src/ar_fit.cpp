#include "tvclass/ar_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tvclass/errors.hpp"

namespace tvclass {

namespace {

constexpr double condition_limit = 1e10;
constexpr double ridge_scale = 1e-8;
constexpr double leverage_guard = 1e-10;
constexpr double inf = std::numeric_limits<double>::infinity();

void require_usable_series(const std::vector<double>& z) {
    if (z.empty()) throw DataError("empty series");
    double lo = z[0], hi = z[0];
    for (double v : z) {
        if (!std::isfinite(v)) throw DataError("series contains a non-finite value");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) throw DataError("constant series: regression is degenerate");
}

/// Mean squared leave-one-out prediction error from residuals e and
/// hat-matrix diagonal h: mean over s of (e_s / (1 - h_s))^2.
double loo_score(const Eigen::VectorXd& e, const Eigen::VectorXd& h) {
    const Eigen::Index m = e.size();
    double acc = 0.0;
    for (Eigen::Index s = 0; s < m; ++s) {
        const double d = 1.0 - h(s);
        if (d < leverage_guard) return inf;
        const double r = e(s) / d;
        acc += r * r;
    }
    return acc / static_cast<double>(m);
}

/// Hat-matrix diagonal h_s = g_s^T (R^T R)^{-1} g_s = ||R^{-T} g_s||^2 where
/// R is the (possibly ridge-augmented) triangular factor.
Eigen::VectorXd hat_diagonal(const Eigen::MatrixXd& G, const Eigen::MatrixXd& R) {
    Eigen::MatrixXd W = R.transpose()
                            .triangularView<Eigen::Lower>()
                            .solve(Eigen::MatrixXd(G.transpose()));
    return W.colwise().squaredNorm().transpose();
}

} // namespace

DesignMatrix build_design(const std::vector<double>& z, int b, const SieveBasis& basis) {
    const int n = static_cast<int>(z.size());
    const int c = basis.c;
    if (b < 1) throw ArgumentError("AR order b must be >= 1");
    if (c < 1) throw ArgumentError("basis size c must be >= 1");
    if (n - b < 1) throw DataError("series too short for the requested AR order");
    const int m = n - b;
    DesignMatrix d;
    d.G.resize(m, b * c);
    d.y.resize(m);
    std::vector<double> alpha(static_cast<std::size_t>(c));
    for (int s = 1; s <= m; ++s) {
        const int i = s + b;  // index of the response z_i
        d.y(s - 1) = z[static_cast<std::size_t>(i - 1)];
        evaluate_basis_into(basis, static_cast<double>(i) / static_cast<double>(n),
                            alpha.data());
        for (int j = 1; j <= b; ++j) {
            const double zij = z[static_cast<std::size_t>(i - j - 1)];
            for (int l = 1; l <= c; ++l) {
                d.G(s - 1, (j - 1) * c + (l - 1)) = zij * alpha[static_cast<std::size_t>(l - 1)];
            }
        }
    }
    return d;
}

ArFit fit_ols(const std::vector<double>& z, int b, int c, BasisFamily family) {
    if (b < 1) throw ArgumentError("AR order b must be >= 1");
    if (c < 1) throw ArgumentError("basis size c must be >= 1");
    const int n = static_cast<int>(z.size());
    const int K = b * c;
    if (n <= K + 1) {
        throw DataError("series too short: need more than b*c + 1 observations");
    }
    require_usable_series(z);

    ArFit fit;
    fit.basis = SieveBasis{family, c};
    fit.b = b;
    fit.n = n;

    DesignMatrix d = build_design(z, b, fit.basis);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(d.G);
    const Eigen::VectorXd rdiag = qr.matrixQR().diagonal().head(K).cwiseAbs();
    const double dmax = rdiag.maxCoeff();
    const double dmin = rdiag.minCoeff();
    fit.condition_estimate = (dmin > 0.0) ? dmax / dmin : inf;

    Eigen::MatrixXd R;
    if (fit.condition_estimate <= condition_limit) {
        fit.beta = qr.solve(d.y);
        R = qr.matrixQR().topLeftCorner(K, K).triangularView<Eigen::Upper>();
    } else {
        // Ridge fallback: minimize ||y - G beta||^2 + lambda ||beta||^2 via
        // the augmented stacked system [G; sqrt(lambda) I].
        const double lambda = ridge_scale * d.G.squaredNorm() / static_cast<double>(K);
        const int m = n - b;
        Eigen::MatrixXd Ga(m + K, K);
        Ga.topRows(m) = d.G;
        Ga.bottomRows(K) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(K, K);
        Eigen::VectorXd ya = Eigen::VectorXd::Zero(m + K);
        ya.head(m) = d.y;
        Eigen::HouseholderQR<Eigen::MatrixXd> qra(Ga);
        const Eigen::VectorXd adiag = qra.matrixQR().diagonal().head(K).cwiseAbs();
        if (!(adiag.minCoeff() > 0.0)) {
            throw NumericError("design matrix unusable even with ridge regularization");
        }
        fit.beta = qra.solve(ya);
        R = qra.matrixQR().topLeftCorner(K, K).triangularView<Eigen::Upper>();
        fit.ridged = true;
    }

    if (!fit.beta.allFinite()) {
        throw NumericError("least-squares solution is not finite");
    }
    const Eigen::VectorXd e = d.y - d.G * fit.beta;
    fit.loocv_score = loo_score(e, hat_diagonal(d.G, R));
    return fit;
}

double eval_phi(const ArFit& fit, int j, double t) {
    if (j < 1 || j > fit.b) throw ArgumentError("lag index j must lie in [1, b]");
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("time t must lie in [0,1]");
    const int c = fit.basis.c;
    std::vector<double> alpha(static_cast<std::size_t>(c));
    evaluate_basis_into(fit.basis, t, alpha.data());
    double v = 0.0;
    for (int l = 1; l <= c; ++l) {
        v += fit.beta((j - 1) * c + (l - 1)) * alpha[static_cast<std::size_t>(l - 1)];
    }
    return v;
}

std::vector<double> eval_phi_grid(const ArFit& fit, int j, int grid_size) {
    if (grid_size < 2) throw ArgumentError("grid_size must be >= 2");
    std::vector<double> out(static_cast<std::size_t>(grid_size));
    for (int g = 0; g < grid_size; ++g) {
        const double t = static_cast<double>(g) / static_cast<double>(grid_size - 1);
        out[static_cast<std::size_t>(g)] = eval_phi(fit, j, t);
    }
    return out;
}

namespace {

void validate_grid(const std::vector<int>& grid, const char* name) {
    if (grid.empty()) throw ArgumentError(std::string(name) + " grid must be non-empty");
    int prev = 0;
    for (int v : grid) {
        if (v < 1) throw ArgumentError(std::string(name) + " grid entries must be >= 1");
        if (v <= prev) throw ArgumentError(std::string(name) + " grid must be strictly increasing");
        prev = v;
    }
}

} // namespace

CvSelection select_order_cv(const std::vector<double>& z, const std::vector<int>& b_grid,
                            const std::vector<int>& c_grid, BasisFamily family) {
    validate_grid(b_grid, "b");
    validate_grid(c_grid, "c");
    require_usable_series(z);
    const int n = static_cast<int>(z.size());

    CvSelection sel;
    sel.score = inf;
    std::vector<double> alpha;

    for (int b : b_grid) {
        const int m = n - b;
        // Largest c in the grid that leaves n > b*c + 1; larger cells get +inf.
        int c_fit = 0;
        for (int c : c_grid) {
            if (n > b * c + 1) c_fit = c;
        }
        std::size_t scored = 0;
        if (c_fit > 0) {
            // Basis-major column order: column (l-1)*b + (j-1) holds
            // z_{i-j} alpha_l(i/n). The first b*c columns then span exactly
            // the (b, c) design for every c <= c_fit, so one QR at c_fit
            // scores the whole row of cells.
            const int K = b * c_fit;
            const SieveBasis basis{family, c_fit};
            alpha.resize(static_cast<std::size_t>(c_fit));
            Eigen::MatrixXd G(m, K);
            Eigen::VectorXd y(m);
            for (int s = 1; s <= m; ++s) {
                const int i = s + b;
                y(s - 1) = z[static_cast<std::size_t>(i - 1)];
                evaluate_basis_into(basis, static_cast<double>(i) / static_cast<double>(n),
                                    alpha.data());
                for (int l = 1; l <= c_fit; ++l) {
                    const double a = alpha[static_cast<std::size_t>(l - 1)];
                    for (int j = 1; j <= b; ++j) {
                        G(s - 1, (l - 1) * b + (j - 1)) =
                            a * z[static_cast<std::size_t>(i - j - 1)];
                    }
                }
            }
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
            const Eigen::MatrixXd thinQ =
                qr.householderQ() * Eigen::MatrixXd::Identity(m, K);
            const Eigen::VectorXd coef = thinQ.transpose() * y;

            // March through column prefixes, peeling one orthonormal
            // direction at a time; residual and leverage of the prefix span
            // update in O(m).
            Eigen::VectorXd e = y;
            Eigen::VectorXd h = Eigen::VectorXd::Zero(m);
            for (int col = 1; col <= K; ++col) {
                e -= coef(col - 1) * thinQ.col(col - 1);
                h += thinQ.col(col - 1).cwiseAbs2();
                if (col % b != 0) continue;
                const int c_cur = col / b;
                if (scored < c_grid.size() && c_grid[scored] == c_cur) {
                    sel.table.push_back({b, c_cur, loo_score(e, h)});
                    ++scored;
                }
            }
        }
        for (std::size_t k = scored; k < c_grid.size(); ++k) {
            sel.table.push_back({b, c_grid[k], inf});
        }
    }

    for (const CvCell& cell : sel.table) {
        if (cell.score < sel.score) {
            sel.score = cell.score;
            sel.b = cell.b;
            sel.c = cell.c;
        }
    }
    if (!(sel.score < inf)) {
        throw DataError("no (b, c) cell is feasible for this series length");
    }
    return sel;
}

} // namespace tvclass
