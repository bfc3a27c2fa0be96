#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tvclass/basis.hpp"

namespace tvclass {

/// Least-squares fit of the sieve-expanded time-varying AR model
///   z_i = sum_{j=1..b} phi_j(i/n) z_{i-j} + eps_i,  i = b+1..n,
/// with each coefficient function expanded in the chosen basis,
///   phi_j(t) = sum_{l=1..c} beta[(j-1)c + (l-1)] alpha_l(t).
struct ArFit {
    SieveBasis basis;
    int b = 0;                        ///< AR order
    int n = 0;                        ///< length of the series that was fit
    Eigen::VectorXd beta;             ///< b*c coefficients, lag-major blocks
    double loocv_score = 0.0;         ///< leave-one-out CV score of this fit
    double condition_estimate = 1.0;  ///< max|R_ii|/min|R_ii| from the QR factor
    bool ridged = false;              ///< ridge fallback was engaged
};

struct DesignMatrix {
    Eigen::MatrixXd G;  ///< (n-b) x (b*c) regressors
    Eigen::VectorXd y;  ///< responses z_{b+1}..z_n
};

/// Builds the regression for (b, basis.c): row s (1-based, s = 1..n-b)
/// is the Kronecker row (z_{s+b-1}, ..., z_s) (x) (alpha_1(u_s), ...,
/// alpha_c(u_s)) with u_s = (s+b)/n, so column (j-1)*c + (l-1) pairs lag j
/// with basis function l. Requires n - b >= 1.
DesignMatrix build_design(const std::vector<double>& z, int b, const SieveBasis& basis);

/// Fits by Householder QR. If the triangular factor's diagonal ratio
/// max|R_ii|/min|R_ii| exceeds 1e10 (or the diagonal vanishes), refits with
/// ridge penalty lambda = 1e-8 * ||G||_F^2 / (b*c) and marks the fit.
/// Requires n > b*c + 1 observations and a non-constant series; throws
/// DataError otherwise, NumericError if even the ridge system is unusable.
ArFit fit_ols(const std::vector<double>& z, int b, int c, BasisFamily family);

/// Fitted coefficient function phi_j(t), 1 <= j <= b, t in [0,1].
double eval_phi(const ArFit& fit, int j, double t);

/// Evaluates phi_j on a uniform grid of grid_size points spanning [0,1].
std::vector<double> eval_phi_grid(const ArFit& fit, int j, int grid_size);

struct CvCell {
    int b = 0;
    int c = 0;
    /// Mean squared leave-one-out prediction error, computed in closed form
    /// from the hat-matrix diagonal; +infinity for cells that cannot be fit.
    double score = 0.0;
};

struct CvSelection {
    int b = 0;
    int c = 0;
    double score = 0.0;
    std::vector<CvCell> table;  ///< every (b, c) cell visited, row-major in b then c
};

/// Scores every (b, c) in the given grids by exact leave-one-out CV and
/// returns the minimizer; ties break toward smaller b, then smaller c.
/// Grids must be non-empty, strictly increasing, with entries >= 1. At least
/// one cell must satisfy n > b*c + 1 or a DataError is thrown.
///
/// Cost note: for each b one QR factorization at c_max is taken over a
/// basis-major column ordering whose prefixes realize every smaller c, so
/// the whole c-row is scored from a single orthogonal decomposition.
CvSelection select_order_cv(const std::vector<double>& z, const std::vector<int>& b_grid,
                            const std::vector<int>& c_grid, BasisFamily family);

} // namespace tvclass
