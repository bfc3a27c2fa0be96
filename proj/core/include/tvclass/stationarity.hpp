#pragma once

#include <cstdint>
#include <vector>

#include "tvclass/ar_fit.hpp"

namespace tvclass {

/// T = sum_j integral (phi_j(t) - mean_j)^2 dt over [0,1], the squared L2
/// distance of each fitted coefficient function from its own time average.
/// Trapezoid rule on a uniform grid of grid_size points. Exactly 0 for a
/// one-function (c = 1) fit.
double roughness_statistic(const ArFit& fit, int grid_size);

struct StationarityResult {
    double statistic = 0.0;  ///< T on the observed series
    double p_value = 1.0;
    int b = 0;               ///< order used for both the sieve and null fits
    int c = 0;               ///< basis size of the sieve fit
    int bootstrap_B = 0;
};

/// Residual multiplier bootstrap test of "the coefficient functions are
/// constant in time" for one series:
///  - fit the sieve model at (b, c) -> statistic T;
///  - fit the constant-coefficient null (same b, c = 1), keep its residuals;
///  - B times: regenerate the series from the null recursion with residuals
///    multiplied by fresh standard normals, refit at (b, c), collect T*;
///  - p = (1 + #{T* >= T}) / (B + 1).
/// Bootstrap replicate r draws from stream derive_stream(seed, r); replicates
/// run on up to `threads` workers with identical results for any count.
/// Requires b, c >= 1, B >= 1, grid_size >= 2, and a series long enough for
/// fit_ols at (b, c).
StationarityResult stationarity_test(const std::vector<double>& z, int b, int c,
                                     BasisFamily family, int B, std::uint64_t seed,
                                     int grid_size = 201, unsigned threads = 1);

} // namespace tvclass
