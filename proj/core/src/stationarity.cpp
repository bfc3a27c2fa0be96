#include "tvclass/stationarity.hpp"

#include <cmath>

#include "tvclass/errors.hpp"
#include "tvclass/parallel.hpp"
#include "tvclass/rng.hpp"

namespace tvclass {

namespace {

/// Trapezoid integral over [0,1] of uniformly sampled values.
double trapezoid(const std::vector<double>& f) {
    const std::size_t g = f.size();
    double acc = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < g; ++i) acc += f[i];
    return acc / static_cast<double>(g - 1);
}

} // namespace

double roughness_statistic(const ArFit& fit, int grid_size) {
    if (grid_size < 2) throw ArgumentError("grid_size must be >= 2");
    if (fit.basis.c == 1) return 0.0;  // constant coefficients by construction
    double T = 0.0;
    std::vector<double> sq(static_cast<std::size_t>(grid_size));
    for (int j = 1; j <= fit.b; ++j) {
        const std::vector<double> phi = eval_phi_grid(fit, j, grid_size);
        const double mean = trapezoid(phi);
        for (int g = 0; g < grid_size; ++g) {
            const double d = phi[static_cast<std::size_t>(g)] - mean;
            sq[static_cast<std::size_t>(g)] = d * d;
        }
        T += trapezoid(sq);
    }
    return T;
}

StationarityResult stationarity_test(const std::vector<double>& z, int b, int c,
                                     BasisFamily family, int B, std::uint64_t seed,
                                     int grid_size, unsigned threads) {
    if (B < 1) throw ArgumentError("bootstrap replicate count must be >= 1");

    StationarityResult res;
    res.b = b;
    res.c = c;
    res.bootstrap_B = B;

    const ArFit sieve = fit_ols(z, b, c, family);
    res.statistic = roughness_statistic(sieve, grid_size);
    if (c == 1) {
        res.p_value = 1.0;  // statistic and every bootstrap statistic are 0
        return res;
    }

    // Constant-coefficient null fit and its residuals e_i = z_i - sum_j
    // phi0_j z_{i-j}, i = b+1..n.
    const ArFit null_fit = fit_ols(z, b, 1, family);
    const int n = static_cast<int>(z.size());
    std::vector<double> phi0(static_cast<std::size_t>(b));
    for (int j = 1; j <= b; ++j) {
        phi0[static_cast<std::size_t>(j - 1)] = eval_phi(null_fit, j, 0.0);
    }
    std::vector<double> resid(static_cast<std::size_t>(n - b));
    for (int i = b + 1; i <= n; ++i) {
        double pred = 0.0;
        for (int j = 1; j <= b; ++j) {
            pred += phi0[static_cast<std::size_t>(j - 1)] * z[static_cast<std::size_t>(i - j - 1)];
        }
        resid[static_cast<std::size_t>(i - b - 1)] = z[static_cast<std::size_t>(i - 1)] - pred;
    }

    std::vector<double> boot(static_cast<std::size_t>(B));
    parallel_for(static_cast<std::size_t>(B), threads, [&](std::size_t r) {
        Rng rng(derive_stream(seed, static_cast<std::uint64_t>(r)));
        std::vector<double> zs(z.begin(), z.begin() + b);
        zs.resize(static_cast<std::size_t>(n));
        for (int i = b + 1; i <= n; ++i) {
            double v = rng.next_normal() * resid[static_cast<std::size_t>(i - b - 1)];
            for (int j = 1; j <= b; ++j) {
                v += phi0[static_cast<std::size_t>(j - 1)] * zs[static_cast<std::size_t>(i - j - 1)];
            }
            zs[static_cast<std::size_t>(i - 1)] = v;
        }
        const ArFit refit = fit_ols(zs, b, c, family);
        boot[r] = roughness_statistic(refit, grid_size);
    });

    int exceed = 0;
    for (double t : boot) {
        if (t >= res.statistic) ++exceed;
    }
    res.p_value = (1.0 + exceed) / static_cast<double>(B + 1);
    return res;
}

} // namespace tvclass
