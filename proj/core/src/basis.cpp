#include "tvclass/basis.hpp"

#include <cmath>
#include <numbers>

#include "tvclass/errors.hpp"

namespace tvclass {

std::string family_name(BasisFamily family) {
    switch (family) {
        case BasisFamily::NormalizedLegendre: return "legendre";
        case BasisFamily::NormalizedTrigonometric: return "trigonometric";
    }
    return "legendre";
}

std::optional<BasisFamily> parse_family(const std::string& text) {
    if (text == "legendre") return BasisFamily::NormalizedLegendre;
    if (text == "trigonometric" || text == "trig") return BasisFamily::NormalizedTrigonometric;
    return std::nullopt;
}

void evaluate_basis_into(const SieveBasis& basis, double t, double* out) {
    const int c = basis.c;
    if (basis.family == BasisFamily::NormalizedLegendre) {
        // Shift to x in [-1,1]; k P_k = (2k-1) x P_{k-1} - (k-1) P_{k-2}.
        const double x = 2.0 * t - 1.0;
        double pm2 = 1.0;  // P_0
        out[0] = 1.0;      // sqrt(1) * P_0
        if (c == 1) return;
        double pm1 = x;    // P_1
        out[1] = std::sqrt(3.0) * pm1;
        for (int l = 3; l <= c; ++l) {
            const int k = l - 1;  // degree of the polynomial being formed
            const double pk =
                ((2.0 * k - 1.0) * x * pm1 - (k - 1.0) * pm2) / static_cast<double>(k);
            out[l - 1] = std::sqrt(2.0 * l - 1.0) * pk;
            pm2 = pm1;
            pm1 = pk;
        }
        return;
    }
    // Trigonometric: index 1 -> 1, even l -> sqrt2 cos(2 pi (l/2) t),
    // odd l >= 3 -> sqrt2 sin(2 pi ((l-1)/2) t).
    const double two_pi_t = 2.0 * std::numbers::pi * t;
    const double sqrt2 = std::numbers::sqrt2;
    out[0] = 1.0;
    for (int l = 2; l <= c; ++l) {
        if (l % 2 == 0) {
            out[l - 1] = sqrt2 * std::cos(two_pi_t * (l / 2));
        } else {
            out[l - 1] = sqrt2 * std::sin(two_pi_t * ((l - 1) / 2));
        }
    }
}

std::vector<double> evaluate_basis(const SieveBasis& basis, double t) {
    if (basis.c < 1) throw ArgumentError("basis size c must be >= 1");
    if (!(t >= 0.0 && t <= 1.0)) throw ArgumentError("basis argument t must lie in [0,1]");
    std::vector<double> out(static_cast<std::size_t>(basis.c));
    evaluate_basis_into(basis, t, out.data());
    return out;
}

BasisNorms basis_norms(const SieveBasis& basis, int grid_size) {
    if (basis.c < 1) throw ArgumentError("basis size c must be >= 1");
    if (grid_size < 2) throw ArgumentError("basis_norms grid_size must be >= 2");
    std::vector<double> vals(static_cast<std::size_t>(basis.c));
    BasisNorms norms{0.0, 0.0};
    for (int g = 0; g < grid_size; ++g) {
        const double t = static_cast<double>(g) / static_cast<double>(grid_size - 1);
        evaluate_basis_into(basis, t, vals.data());
        double sumsq = 0.0;
        for (double v : vals) {
            norms.xi = std::max(norms.xi, std::abs(v));
            sumsq += v * v;
        }
        norms.zeta = std::max(norms.zeta, std::sqrt(sumsq));
    }
    return norms;
}

} // namespace tvclass
