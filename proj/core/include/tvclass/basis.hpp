#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tvclass {

enum class BasisFamily {
    /// alpha_l(t) = sqrt(2l-1) * P_{l-1}(2t-1): Legendre polynomials mapped
    /// to [0,1] and scaled to unit L2 norm.
    NormalizedLegendre,
    /// {1, sqrt2 cos(2 pi t), sqrt2 sin(2 pi t), sqrt2 cos(4 pi t), ...}
    /// truncated to the first c entries.
    NormalizedTrigonometric,
};

std::string family_name(BasisFamily family);
std::optional<BasisFamily> parse_family(const std::string& text);

/// A finite orthonormal family on [0,1] used to expand each time-varying AR
/// coefficient function. c >= 1 is the number of functions kept.
struct SieveBasis {
    BasisFamily family = BasisFamily::NormalizedLegendre;
    int c = 1;
};

/// Writes alpha_1(t)..alpha_c(t) into out[0..c). t must lie in [0,1] and out
/// must have room for c values. Hot path: no allocation, no checks beyond
/// debug asserts.
void evaluate_basis_into(const SieveBasis& basis, double t, double* out);

/// Convenience wrapper returning the c values. Throws ArgumentError when
/// c < 1 or t is outside [0,1].
std::vector<double> evaluate_basis(const SieveBasis& basis, double t);

struct BasisNorms {
    double xi;    ///< max over grid points and l of |alpha_l(t)|
    double zeta;  ///< max over grid points of sqrt(sum_l alpha_l(t)^2)
};

/// Sup norms of the family measured on a uniform grid of grid_size >= 2
/// points spanning [0,1] (endpoints included).
BasisNorms basis_norms(const SieveBasis& basis, int grid_size);

} // namespace tvclass
