#include "tvclass/features.hpp"

#include <algorithm>
#include <cmath>

#include "tvclass/errors.hpp"

namespace tvclass {

double max_deviation(const ArFit& fit, int j, int grid_size) {
    if (j < 1 || j > fit.b) throw ArgumentError("lag index j must lie in [1, b]");
    if (grid_size < 2) throw ArgumentError("feature grid must have >= 2 points");
    double lo = 0.0, hi = 0.0;
    for (int g = 0; g < grid_size; ++g) {
        const double t = static_cast<double>(g) / static_cast<double>(grid_size - 1);
        const double v = eval_phi(fit, j, t);
        if (g == 0) {
            lo = hi = v;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi - lo;
}

std::vector<double> max_deviations(const ArFit& fit, int grid_size) {
    std::vector<double> out(static_cast<std::size_t>(fit.b));
    for (int j = 1; j <= fit.b; ++j) {
        out[static_cast<std::size_t>(j - 1)] = max_deviation(fit, j, grid_size);
    }
    return out;
}

int pooled_min_order(const std::vector<int>& orders) {
    if (orders.empty()) throw ArgumentError("pooled order of an empty set");
    int b = orders.front();
    for (int v : orders) {
        if (v < 1) throw ArgumentError("orders must be >= 1");
        b = std::min(b, v);
    }
    return b;
}

AggregatedFeature aggregate_feature(const std::vector<double>& D, int b_star) {
    const int b_k = static_cast<int>(D.size());
    if (b_k < 1) throw ArgumentError("empty deviation vector");
    if (b_star < 1 || b_star > b_k) {
        throw ArgumentError("ensemble order b* must lie in [1, b_k]");
    }
    AggregatedFeature out;
    out.range.lo = std::max(b_k - b_star + 1, b_star);
    out.range.hi = b_k;
    out.S = D[static_cast<std::size_t>(out.range.lo - 1)];
    for (int j = out.range.lo + 1; j <= out.range.hi; ++j) {
        out.S = std::max(out.S, D[static_cast<std::size_t>(j - 1)]);
    }
    return out;
}

double class_median(std::vector<double> values) {
    if (values.empty()) throw ArgumentError("median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace tvclass
