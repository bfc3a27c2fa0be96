#pragma once

#include <string>
#include <vector>

#include "tvclass/ar_fit.hpp"

namespace tvclass {

/// Default evaluation grid for coefficient-function ranges: 201 uniform
/// points on [0,1], endpoints included.
inline constexpr int default_feature_grid = 201;

/// D(j) = max - min of the fitted phi_j over a uniform grid of grid_size
/// points on [0,1]. A flat (time-constant) coefficient gives exactly 0.
double max_deviation(const ArFit& fit, int j, int grid_size = default_feature_grid);

/// All of D(1)..D(b) for one fit.
std::vector<double> max_deviations(const ArFit& fit, int grid_size = default_feature_grid);

/// Ensemble order b* = the minimum of the per-series selected orders.
int pooled_min_order(const std::vector<int>& orders);

struct AggregateRange {
    int lo = 1;  ///< first lag entering the max
    int hi = 1;  ///< last lag entering the max (= the series' own order)
};

struct AggregatedFeature {
    double S = 0.0;
    AggregateRange range;
};

/// S = max of D(j) over j in [max(b_k - b* + 1, b*), b_k], where b_k is the
/// series' own selected order (D.size()) and b* the ensemble order. Requires
/// 1 <= b* <= b_k; the window is then never empty.
AggregatedFeature aggregate_feature(const std::vector<double>& D, int b_star);

/// Median with the even-count convention mean-of-central-two. Input must be
/// non-empty; it is copied and sorted internally.
double class_median(std::vector<double> values);

/// Per-series feature bundle as exported by training / the feature command.
struct FeatureSet {
    std::string series_id;
    char label = '?';  ///< 'X', 'Y', or '?' when unlabeled
    int b = 0;         ///< selected AR order
    int c = 0;         ///< selected basis size
    std::vector<double> D;
    double S = 0.0;
    AggregateRange range;
};

} // namespace tvclass
