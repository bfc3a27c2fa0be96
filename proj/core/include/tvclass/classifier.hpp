#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tvclass/basis.hpp"
#include "tvclass/features.hpp"
#include "tvclass/series.hpp"

namespace tvclass {

enum class ClassifierMode {
    /// Threshold on the max-deviation feature S.
    Nonstationary,
    /// Every training series passed the stationarity pretest: nearest class
    /// mean of constant AR coefficient vectors.
    StationaryFallback,
};

/// Which side of the threshold class X sits on: XBelow when the X median
/// feature is the smaller one.
enum class Orientation { XBelow, XAbove };

std::string mode_name(ClassifierMode mode);
std::optional<ClassifierMode> parse_mode(const std::string& text);

struct TrainConfig {
    BasisFamily basis_family = BasisFamily::NormalizedLegendre;
    std::vector<int> b_grid{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<int> c_grid{1, 2, 3, 4, 5, 6, 7, 8};
    int threshold_grid_M = 1000;  ///< threshold grid has M+1 points
    int feature_grid = default_feature_grid;
    bool standardize = false;
    bool pretest = true;          ///< run the stationarity pretest during training
    double pretest_level = 0.05;
    int pretest_subsample = 0;    ///< 0 = pretest every series, else first k per class
    int bootstrap_B = 200;
    bool prescreen = false;       ///< mean-distance prescreen (opt-in)
    double prescreen_bandwidth = 0.1;
    double prescreen_margin = 3.0;
    std::uint64_t seed = 0;       ///< stream for the pretest bootstrap
    unsigned threads = 0;         ///< 0 = default_threads()
};

struct ThresholdGrid {
    double C1 = 0.0;              ///< 0.5 * min of all training features
    double C2 = 0.0;              ///< 2 * max of all training features
    std::vector<double> points;   ///< C1 + (C2-C1)(i-1)/M, i = 1..M+1
};

/// Candidate thresholds spanning the pooled training features. Both classes
/// must be non-empty, all features finite and >= 0, M >= 1.
ThresholdGrid threshold_grid(const std::vector<double>& S_x,
                             const std::vector<double>& S_y, int M);

struct ThresholdChoice {
    double threshold = 0.0;
    Orientation orientation = Orientation::XBelow;
    double training_accuracy = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
};

/// Grid search for the training-accuracy-maximizing threshold; the smallest
/// maximizer is returned. A series from the lower-median class is counted
/// correct when its S <= theta, one from the higher-median class when
/// S > theta. Throws DataError when the class medians coincide (no
/// orientation exists).
ThresholdChoice select_threshold(const std::vector<double>& S_x,
                                 const std::vector<double>& S_y, int M);

/// Mean-distance prescreen state stored with a trained model.
struct PrescreenModel {
    double bandwidth = 0.1;
    double margin = 3.0;
    std::vector<double> mean_x;  ///< class-average smoothed mean curve on the feature grid
    std::vector<double> mean_y;
    double distance_spread = 0.0;  ///< sample sd of training own-class distances
};

struct TrainedClassifier {
    ClassifierMode mode = ClassifierMode::Nonstationary;
    TrainConfig config;  ///< echo of the configuration used to train

    // Threshold classifier state (mode == Nonstationary).
    Orientation orientation = Orientation::XBelow;
    double S_bar_x = 0.0;
    double S_bar_y = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double threshold = 0.0;
    int pooled_b_star = 0;  ///< min selected order over the training cohort

    // Nearest-mean state (mode == StationaryFallback). The coefficient
    // vectors are class means of constant AR fits at order stationary_b =
    // max selected order over the training cohort.
    std::vector<double> stationary_phi_x;
    std::vector<double> stationary_phi_y;
    int stationary_b = 0;

    double training_accuracy = 0.0;
    std::optional<PrescreenModel> prescreen;
};

struct TrainingResult {
    TrainedClassifier model;
    std::vector<FeatureSet> features;  ///< per training series, cohort order
    /// True when the pretest ran and rejected stationarity somewhere (so the
    /// Nonstationary mode was confirmed rather than assumed).
    bool pretest_rejected = false;
};

/// Trains on a labeled cohort. Both classes must be non-empty and every
/// series long enough for at least one (b, c) cell. Deterministic for a
/// given cohort + config, independent of the thread count.
TrainingResult train(const std::vector<TimeSeriesRecord>& cohort, const TrainConfig& config);

struct Prediction {
    std::string series_id;
    ClassLabel label = ClassLabel::X;
    ClassifierMode mode = ClassifierMode::Nonstationary;
    int b = 0;  ///< order used for this series
    int c = 0;  ///< basis size used for this series
    double S = 0.0;     ///< aggregated feature (Nonstationary mode)
    double d_x = 0.0;   ///< distance to the X mean (StationaryFallback mode)
    double d_y = 0.0;   ///< distance to the Y mean (StationaryFallback mode)
    std::vector<std::string> flags;
};

/// Classifies one series with a trained model. Flags that can appear:
/// "bstar_clamped" (the series' own order was below the stored pooled
/// order), "tie" (equidistant in fallback mode; X is returned),
/// "prescreen" (the mean prescreen decided before any AR fit).
Prediction predict(const TrainedClassifier& model, const TimeSeriesRecord& record);

struct StationaryFitResult {
    int b = 0;  ///< max selected order over cohort and test series together
    std::vector<double> phi_x;  ///< class-mean coefficients at order b
    std::vector<double> phi_y;
    double d_x = 0.0;
    double d_y = 0.0;
    ClassLabel label = ClassLabel::X;
    bool tie = false;
};

/// One-shot nearest-class-mean classification of `test` against the cohort
/// under constant AR coefficients; unlike predict() on a fallback model,
/// the common order includes the test series' own selected order in the
/// max. Uses config.b_grid, basis_family, standardize, threads.
StationaryFitResult fit_stationary(const std::vector<TimeSeriesRecord>& cohort,
                                   const TimeSeriesRecord& test,
                                   const TrainConfig& config);

/// Moving-average estimate of the mean function on a uniform grid of
/// grid_size points; the averaging window spans bandwidth * n observations
/// (at least 1), clamped at the boundaries.
std::vector<double> smoothed_mean_curve(const std::vector<double>& z, double bandwidth,
                                        int grid_size);

/// Standalone mean prescreen: compares the test series' smoothed mean curve
/// to each class's average curve (sup distance). Returns the nearer label
/// when the two distances differ by more than margin times the spread of the
/// training series' own-class distances; nullopt when the means are too
/// alike to call. margin = +infinity never decides.
std::optional<ClassLabel> mean_prescreen(const std::vector<TimeSeriesRecord>& cohort,
                                         const TimeSeriesRecord& test, double bandwidth,
                                         double margin, int grid_size = default_feature_grid);

} // namespace tvclass
