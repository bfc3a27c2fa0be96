#include "tvclass/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tvclass/errors.hpp"
#include "tvclass/parallel.hpp"
#include "tvclass/rng.hpp"
#include "tvclass/stationarity.hpp"

namespace tvclass {

std::string mode_name(ClassifierMode mode) {
    return mode == ClassifierMode::Nonstationary ? "nonstationary" : "stationary_fallback";
}

std::optional<ClassifierMode> parse_mode(const std::string& text) {
    if (text == "nonstationary") return ClassifierMode::Nonstationary;
    if (text == "stationary_fallback") return ClassifierMode::StationaryFallback;
    return std::nullopt;
}

namespace {

unsigned resolve_threads(const TrainConfig& config) {
    return config.threads != 0 ? config.threads : default_threads();
}

void check_features(const std::vector<double>& S, const char* cls) {
    if (S.empty()) {
        throw ArgumentError(std::string("class ") + cls + " has no feature values");
    }
    for (double v : S) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ArgumentError(std::string("class ") + cls +
                                " has a negative or non-finite feature value");
        }
    }
}

double linf_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(d);
}

/// Constant AR coefficients of order b (one-function basis: the expansion
/// coefficients are the AR coefficients themselves).
std::vector<double> constant_coefficients(const std::vector<double>& z, int b,
                                          BasisFamily family) {
    const ArFit fit = fit_ols(z, b, 1, family);
    std::vector<double> phi(static_cast<std::size_t>(b));
    for (int j = 1; j <= b; ++j) phi[static_cast<std::size_t>(j - 1)] = fit.beta(j - 1);
    return phi;
}

std::vector<double> class_mean_vectors(const std::vector<std::vector<double>>& vecs,
                                       const std::vector<std::size_t>& members) {
    std::vector<double> mean(vecs[members.front()].size(), 0.0);
    for (std::size_t idx : members) {
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += vecs[idx][j];
    }
    for (double& v : mean) v /= static_cast<double>(members.size());
    return mean;
}

PrescreenModel build_prescreen_model(const std::vector<std::vector<double>>& values,
                                     const std::vector<std::size_t>& xs,
                                     const std::vector<std::size_t>& ys,
                                     double bandwidth, double margin, int grid_size) {
    PrescreenModel pm;
    pm.bandwidth = bandwidth;
    pm.margin = margin;
    std::vector<std::vector<double>> curves(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        curves[i] = smoothed_mean_curve(values[i], bandwidth, grid_size);
    }
    pm.mean_x = class_mean_vectors(curves, xs);
    pm.mean_y = class_mean_vectors(curves, ys);

    std::vector<double> dist;
    dist.reserve(values.size());
    for (std::size_t i : xs) dist.push_back(linf_distance(curves[i], pm.mean_x));
    for (std::size_t i : ys) dist.push_back(linf_distance(curves[i], pm.mean_y));
    double mean = 0.0;
    for (double d : dist) mean += d;
    mean /= static_cast<double>(dist.size());
    double ss = 0.0;
    for (double d : dist) ss += (d - mean) * (d - mean);
    pm.distance_spread =
        dist.size() > 1 ? std::sqrt(ss / static_cast<double>(dist.size() - 1)) : 0.0;
    return pm;
}

/// nullopt when the mean curves are too alike to call.
std::optional<ClassLabel> apply_prescreen(const PrescreenModel& pm,
                                          const std::vector<double>& z, double* d_x,
                                          double* d_y) {
    const std::vector<double> curve =
        smoothed_mean_curve(z, pm.bandwidth, static_cast<int>(pm.mean_x.size()));
    const double dx = linf_distance(curve, pm.mean_x);
    const double dy = linf_distance(curve, pm.mean_y);
    if (d_x) *d_x = dx;
    if (d_y) *d_y = dy;
    if (std::abs(dx - dy) > pm.margin * pm.distance_spread) {
        return dx < dy ? ClassLabel::X : ClassLabel::Y;
    }
    return std::nullopt;
}

} // namespace

ThresholdGrid threshold_grid(const std::vector<double>& S_x,
                             const std::vector<double>& S_y, int M) {
    if (M < 1) throw ArgumentError("threshold grid resolution M must be >= 1");
    check_features(S_x, "X");
    check_features(S_y, "Y");
    double mn = std::numeric_limits<double>::infinity();
    double mx = 0.0;
    for (const auto* S : {&S_x, &S_y}) {
        for (double v : *S) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
    }
    ThresholdGrid grid;
    grid.C1 = 0.5 * mn;
    grid.C2 = 2.0 * mx;
    grid.points.resize(static_cast<std::size_t>(M) + 1);
    for (int i = 1; i <= M + 1; ++i) {
        grid.points[static_cast<std::size_t>(i - 1)] =
            grid.C1 + (grid.C2 - grid.C1) * static_cast<double>(i - 1) / static_cast<double>(M);
    }
    return grid;
}

ThresholdChoice select_threshold(const std::vector<double>& S_x,
                                 const std::vector<double>& S_y, int M) {
    const ThresholdGrid grid = threshold_grid(S_x, S_y, M);
    const double med_x = class_median(S_x);
    const double med_y = class_median(S_y);
    if (med_x == med_y) {
        throw IndeterminateClassesError(
            "class feature medians coincide; no threshold separates the classes");
    }
    ThresholdChoice choice;
    choice.orientation = med_x < med_y ? Orientation::XBelow : Orientation::XAbove;
    choice.C1 = grid.C1;
    choice.C2 = grid.C2;
    const std::vector<double>& low =
        choice.orientation == Orientation::XBelow ? S_x : S_y;
    const std::vector<double>& high =
        choice.orientation == Orientation::XBelow ? S_y : S_x;
    const double total = static_cast<double>(low.size() + high.size());
    // Search the interior grid points (the endpoints C1 = min/2 and C2 =
    // 2*max never beat an interior point at usable resolutions, and the
    // stored threshold is guaranteed to sit strictly inside (C1, C2)).
    const std::size_t first = grid.points.size() > 2 ? 1 : 0;
    const std::size_t last =
        grid.points.size() > 2 ? grid.points.size() - 1 : grid.points.size();
    double best = -1.0;
    for (std::size_t i = first; i < last; ++i) {
        const double theta = grid.points[i];
        int correct = 0;
        for (double s : low) correct += (s <= theta) ? 1 : 0;
        for (double s : high) correct += (s > theta) ? 1 : 0;
        const double acc = static_cast<double>(correct) / total;
        if (acc > best) {  // strict: keeps the smallest maximizer
            best = acc;
            choice.threshold = theta;
        }
    }
    choice.training_accuracy = best;
    return choice;
}

std::vector<double> smoothed_mean_curve(const std::vector<double>& z, double bandwidth,
                                        int grid_size) {
    const int n = static_cast<int>(z.size());
    if (n < 1) throw DataError("empty series");
    if (!(bandwidth > 0.0)) throw ArgumentError("bandwidth must be > 0");
    if (grid_size < 2) throw ArgumentError("grid_size must be >= 2");
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + z[static_cast<std::size_t>(i)];
    const int halfw = std::max(1L, std::lround(bandwidth * n / 2.0));
    std::vector<double> out(static_cast<std::size_t>(grid_size));
    for (int g = 0; g < grid_size; ++g) {
        const double u = static_cast<double>(g) / static_cast<double>(grid_size - 1);
        const int center = std::clamp(static_cast<int>(std::lround(u * n)), 1, n);
        const int lo = std::max(1, center - halfw);
        const int hi = std::min(n, center + halfw);
        out[static_cast<std::size_t>(g)] =
            (prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo - 1)]) /
            static_cast<double>(hi - lo + 1);
    }
    return out;
}

std::optional<ClassLabel> mean_prescreen(const std::vector<TimeSeriesRecord>& cohort,
                                         const TimeSeriesRecord& test, double bandwidth,
                                         double margin, int grid_size) {
    std::vector<std::vector<double>> values;
    std::vector<std::size_t> xs, ys;
    values.reserve(cohort.size());
    for (const TimeSeriesRecord& rec : cohort) {
        if (!rec.label) throw DataError("mean prescreen needs labeled training series");
        (rec.label == ClassLabel::X ? xs : ys).push_back(values.size());
        values.push_back(rec.values);
    }
    if (xs.empty() || ys.empty()) {
        throw DataError("mean prescreen needs at least one series per class");
    }
    const PrescreenModel pm =
        build_prescreen_model(values, xs, ys, bandwidth, margin, grid_size);
    return apply_prescreen(pm, test.values, nullptr, nullptr);
}

TrainingResult train(const std::vector<TimeSeriesRecord>& cohort, const TrainConfig& config) {
    if (config.threshold_grid_M < 1) throw ArgumentError("threshold grid M must be >= 1");
    if (config.feature_grid < 2) throw ArgumentError("feature grid must have >= 2 points");
    if (config.pretest && config.bootstrap_B < 1) {
        throw ArgumentError("bootstrap replicate count must be >= 1");
    }
    if (config.pretest && !(config.pretest_level > 0.0 && config.pretest_level < 1.0)) {
        throw ArgumentError("pretest level must lie in (0,1)");
    }

    const std::size_t N = cohort.size();
    std::vector<std::size_t> xs, ys;
    for (std::size_t i = 0; i < N; ++i) {
        if (!cohort[i].label) {
            throw DataError("training series '" + cohort[i].id + "' has no class label");
        }
        (*cohort[i].label == ClassLabel::X ? xs : ys).push_back(i);
    }
    if (xs.empty() || ys.empty()) {
        throw DataError("training needs at least one series in each class");
    }

    const unsigned threads = resolve_threads(config);
    if (config.b_grid.empty() || config.c_grid.empty()) {
        throw ArgumentError("order grids must be non-empty");
    }
    const std::size_t min_len =
        static_cast<std::size_t>(
            *std::max_element(config.b_grid.begin(), config.b_grid.end())) *
            static_cast<std::size_t>(
                *std::max_element(config.c_grid.begin(), config.c_grid.end())) +
        2;
    std::vector<std::vector<double>> values(N);
    for (std::size_t i = 0; i < N; ++i) {
        require_finite(cohort[i]);
        if (cohort[i].values.size() < min_len) {
            throw DataError("series '" + cohort[i].id +
                            "' is too short for the largest (b, c) grid cell");
        }
        values[i] = config.standardize ? standardized(cohort[i]).values : cohort[i].values;
    }

    // Per-series order selection and sieve fit.
    std::vector<CvSelection> sel(N);
    std::vector<ArFit> fits(N);
    parallel_for(N, threads, [&](std::size_t i) {
        try {
            sel[i] = select_order_cv(values[i], config.b_grid, config.c_grid,
                                     config.basis_family);
            fits[i] = fit_ols(values[i], sel[i].b, sel[i].c, config.basis_family);
        } catch (const DataError& e) {
            throw DataError("series '" + cohort[i].id + "': " + e.what());
        }
    });

    TrainingResult result;
    TrainedClassifier& model = result.model;
    model.config = config;
    model.config.threads = config.threads;  // echo as given; 0 stays "auto"

    // Stationarity pretest: the threshold classifier is only meaningful if
    // some coefficient function actually moves. X series first, then Y;
    // stop at the first rejection (any rejection keeps the main mode).
    bool all_retained = true;
    if (config.pretest) {
        std::vector<std::size_t> order;
        const std::size_t limit = config.pretest_subsample > 0
                                      ? static_cast<std::size_t>(config.pretest_subsample)
                                      : N;
        for (std::size_t k = 0; k < xs.size() && k < limit; ++k) order.push_back(xs[k]);
        for (std::size_t k = 0; k < ys.size() && k < limit; ++k) order.push_back(ys[k]);
        for (std::size_t i : order) {
            const StationarityResult r = stationarity_test(
                values[i], sel[i].b, sel[i].c, config.basis_family, config.bootstrap_B,
                derive_stream(config.seed, static_cast<std::uint64_t>(i)),
                config.feature_grid, threads);
            if (r.p_value < config.pretest_level) {
                all_retained = false;
                result.pretest_rejected = true;
                break;
            }
        }
    } else {
        all_retained = false;
    }
    model.mode = all_retained ? ClassifierMode::StationaryFallback
                              : ClassifierMode::Nonstationary;

    result.features.resize(N);

    if (model.mode == ClassifierMode::Nonstationary) {
        std::vector<std::vector<double>> D(N);
        parallel_for(N, threads, [&](std::size_t i) {
            D[i] = max_deviations(fits[i], config.feature_grid);
        });

        std::vector<int> orders_x, orders_y;
        for (std::size_t i : xs) orders_x.push_back(sel[i].b);
        for (std::size_t i : ys) orders_y.push_back(sel[i].b);
        const int bstar_x = pooled_min_order(orders_x);
        const int bstar_y = pooled_min_order(orders_y);
        model.pooled_b_star = std::min(bstar_x, bstar_y);

        std::vector<double> S_x, S_y;
        for (std::size_t i = 0; i < N; ++i) {
            const bool is_x = *cohort[i].label == ClassLabel::X;
            const AggregatedFeature agg = aggregate_feature(D[i], is_x ? bstar_x : bstar_y);
            (is_x ? S_x : S_y).push_back(agg.S);
            FeatureSet& f = result.features[i];
            f.series_id = cohort[i].id;
            f.label = label_char(*cohort[i].label);
            f.b = sel[i].b;
            f.c = sel[i].c;
            f.D = D[i];
            f.S = agg.S;
            f.range = agg.range;
        }

        model.S_bar_x = class_median(S_x);
        model.S_bar_y = class_median(S_y);
        const ThresholdChoice choice =
            select_threshold(S_x, S_y, config.threshold_grid_M);
        model.orientation = choice.orientation;
        model.threshold = choice.threshold;
        model.C1 = choice.C1;
        model.C2 = choice.C2;
        model.training_accuracy = choice.training_accuracy;
    } else {
        // Every series looks stationary: constant-coefficient nearest-mean
        // classifier at the largest selected constant order.
        const std::vector<int> c1_grid{1};
        std::vector<int> orders(N);
        parallel_for(N, threads, [&](std::size_t i) {
            orders[i] =
                select_order_cv(values[i], config.b_grid, c1_grid, config.basis_family).b;
        });
        model.stationary_b = *std::max_element(orders.begin(), orders.end());

        std::vector<std::vector<double>> phi(N);
        parallel_for(N, threads, [&](std::size_t i) {
            phi[i] = constant_coefficients(values[i], model.stationary_b,
                                           config.basis_family);
        });
        model.stationary_phi_x = class_mean_vectors(phi, xs);
        model.stationary_phi_y = class_mean_vectors(phi, ys);

        int correct = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double dx = euclidean_distance(phi[i], model.stationary_phi_x);
            const double dy = euclidean_distance(phi[i], model.stationary_phi_y);
            const ClassLabel won = dx <= dy ? ClassLabel::X : ClassLabel::Y;
            correct += (won == *cohort[i].label) ? 1 : 0;

            FeatureSet& f = result.features[i];
            f.series_id = cohort[i].id;
            f.label = label_char(*cohort[i].label);
            f.b = orders[i];
            f.c = 1;
        }
        model.training_accuracy = static_cast<double>(correct) / static_cast<double>(N);
    }

    if (config.prescreen) {
        model.prescreen = build_prescreen_model(values, xs, ys, config.prescreen_bandwidth,
                                                config.prescreen_margin, config.feature_grid);
    }
    return result;
}

Prediction predict(const TrainedClassifier& model, const TimeSeriesRecord& record) {
    const TrainConfig& config = model.config;
    require_finite(record);
    const std::vector<double> z =
        config.standardize ? standardized(record).values : record.values;

    Prediction pred;
    pred.series_id = record.id;
    pred.mode = model.mode;

    if (model.mode == ClassifierMode::Nonstationary) {
        const std::size_t min_len =
            static_cast<std::size_t>(
                *std::max_element(config.b_grid.begin(), config.b_grid.end())) *
                static_cast<std::size_t>(
                    *std::max_element(config.c_grid.begin(), config.c_grid.end())) +
            2;
        if (z.size() < min_len) {
            throw DataError("series '" + record.id +
                            "' is too short for the model's (b, c) grid");
        }
    }

    if (model.prescreen) {
        const std::optional<ClassLabel> early =
            apply_prescreen(*model.prescreen, z, &pred.d_x, &pred.d_y);
        if (early) {
            pred.label = *early;
            pred.flags.push_back("prescreen");
            return pred;
        }
    }

    if (model.mode == ClassifierMode::Nonstationary) {
        CvSelection sel;
        ArFit fit;
        try {
            sel = select_order_cv(z, config.b_grid, config.c_grid, config.basis_family);
            fit = fit_ols(z, sel.b, sel.c, config.basis_family);
        } catch (const DataError& e) {
            throw DataError("series '" + record.id + "': " + e.what());
        }
        pred.b = sel.b;
        pred.c = sel.c;
        const std::vector<double> D = max_deviations(fit, config.feature_grid);
        int b_star = model.pooled_b_star;
        if (b_star > sel.b) {
            b_star = sel.b;
            pred.flags.push_back("bstar_clamped");
        }
        pred.S = aggregate_feature(D, b_star).S;
        const bool low_side = pred.S <= model.threshold;
        const bool x_is_low = model.orientation == Orientation::XBelow;
        pred.label = (low_side == x_is_low) ? ClassLabel::X : ClassLabel::Y;
        return pred;
    }

    std::vector<double> phi;
    try {
        phi = constant_coefficients(z, model.stationary_b, config.basis_family);
    } catch (const DataError& e) {
        throw DataError("series '" + record.id + "': " + e.what());
    }
    pred.b = model.stationary_b;
    pred.c = 1;
    pred.d_x = euclidean_distance(phi, model.stationary_phi_x);
    pred.d_y = euclidean_distance(phi, model.stationary_phi_y);
    if (pred.d_x == pred.d_y) {
        pred.label = ClassLabel::X;
        pred.flags.push_back("tie");
    } else {
        pred.label = pred.d_x < pred.d_y ? ClassLabel::X : ClassLabel::Y;
    }
    return pred;
}

StationaryFitResult fit_stationary(const std::vector<TimeSeriesRecord>& cohort,
                                   const TimeSeriesRecord& test,
                                   const TrainConfig& config) {
    const std::size_t N = cohort.size();
    std::vector<std::size_t> xs, ys;
    for (std::size_t i = 0; i < N; ++i) {
        if (!cohort[i].label) {
            throw DataError("training series '" + cohort[i].id + "' has no class label");
        }
        (*cohort[i].label == ClassLabel::X ? xs : ys).push_back(i);
    }
    if (xs.empty() || ys.empty()) {
        throw DataError("training needs at least one series in each class");
    }
    const unsigned threads = resolve_threads(config);

    std::vector<std::vector<double>> values(N + 1);
    for (std::size_t i = 0; i < N; ++i) {
        values[i] = config.standardize ? standardized(cohort[i]).values : cohort[i].values;
    }
    values[N] = config.standardize ? standardized(test).values : test.values;

    const std::vector<int> c1_grid{1};
    std::vector<int> orders(N + 1);
    parallel_for(N + 1, threads, [&](std::size_t i) {
        orders[i] = select_order_cv(values[i], config.b_grid, c1_grid,
                                    config.basis_family).b;
    });

    StationaryFitResult out;
    out.b = *std::max_element(orders.begin(), orders.end());

    std::vector<std::vector<double>> phi(N + 1);
    parallel_for(N + 1, threads, [&](std::size_t i) {
        phi[i] = constant_coefficients(values[i], out.b, config.basis_family);
    });
    out.phi_x = class_mean_vectors(phi, xs);
    out.phi_y = class_mean_vectors(phi, ys);
    out.d_x = euclidean_distance(phi[N], out.phi_x);
    out.d_y = euclidean_distance(phi[N], out.phi_y);
    out.tie = (out.d_x == out.d_y);
    out.label = out.d_x <= out.d_y ? ClassLabel::X : ClassLabel::Y;
    return out;
}

} // namespace tvclass
