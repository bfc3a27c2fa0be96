#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tvclass/classifier.hpp"
#include "tvclass/errors.hpp"
#include "tvclass/rng.hpp"
#include "tvclass/simulate.hpp"

using namespace tvclass;
using Catch::Approx;

namespace {

std::vector<double> ar1_path(double a, int n, std::uint64_t seed) {
    Rng rng(seed);
    double prev = 0.0;
    for (int i = 0; i < 100; ++i) prev = a * prev + rng.next_normal();
    std::vector<double> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        prev = a * prev + rng.next_normal();
        z[static_cast<std::size_t>(i)] = prev;
    }
    return z;
}

std::vector<TimeSeriesRecord> ar1_cohort(double a_x, double a_y, int per_class, int n,
                                         std::uint64_t base) {
    std::vector<TimeSeriesRecord> cohort;
    for (int k = 0; k < 2 * per_class; ++k) {
        TimeSeriesRecord rec;
        const bool is_x = k < per_class;
        rec.values = ar1_path(is_x ? a_x : a_y, n, derive_stream(base, static_cast<std::uint64_t>(k)));
        rec.label = is_x ? ClassLabel::X : ClassLabel::Y;
        rec.id = std::string(is_x ? "X" : "Y") + std::to_string(k);
        cohort.push_back(std::move(rec));
    }
    return cohort;
}

/// Reference accuracy of a given threshold under the orientation convention:
/// the lower-median class is correct at S <= theta, the other at S > theta.
double accuracy_at(const std::vector<double>& S_low, const std::vector<double>& S_high,
                   double theta) {
    int correct = 0;
    for (double s : S_low) correct += (s <= theta);
    for (double s : S_high) correct += (s > theta);
    return static_cast<double>(correct) / static_cast<double>(S_low.size() + S_high.size());
}

/// Exhaustive optimum over all distinct classifications: midpoints between
/// consecutive pooled order statistics plus cuts below and above everything.
double best_possible_accuracy(const std::vector<double>& S_low,
                              const std::vector<double>& S_high) {
    std::vector<double> pool = S_low;
    pool.insert(pool.end(), S_high.begin(), S_high.end());
    std::sort(pool.begin(), pool.end());
    std::vector<double> cuts{pool.front() - 1.0, pool.back() + 1.0};
    for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
        cuts.push_back(0.5 * (pool[i] + pool[i + 1]));
    }
    // Values themselves matter too: correctness uses <=, so a cut exactly at
    // a feature differs from one just below it.
    for (double v : pool) cuts.push_back(v);
    double best = 0.0;
    for (double t : cuts) best = std::max(best, accuracy_at(S_low, S_high, t));
    return best;
}

} // namespace

TEST_CASE("threshold grid spans half the minimum to twice the maximum", "[classifier]") {
    const auto g = threshold_grid({1.0, 2.0}, {3.0, 4.0}, 14);
    REQUIRE(g.C1 == Approx(0.5));
    REQUIRE(g.C2 == Approx(8.0));
    REQUIRE(g.points.size() == 15);
    REQUIRE(g.points.front() == Approx(0.5));
    REQUIRE(g.points.back() == Approx(8.0));
    for (std::size_t i = 0; i < g.points.size(); ++i) {
        REQUIRE(g.points[i] == Approx(0.5 + 7.5 * static_cast<double>(i) / 14.0));
    }
}

TEST_CASE("threshold grid handles equal features and tiny grids", "[classifier]") {
    const auto g = threshold_grid({2.0, 2.0}, {2.0}, 4);
    REQUIRE(g.C1 == Approx(1.0));
    REQUIRE(g.C2 == Approx(4.0));
    REQUIRE(g.points.size() == 5);

    const auto two = threshold_grid({1.0}, {3.0}, 1);
    REQUIRE(two.points.size() == 2);
    REQUIRE(two.points.front() == Approx(0.5));
    REQUIRE(two.points.back() == Approx(6.0));
}

TEST_CASE("threshold grid argument validation", "[classifier]") {
    REQUIRE_THROWS_AS(threshold_grid({}, {1.0}, 10), ArgumentError);
    REQUIRE_THROWS_AS(threshold_grid({1.0}, {}, 10), ArgumentError);
    REQUIRE_THROWS_AS(threshold_grid({1.0}, {2.0}, 0), ArgumentError);
    REQUIRE_THROWS_AS(threshold_grid({-0.5}, {2.0}, 10), ArgumentError);
    REQUIRE_THROWS_AS(
        threshold_grid({std::numeric_limits<double>::quiet_NaN()}, {2.0}, 10),
        ArgumentError);
}

TEST_CASE("separable classes are classified perfectly", "[classifier]") {
    const std::vector<double> S_x{0.1, 0.2};
    const std::vector<double> S_y{1.0, 1.2};
    const auto choice = select_threshold(S_x, S_y, 1000);
    REQUIRE(choice.orientation == Orientation::XBelow);
    REQUIRE(choice.training_accuracy == Approx(1.0));
    REQUIRE(choice.threshold >= 0.2);
    REQUIRE(choice.threshold < 1.0);
    REQUIRE(choice.C1 == Approx(0.05));
    REQUIRE(choice.C2 == Approx(2.4));
    REQUIRE(choice.threshold > choice.C1);
    REQUIRE(choice.threshold < choice.C2);
    // Smallest maximizer: at most one grid step above the smallest valid cut.
    REQUIRE(choice.threshold <= 0.2 + (choice.C2 - choice.C1) / 1000.0 + 1e-12);

    const auto flipped = select_threshold(S_y, S_x, 1000);
    REQUIRE(flipped.orientation == Orientation::XAbove);
    REQUIRE(flipped.training_accuracy == Approx(1.0));
}

TEST_CASE("overlapping classes settle at the best achievable split", "[classifier]") {
    const std::vector<double> S_x{0.1, 1.5};
    const std::vector<double> S_y{1.0, 1.2};
    const auto choice = select_threshold(S_x, S_y, 2000);
    REQUIRE(choice.orientation == Orientation::XBelow);  // medians 0.8 vs 1.1
    REQUIRE(choice.training_accuracy == Approx(0.75));
    // The 3/4 plateau is [0.1, 1.0); the smallest maximizer sits at its foot.
    REQUIRE(choice.threshold >= 0.1);
    REQUIRE(choice.threshold < 0.11);
}

TEST_CASE("coincident class medians are indeterminate", "[classifier]") {
    REQUIRE_THROWS_AS(select_threshold({1.0, 2.0}, {2.0, 1.0}, 100),
                      IndeterminateClassesError);
    REQUIRE_THROWS_AS(select_threshold({0.0}, {0.0}, 100), IndeterminateClassesError);
}

TEST_CASE("grid search attains the exhaustive optimum on lattice features",
          "[classifier]") {
    // Features on a 0.1 lattice: plateaus are much wider than the grid step,
    // so the interior grid reaches every distinct classification.
    Rng rng(24601);
    for (int trial = 0; trial < 100; ++trial) {
        const int nx = 2 + static_cast<int>(rng.next_u64() % 6);
        const int ny = 2 + static_cast<int>(rng.next_u64() % 6);
        std::vector<double> S_x(static_cast<std::size_t>(nx));
        std::vector<double> S_y(static_cast<std::size_t>(ny));
        for (double& s : S_x) s = 0.1 * static_cast<double>(1 + rng.next_u64() % 50);
        for (double& s : S_y) s = 0.1 * static_cast<double>(1 + rng.next_u64() % 50);
        ThresholdChoice choice;
        try {
            choice = select_threshold(S_x, S_y, 10000);
        } catch (const IndeterminateClassesError&) {
            continue;  // coincident medians: no orientation is defined
        }
        const bool x_low = choice.orientation == Orientation::XBelow;
        const auto& low = x_low ? S_x : S_y;
        const auto& high = x_low ? S_y : S_x;
        const double best = best_possible_accuracy(low, high);
        INFO("trial " << trial);
        REQUIRE(choice.training_accuracy == Approx(best));
        REQUIRE(accuracy_at(low, high, choice.threshold) ==
                Approx(choice.training_accuracy));
    }
}

TEST_CASE("doubling every feature doubles the threshold exactly", "[classifier]") {
    // Scaling by a power of two is exact in floating point, so the whole grid
    // scales verbatim and the same index wins.
    const std::vector<double> S_x{0.3, 0.7, 1.1, 0.5};
    const std::vector<double> S_y{1.9, 2.3, 1.7};
    const auto base = select_threshold(S_x, S_y, 500);
    std::vector<double> S_x2 = S_x, S_y2 = S_y;
    for (double& s : S_x2) s *= 2.0;
    for (double& s : S_y2) s *= 2.0;
    const auto scaled = select_threshold(S_x2, S_y2, 500);
    REQUIRE(scaled.training_accuracy == base.training_accuracy);
    REQUIRE(scaled.threshold == 2.0 * base.threshold);
    REQUIRE(scaled.orientation == base.orientation);
}

TEST_CASE("training on clearly nonstationary classes thresholds the features",
          "[classifier][slow]") {
    SimulationSpec tmpl;
    tmpl.model_id = 3;
    tmpl.n = 400;
    const auto cohort = generate_cohort(tmpl, 12, 12, 2026);
    TrainConfig cfg;
    cfg.b_grid = {1, 2};
    cfg.c_grid = {1, 2, 3, 4};
    cfg.pretest = true;
    cfg.pretest_subsample = 2;
    cfg.bootstrap_B = 99;
    cfg.seed = 5150;
    cfg.threads = 1;
    const auto result = train(cohort, cfg);
    REQUIRE(result.model.mode == ClassifierMode::Nonstationary);
    REQUIRE(result.pretest_rejected);
    REQUIRE(result.model.training_accuracy >= 0.9);
    REQUIRE(result.model.C1 < result.model.threshold);
    REQUIRE(result.model.threshold < result.model.C2);
    REQUIRE(result.features.size() == 24);
    REQUIRE(result.model.pooled_b_star >= 1);

    // Held-out series classify correctly.
    SimulationSpec test = tmpl;
    test.class_label = ClassLabel::X;
    test.seed = derive_stream(777, 0);
    TimeSeriesRecord tx = generate_series(test);
    tx.id = "t-x";
    const auto px = predict(result.model, tx);
    REQUIRE(px.mode == ClassifierMode::Nonstationary);
    REQUIRE(px.label == ClassLabel::X);

    test.class_label = ClassLabel::Y;
    test.seed = derive_stream(777, 100);
    TimeSeriesRecord ty = generate_series(test);
    ty.id = "t-y";
    const auto py = predict(result.model, ty);
    REQUIRE(py.label == ClassLabel::Y);
}

TEST_CASE("training is deterministic and thread invariant", "[classifier][slow]") {
    SimulationSpec tmpl;
    tmpl.model_id = 1;
    tmpl.delta = 0.3;
    tmpl.n = 300;
    const auto cohort = generate_cohort(tmpl, 6, 6, 11);
    TrainConfig cfg;
    cfg.b_grid = {1, 2};
    cfg.c_grid = {1, 2, 3};
    cfg.pretest = false;
    cfg.threads = 1;
    const auto a = train(cohort, cfg);
    cfg.threads = 3;
    const auto b = train(cohort, cfg);
    REQUIRE(a.model.threshold == b.model.threshold);
    REQUIRE(a.model.training_accuracy == b.model.training_accuracy);
    REQUIRE(a.model.S_bar_x == b.model.S_bar_x);
    REQUIRE(a.model.S_bar_y == b.model.S_bar_y);
    REQUIRE(a.features.size() == b.features.size());
    for (std::size_t i = 0; i < a.features.size(); ++i) {
        REQUIRE(a.features[i].S == b.features[i].S);
        REQUIRE(a.features[i].b == b.features[i].b);
        REQUIRE(a.features[i].c == b.features[i].c);
    }
}

TEST_CASE("all-stationary training falls back to nearest class mean",
          "[classifier][slow]") {
    const auto cohort = ar1_cohort(0.2, 0.7, 4, 600, 100);
    TrainConfig cfg;
    cfg.b_grid = {1, 2};
    cfg.c_grid = {1, 2, 3};
    cfg.pretest = true;
    cfg.pretest_subsample = 2;
    cfg.bootstrap_B = 99;
    cfg.seed = 107;
    cfg.threads = 1;
    const auto result = train(cohort, cfg);
    REQUIRE(result.model.mode == ClassifierMode::StationaryFallback);
    REQUIRE_FALSE(result.pretest_rejected);
    REQUIRE(result.model.training_accuracy == Approx(1.0));
    REQUIRE(result.model.stationary_b >= 1);
    REQUIRE(result.model.stationary_phi_x.size() ==
            static_cast<std::size_t>(result.model.stationary_b));
    // The leading mean coefficients approximate the true AR parameters.
    REQUIRE(result.model.stationary_phi_x[0] == Approx(0.2).margin(0.15));
    REQUIRE(result.model.stationary_phi_y[0] == Approx(0.7).margin(0.15));

    TimeSeriesRecord tx;
    tx.id = "hold-x";
    tx.values = ar1_path(0.2, 600, 31);
    const auto px = predict(result.model, tx);
    REQUIRE(px.mode == ClassifierMode::StationaryFallback);
    REQUIRE(px.label == ClassLabel::X);
    REQUIRE(px.d_x < px.d_y);

    TimeSeriesRecord ty;
    ty.id = "hold-y";
    ty.values = ar1_path(0.7, 600, 32);
    const auto py = predict(result.model, ty);
    REQUIRE(py.label == ClassLabel::Y);
}

TEST_CASE("disabling the pretest forces the threshold path", "[classifier][slow]") {
    const auto cohort = ar1_cohort(0.1, 0.8, 3, 500, 4090);
    TrainConfig cfg;
    cfg.b_grid = {1};
    cfg.c_grid = {1, 2};
    cfg.pretest = false;
    cfg.threads = 1;
    try {
        const auto result = train(cohort, cfg);
        REQUIRE(result.model.mode == ClassifierMode::Nonstationary);
        REQUIRE_FALSE(result.pretest_rejected);
    } catch (const IndeterminateClassesError&) {
        // Also legitimate: stationary data can produce all-flat fits with
        // coincident zero medians.
        SUCCEED();
    }
}

TEST_CASE("a single series per class is enough to train", "[classifier][slow]") {
    SimulationSpec tmpl;
    tmpl.model_id = 3;
    tmpl.n = 300;
    const auto cohort = generate_cohort(tmpl, 1, 1, 906);
    TrainConfig cfg;
    cfg.b_grid = {1, 2};
    cfg.c_grid = {1, 2, 3};
    cfg.pretest = false;
    cfg.threads = 1;
    const auto result = train(cohort, cfg);
    REQUIRE(result.model.training_accuracy == Approx(1.0));
    REQUIRE(result.features.size() == 2);
}

TEST_CASE("a feature exactly at the threshold goes to the low-median side",
          "[classifier][slow]") {
    SimulationSpec tmpl;
    tmpl.model_id = 1;
    tmpl.delta = 0.3;
    tmpl.n = 300;
    const auto cohort = generate_cohort(tmpl, 5, 5, 60);
    TrainConfig cfg;
    cfg.b_grid = {1, 2};
    cfg.c_grid = {1, 2, 3};
    cfg.pretest = false;
    cfg.threads = 1;
    const auto result = train(cohort, cfg);
    REQUIRE(result.model.mode == ClassifierMode::Nonstationary);

    SimulationSpec one = tmpl;
    one.class_label = ClassLabel::Y;
    one.seed = 8181;
    TimeSeriesRecord rec = generate_series(one);
    rec.id = "probe";
    const auto first = predict(result.model, rec);
    REQUIRE(first.S > 0.0);

    TrainedClassifier pinned = result.model;
    pinned.threshold = first.S;  // exactly on the boundary now
    const auto boundary = predict(pinned, rec);
    const ClassLabel low_side = (pinned.orientation == Orientation::XBelow)
                                    ? ClassLabel::X
                                    : ClassLabel::Y;
    REQUIRE(boundary.label == low_side);

    pinned.threshold = std::nextafter(first.S, 0.0);  // just below the feature
    const auto above = predict(pinned, rec);
    const ClassLabel high_side = (pinned.orientation == Orientation::XBelow)
                                     ? ClassLabel::Y
                                     : ClassLabel::X;
    REQUIRE(above.label == high_side);
}

TEST_CASE("smoothed mean curves flatten constants and track level shifts",
          "[classifier]") {
    const std::vector<double> flat(100, 2.5);
    for (double v : smoothed_mean_curve(flat, 0.2, 21)) REQUIRE(v == Approx(2.5));

    std::vector<double> ramp(200);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        ramp[i] = static_cast<double>(i + 1) / 200.0;
    }
    const auto curve = smoothed_mean_curve(ramp, 0.1, 5);
    REQUIRE(curve.size() == 5);
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) REQUIRE(curve[i] < curve[i + 1]);
    REQUIRE(curve.front() == Approx(0.0).margin(0.1));
    REQUIRE(curve.back() == Approx(1.0).margin(0.1));
}

TEST_CASE("mean prescreen separates level-shifted classes", "[classifier]") {
    std::vector<TimeSeriesRecord> cohort;
    Rng rng(3131);
    for (int k = 0; k < 8; ++k) {
        TimeSeriesRecord rec;
        const bool is_x = k < 4;
        rec.values.resize(300);
        for (double& v : rec.values) v = (is_x ? 0.0 : 5.0) + 0.3 * rng.next_normal();
        rec.label = is_x ? ClassLabel::X : ClassLabel::Y;
        rec.id = "s" + std::to_string(k);
        cohort.push_back(std::move(rec));
    }
    TimeSeriesRecord near_y;
    near_y.id = "t";
    near_y.values.assign(300, 5.0);
    REQUIRE(mean_prescreen(cohort, near_y, 0.1, 3.0) == ClassLabel::Y);

    TimeSeriesRecord near_x;
    near_x.id = "t2";
    near_x.values.assign(300, 0.0);
    REQUIRE(mean_prescreen(cohort, near_x, 0.1, 3.0) == ClassLabel::X);

    // An infinite margin never decides, however separated the means are.
    REQUIRE_FALSE(mean_prescreen(cohort, near_y, 0.1,
                                 std::numeric_limits<double>::infinity())
                      .has_value());
}

TEST_CASE("mean prescreen abstains when class means coincide", "[classifier]") {
    std::vector<TimeSeriesRecord> cohort;
    Rng rng(7272);
    for (int k = 0; k < 8; ++k) {
        TimeSeriesRecord rec;
        rec.values.resize(300);
        for (double& v : rec.values) v = rng.next_normal();
        rec.label = (k < 4) ? ClassLabel::X : ClassLabel::Y;
        rec.id = "s" + std::to_string(k);
        cohort.push_back(std::move(rec));
    }
    TimeSeriesRecord test;
    test.id = "t";
    test.values.resize(300);
    for (double& v : test.values) v = rng.next_normal();
    REQUIRE_FALSE(mean_prescreen(cohort, test, 0.1, 3.0).has_value());
}

TEST_CASE("training validates its inputs", "[classifier]") {
    TrainConfig cfg;
    cfg.b_grid = {1};
    cfg.c_grid = {1};
    cfg.pretest = false;
    cfg.threads = 1;

    std::vector<TimeSeriesRecord> one_class;
    TimeSeriesRecord rec;
    rec.values = ar1_path(0.3, 100, 1);
    rec.label = ClassLabel::X;
    rec.id = "x";
    one_class.push_back(rec);
    REQUIRE_THROWS_AS(train(one_class, cfg), DataError);
    REQUIRE_THROWS_AS(train({}, cfg), DataError);

    // Unlabeled training records are unusable.
    rec.label.reset();
    std::vector<TimeSeriesRecord> unlabeled{rec};
    REQUIRE_THROWS_AS(train(unlabeled, cfg), DataError);

    // A series too short for the largest cell is rejected up front.
    auto cohort = ar1_cohort(0.2, 0.7, 1, 200, 5);
    cohort[0].values.resize(8);
    TrainConfig big = cfg;
    big.b_grid = {3};
    big.c_grid = {3};
    REQUIRE_THROWS_AS(train(cohort, big), DataError);
}

TEST_CASE("joint stationary classification includes the test order",
          "[classifier][slow]") {
    const auto cohort = ar1_cohort(0.2, 0.7, 4, 600, 100);
    TrainConfig cfg;
    cfg.b_grid = {1, 2};
    cfg.c_grid = {1, 2, 3};
    cfg.threads = 1;

    TimeSeriesRecord tx;
    tx.id = "t";
    tx.values = ar1_path(0.2, 600, 204);
    const auto rx = fit_stationary(cohort, tx, cfg);
    REQUIRE(rx.label == ClassLabel::X);
    REQUIRE(rx.d_x < rx.d_y);
    REQUIRE(rx.b >= 1);
    REQUIRE(rx.phi_x.size() == static_cast<std::size_t>(rx.b));
    REQUIRE_FALSE(rx.tie);

    TimeSeriesRecord ty;
    ty.id = "t2";
    ty.values = ar1_path(0.7, 600, 205);
    REQUIRE(fit_stationary(cohort, ty, cfg).label == ClassLabel::Y);
}
