// Command-line front end for the time-varying AR classification pipeline:
// data generation, training, prediction, feature export, stationarity
// testing, population oracles, and Monte-Carlo benchmarking.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvclass/classifier.hpp"
#include "tvclass/errors.hpp"
#include "tvclass/experiment.hpp"
#include "tvclass/io.hpp"
#include "tvclass/parallel.hpp"
#include "tvclass/population.hpp"
#include "tvclass/rng.hpp"
#include "tvclass/simulate.hpp"
#include "tvclass/stationarity.hpp"
#include "tvclass/version.hpp"

namespace {

using namespace tvclass;

/// Accepts "lo:hi" (inclusive range) or a comma-separated list.
std::vector<int> parse_grid(const std::string& text) {
    std::vector<int> out;
    const auto colon = text.find(':');
    try {
        if (colon != std::string::npos) {
            const int lo = std::stoi(text.substr(0, colon));
            const int hi = std::stoi(text.substr(colon + 1));
            if (lo < 1 || hi < lo) throw ArgumentError("bad grid range '" + text + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
            return out;
        }
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t comma = std::min(text.find(',', pos), text.size());
            out.push_back(std::stoi(text.substr(pos, comma - pos)));
            pos = comma + 1;
        }
    } catch (const std::logic_error&) {
        throw ArgumentError("cannot parse grid '" + text + "'");
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    try {
        while (pos <= text.size()) {
            const std::size_t comma = std::min(text.find(',', pos), text.size());
            out.push_back(std::stod(text.substr(pos, comma - pos)));
            pos = comma + 1;
        }
    } catch (const std::logic_error&) {
        throw ArgumentError("cannot parse list '" + text + "'");
    }
    return out;
}

/// Mutable mirror of TrainConfig bound to CLI flags; resolved after parse.
struct ConfigFlags {
    std::string basis = "legendre";
    std::string b_grid = "1:8";
    std::string c_grid = "1:8";
    int M = 1000;
    int feature_grid = default_feature_grid;
    std::string standardize = "auto";  // auto | on | off
    std::string pretest = "on";        // on | off
    double pretest_level = 0.05;
    int pretest_subsample = 0;
    int bootstrap_B = 200;
    std::string prescreen = "off";  // on | off
    double prescreen_bandwidth = 0.1;
    double prescreen_margin = 3.0;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 = TVCLASS_THREADS env or hardware default

    void add_options(CLI::App* cmd, bool with_pretest = true,
                     bool with_seed_threads = true) {
        cmd->add_option("--basis", basis, "Basis family: legendre or trigonometric")
            ->check(CLI::IsMember({"legendre", "trigonometric"}));
        cmd->add_option("--b-grid", b_grid, "AR order grid, e.g. 1:8 or 1,2,4");
        cmd->add_option("--c-grid", c_grid, "Basis size grid, e.g. 1:8 or 1,2,4");
        cmd->add_option("--threshold-grid", M, "Threshold grid resolution M");
        cmd->add_option("--feature-grid", feature_grid,
                        "Grid points for coefficient-function evaluation");
        cmd->add_option("--standardize", standardize,
                        "Standardize each series first: auto, on, off (auto = on for "
                        "external data, off for generated cohorts)")
            ->check(CLI::IsMember({"auto", "on", "off"}));
        if (with_pretest) {
            cmd->add_option("--pretest", pretest, "Stationarity pretest: on or off")
                ->check(CLI::IsMember({"on", "off"}));
            cmd->add_option("--pretest-level", pretest_level, "Pretest significance level");
            cmd->add_option("--pretest-subsample", pretest_subsample,
                            "Pretest only the first k series per class (0 = all)");
        }
        cmd->add_option("--bootstrap", bootstrap_B, "Bootstrap replicates for the pretest");
        cmd->add_option("--prescreen", prescreen, "Mean prescreen: on or off")
            ->check(CLI::IsMember({"on", "off"}));
        cmd->add_option("--prescreen-bandwidth", prescreen_bandwidth,
                        "Mean smoother window as a fraction of n");
        cmd->add_option("--prescreen-margin", prescreen_margin,
                        "Decision margin in units of training-distance spread");
        if (with_seed_threads) {
            cmd->add_option("--seed", seed, "Seed for the pretest bootstrap streams");
            cmd->add_option("--threads", threads, "Worker threads (0 = default)");
        }
    }

    TrainConfig resolve(bool data_is_generated) const {
        TrainConfig cfg;
        cfg.basis_family = *parse_family(basis);
        cfg.b_grid = parse_grid(b_grid);
        cfg.c_grid = parse_grid(c_grid);
        cfg.threshold_grid_M = M;
        cfg.feature_grid = feature_grid;
        cfg.standardize =
            standardize == "auto" ? !data_is_generated : standardize == "on";
        cfg.pretest = pretest == "on";
        cfg.pretest_level = pretest_level;
        cfg.pretest_subsample = pretest_subsample;
        cfg.bootstrap_B = bootstrap_B;
        cfg.prescreen = prescreen == "on";
        cfg.prescreen_bandwidth = prescreen_bandwidth;
        cfg.prescreen_margin = prescreen_margin;
        cfg.seed = seed;
        cfg.threads = threads;
        return cfg;
    }
};

std::vector<TimeSeriesRecord> load_data(const std::string& manifest_path,
                                        bool* generated = nullptr) {
    const Manifest m = read_manifest(manifest_path);
    if (generated) *generated = m.generator.has_value();
    return load_cohort(m, manifest_path);
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    int model = 1;
    int noise = 1;
    double delta = 0.2;
    int n = 1000;
    int n1 = 1;
    int n2 = 1;
    std::uint64_t seed = 0;
    std::string out = ".";
};

void cmd_simulate(const SimulateArgs& a) {
    SimulationSpec tmpl;
    tmpl.model_id = a.model;
    tmpl.noise_id = a.noise;
    tmpl.delta = a.delta;
    tmpl.n = a.n;
    const std::vector<TimeSeriesRecord> cohort =
        generate_cohort(tmpl, a.n1, a.n2, a.seed);

    std::filesystem::create_directories(a.out);
    Manifest manifest;
    manifest.generator = GeneratorInfo{a.model, a.noise, a.delta, a.n, a.seed};
    for (std::size_t k = 0; k < cohort.size(); ++k) {
        const TimeSeriesRecord& rec = cohort[k];
        const std::string file = rec.id + ".csv";
        write_series_csv((std::filesystem::path(a.out) / file).string(), rec);
        ManifestEntry e;
        e.id = rec.id;
        e.path = file;
        e.label = rec.label;
        e.seed = derive_stream(a.seed, static_cast<std::uint64_t>(k));
        manifest.entries.push_back(std::move(e));
    }
    const std::string mpath = (std::filesystem::path(a.out) / "manifest.json").string();
    write_manifest(mpath, manifest);
    std::cout << "wrote " << cohort.size() << " series + manifest to " << a.out << "\n";
}

// ---------------------------------------------------------------------------

struct TrainArgs {
    std::string data;
    std::string out = "model.json";
    std::string features_out;
    ConfigFlags cfg;
};

void cmd_train(const TrainArgs& a) {
    bool generated = false;
    const std::vector<TimeSeriesRecord> cohort = load_data(a.data, &generated);
    const TrainConfig config = a.cfg.resolve(generated);
    const TrainingResult result = train(cohort, config);
    save_model(a.out, result.model);
    if (!a.features_out.empty()) write_features_csv(a.features_out, result.features);
    std::cout << "mode=" << mode_name(result.model.mode)
              << " training_accuracy=" << format_double(result.model.training_accuracy);
    if (result.model.mode == ClassifierMode::Nonstationary) {
        std::cout << " threshold=" << format_double(result.model.threshold)
                  << " pooled_b_star=" << result.model.pooled_b_star;
    }
    std::cout << " model=" << a.out << "\n";
}

// ---------------------------------------------------------------------------

struct PredictArgs {
    std::string model;
    std::string data;
    std::string out = "predictions.csv";
    unsigned threads = 0;
};

void cmd_predict(const PredictArgs& a) {
    TrainedClassifier model = load_model(a.model);
    const std::vector<TimeSeriesRecord> records = load_data(a.data);
    std::vector<Prediction> preds(records.size());
    parallel_for(records.size(), a.threads != 0 ? a.threads : default_threads(),
                 [&](std::size_t i) { preds[i] = predict(model, records[i]); });
    write_predictions_csv(a.out, preds);

    int labeled = 0, correct = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].label) continue;
        ++labeled;
        if (*records[i].label == preds[i].label) ++correct;
    }
    std::cout << "predicted " << records.size() << " series -> " << a.out;
    if (labeled > 0) {
        std::cout << " (accuracy on " << labeled << " labeled: "
                  << format_double(static_cast<double>(correct) / labeled) << ")";
    }
    std::cout << "\n";
}

// ---------------------------------------------------------------------------

struct FeaturesArgs {
    std::string data;
    std::string out = "features.csv";
    std::string cv_out;
    ConfigFlags cfg;
};

void cmd_features(const FeaturesArgs& a) {
    bool generated = false;
    const std::vector<TimeSeriesRecord> records = load_data(a.data, &generated);
    if (records.empty()) throw DataError("no series in manifest");
    const TrainConfig config = a.cfg.resolve(generated);
    const unsigned threads = config.threads != 0 ? config.threads : default_threads();

    const std::size_t N = records.size();
    std::vector<CvSelection> sel(N);
    std::vector<ArFit> fits(N);
    std::vector<std::vector<double>> values(N);
    for (std::size_t i = 0; i < N; ++i) {
        values[i] = config.standardize ? standardized(records[i]).values
                                       : records[i].values;
    }
    parallel_for(N, threads, [&](std::size_t i) {
        sel[i] = select_order_cv(values[i], config.b_grid, config.c_grid,
                                 config.basis_family);
        fits[i] = fit_ols(values[i], sel[i].b, sel[i].c, config.basis_family);
    });

    // Ensemble order: per class when everything is labeled, else pooled
    // over all series.
    const bool all_labeled =
        std::all_of(records.begin(), records.end(),
                    [](const TimeSeriesRecord& r) { return r.label.has_value(); });
    std::vector<int> orders_x, orders_y, orders_all;
    for (std::size_t i = 0; i < N; ++i) {
        orders_all.push_back(sel[i].b);
        if (all_labeled) {
            (records[i].label == ClassLabel::X ? orders_x : orders_y).push_back(sel[i].b);
        }
    }
    const int bstar_all = pooled_min_order(orders_all);
    const int bstar_x = orders_x.empty() ? bstar_all : pooled_min_order(orders_x);
    const int bstar_y = orders_y.empty() ? bstar_all : pooled_min_order(orders_y);

    std::vector<FeatureSet> features(N);
    std::vector<CvExport> cv_tables(N);
    parallel_for(N, threads, [&](std::size_t i) {
        FeatureSet& f = features[i];
        f.series_id = records[i].id;
        f.label = records[i].label ? label_char(*records[i].label) : '?';
        f.b = sel[i].b;
        f.c = sel[i].c;
        f.D = max_deviations(fits[i], config.feature_grid);
        int b_star = bstar_all;
        if (all_labeled) b_star = records[i].label == ClassLabel::X ? bstar_x : bstar_y;
        const AggregatedFeature agg = aggregate_feature(f.D, std::min(b_star, f.b));
        f.S = agg.S;
        f.range = agg.range;
        cv_tables[i] = CvExport{records[i].id, sel[i].table};
    });

    write_features_csv(a.out, features);
    if (!a.cv_out.empty()) write_cv_tables_csv(a.cv_out, cv_tables);
    std::cout << "wrote features for " << N << " series -> " << a.out << "\n";
}

// ---------------------------------------------------------------------------

struct StationarityArgs {
    std::string data;
    std::string out = "stationarity.csv";
    int b = 0;  ///< 0 = per-series CV selection
    int c = 0;
    ConfigFlags cfg;
};

void cmd_test_stationarity(const StationarityArgs& a) {
    bool generated = false;
    const std::vector<TimeSeriesRecord> records = load_data(a.data, &generated);
    if (records.empty()) throw DataError("no series in manifest");
    if ((a.b == 0) != (a.c == 0)) {
        throw ArgumentError("--b and --c must be given together (or neither)");
    }
    const TrainConfig config = a.cfg.resolve(generated);
    const unsigned threads = config.threads != 0 ? config.threads : default_threads();

    const std::size_t N = records.size();
    std::vector<StationarityResult> results(N);
    for (std::size_t i = 0; i < N; ++i) {  // bootstrap inside is the parallel unit
        const std::vector<double> z = config.standardize
                                          ? standardized(records[i]).values
                                          : records[i].values;
        int b = a.b, c = a.c;
        if (b == 0) {
            const CvSelection sel =
                select_order_cv(z, config.b_grid, config.c_grid, config.basis_family);
            b = sel.b;
            c = sel.c;
        }
        results[i] = stationarity_test(z, b, c, config.basis_family, config.bootstrap_B,
                                       derive_stream(config.seed, i), config.feature_grid,
                                       threads);
    }

    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw DataError("cannot open '" + a.out + "' for writing");
    out << "series_id,b,c,statistic,p_value,reject\n";
    int rejections = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const bool reject = results[i].p_value < config.pretest_level;
        rejections += reject ? 1 : 0;
        out << records[i].id << ',' << results[i].b << ',' << results[i].c << ','
            << format_double(results[i].statistic) << ','
            << format_double(results[i].p_value) << ',' << (reject ? 1 : 0) << '\n';
    }
    if (!out) throw DataError("failed writing '" + a.out + "'");
    std::cout << rejections << "/" << N << " series reject stationarity at level "
              << format_double(config.pretest_level) << " -> " << a.out << "\n";
}

// ---------------------------------------------------------------------------

struct BenchmarkArgs {
    int model = 1;
    int noise = 1;
    double delta = 0.2;
    int n = 1000;
    int n1 = 100;
    int n2 = 100;
    int tests = 25;
    int reps = 50;
    std::uint64_t seed = 1;
    std::string out = "benchmark.csv";
    std::string delta_grid, kappa_grid, n_grid;
    unsigned threads = 0;
    ConfigFlags cfg;
};

void cmd_benchmark(const BenchmarkArgs& a) {
    ExperimentSpec base;
    base.model_id = a.model;
    base.noise_id = a.noise;
    base.delta = a.delta;
    base.n = a.n;
    base.train_x = a.n1;
    base.train_y = a.n2;
    base.test_per_class = a.tests;
    base.reps = a.reps;
    base.seed = a.seed;
    base.train = a.cfg.resolve(/*data_is_generated=*/true);

    std::vector<ExperimentSpec> rows;
    if (!a.delta_grid.empty()) {
        for (double d : parse_real_list(a.delta_grid)) {
            ExperimentSpec s = base;
            s.delta = d;
            rows.push_back(s);
        }
    } else if (!a.kappa_grid.empty()) {
        for (double k : parse_real_list(a.kappa_grid)) {
            if (!(k > 0.0)) throw ArgumentError("class-size ratios must be > 0");
            ExperimentSpec s = base;
            s.train_y = std::max(1, static_cast<int>(std::lround(k * a.n1)));
            rows.push_back(s);
        }
    } else if (!a.n_grid.empty()) {
        for (int n : parse_grid(a.n_grid)) {
            ExperimentSpec s = base;
            s.n = n;
            rows.push_back(s);
        }
    } else {
        rows.push_back(base);
    }

    const unsigned threads = a.threads != 0 ? a.threads : default_threads();
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw DataError("cannot open '" + a.out + "' for writing");
    out << "model,noise,delta,n,n1,n2,n_test,reps,mean_accuracy,sd_accuracy\n";
    for (const ExperimentSpec& spec : rows) {
        const CellSummary cell = run_cell(spec, threads);
        out << spec.model_id << ',' << spec.noise_id << ',' << format_double(spec.delta)
            << ',' << spec.n << ',' << spec.train_x << ',' << spec.train_y << ','
            << spec.test_per_class << ',' << spec.reps << ','
            << format_double(cell.mean_accuracy) << ',';
        if (spec.reps > 1) out << format_double(cell.sd_accuracy);
        out << '\n';
        std::cout << "model " << spec.model_id << " delta " << format_double(spec.delta)
                  << " n " << spec.n << " n1 " << spec.train_x << " n2 " << spec.train_y
                  << ": accuracy " << format_double(cell.mean_accuracy);
        if (spec.reps > 1) std::cout << " (" << format_double(cell.sd_accuracy) << ")";
        std::cout << "\n";
    }
    if (!out) throw DataError("failed writing '" + a.out + "'");
}

// ---------------------------------------------------------------------------

struct OracleArgs {
    std::string kind = "stationary_ar1";
    double a0 = 0.5;
    double a1 = 0.0;
    double a2 = 0.0;
    int b = 1;
    int grid = default_feature_grid;
    std::string out;
};

void cmd_oracle(const OracleArgs& a) {
    const auto coef = [&](double t) {
        return a.a0 + a.a1 * std::cos(2.0 * std::numbers::pi * t) +
               a.a2 * std::sin(2.0 * std::numbers::pi * t);
    };
    AutocovModel model;
    if (a.kind == "tv_ma1") {
        model = make_tv_ma1(coef);
    } else if (a.kind == "tv_ar1") {
        model = make_tv_ar1(coef);
    } else if (a.kind == "stationary_ar1") {
        model = make_stationary_ar1(a.a0);
    } else {
        throw ArgumentError("unknown oracle kind '" + a.kind + "'");
    }

    if (!a.out.empty()) {
        std::ofstream out(a.out, std::ios::binary);
        if (!out) throw DataError("cannot open '" + a.out + "' for writing");
        out << "t";
        for (int j = 1; j <= a.b; ++j) out << ",phi" << j;
        out << '\n';
        for (int g = 0; g < a.grid; ++g) {
            const double t = static_cast<double>(g) / static_cast<double>(a.grid - 1);
            const std::vector<double> phi = population_phi(model, a.b, t);
            out << format_double(t);
            for (double v : phi) out << ',' << format_double(v);
            out << '\n';
        }
        if (!out) throw DataError("failed writing '" + a.out + "'");
    }
    for (int j = 1; j <= a.b; ++j) {
        std::cout << "D*(" << j << ") = "
                  << format_double(population_feature(model, a.b, j, a.grid)) << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural classification of locally stationary time series"};
    app.set_version_flag("--version", std::string(version_string));
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "Generate a synthetic labeled cohort");
    c_sim->add_option("--model", sim.model, "Generator model id (1-6)")
        ->check(CLI::Range(1, 6));
    c_sim->add_option("--noise", sim.noise, "Noise profile id (1-3)")->check(CLI::Range(1, 3));
    c_sim->add_option("--delta", sim.delta, "Model-1 class separation");
    c_sim->add_option("--n", sim.n, "Series length");
    c_sim->add_option("--n1", sim.n1, "Class-X series count");
    c_sim->add_option("--n2", sim.n2, "Class-Y series count");
    c_sim->add_option("--seed", sim.seed, "Base seed");
    c_sim->add_option("--out", sim.out, "Output directory");
    c_sim->callback([&] { cmd_simulate(sim); });

    TrainArgs tr;
    CLI::App* c_tr = app.add_subcommand("train", "Train a classifier from a labeled manifest");
    c_tr->add_option("--data", tr.data, "Cohort manifest JSON")->required();
    c_tr->add_option("--out", tr.out, "Model JSON output path");
    c_tr->add_option("--features", tr.features_out, "Also export the per-series feature CSV");
    tr.cfg.add_options(c_tr);
    c_tr->callback([&] { cmd_train(tr); });

    PredictArgs pr;
    CLI::App* c_pr = app.add_subcommand("predict", "Classify series with a trained model");
    c_pr->add_option("--model", pr.model, "Model JSON from train")->required();
    c_pr->add_option("--data", pr.data, "Manifest of series to classify")->required();
    c_pr->add_option("--out", pr.out, "Prediction CSV output path");
    c_pr->add_option("--threads", pr.threads, "Worker threads (0 = default)");
    c_pr->callback([&] { cmd_predict(pr); });

    FeaturesArgs fe;
    CLI::App* c_fe = app.add_subcommand("features", "Export per-series max-deviation features");
    c_fe->add_option("--data", fe.data, "Cohort manifest JSON")->required();
    c_fe->add_option("--out", fe.out, "Feature CSV output path");
    c_fe->add_option("--cv-table", fe.cv_out, "Also export the CV score table CSV");
    fe.cfg.add_options(c_fe, /*with_pretest=*/false);
    c_fe->callback([&] { cmd_features(fe); });

    StationarityArgs st;
    CLI::App* c_st = app.add_subcommand("test-stationarity",
                                        "Bootstrap stationarity test per series");
    c_st->add_option("--data", st.data, "Cohort manifest JSON")->required();
    c_st->add_option("--out", st.out, "Result CSV output path");
    c_st->add_option("--b", st.b, "Fixed AR order (default: per-series CV)");
    c_st->add_option("--c", st.c, "Fixed basis size (default: per-series CV)");
    st.cfg.add_options(c_st);
    c_st->callback([&] { cmd_test_stationarity(st); });

    BenchmarkArgs be;
    CLI::App* c_be = app.add_subcommand("benchmark",
                                        "Monte-Carlo accuracy benchmark on simulated cohorts");
    c_be->add_option("--model", be.model, "Generator model id (1-6)")->check(CLI::Range(1, 6));
    c_be->add_option("--noise", be.noise, "Noise profile id (1-3)")->check(CLI::Range(1, 3));
    c_be->add_option("--delta", be.delta, "Model-1 class separation");
    c_be->add_option("--n", be.n, "Series length");
    c_be->add_option("--n1", be.n1, "Class-X training series");
    c_be->add_option("--n2", be.n2, "Class-Y training series");
    c_be->add_option("--tests", be.tests, "Test series per class");
    c_be->add_option("--reps", be.reps, "Replications per cell");
    c_be->add_option("--seed", be.seed, "Base seed");
    c_be->add_option("--out", be.out, "Accuracy table CSV path");
    CLI::Option* og_d = c_be->add_option("--delta-grid", be.delta_grid,
                                         "Sweep delta over a comma list");
    CLI::Option* og_k = c_be->add_option(
        "--kappa-grid", be.kappa_grid, "Sweep the class-size ratio N2/N1 over a comma list");
    CLI::Option* og_n = c_be->add_option("--n-grid", be.n_grid,
                                         "Sweep the series length over a comma list or lo:hi");
    og_d->excludes(og_k, og_n);
    og_k->excludes(og_d, og_n);
    og_n->excludes(og_d, og_k);
    c_be->add_option("--threads", be.threads, "Worker threads across replications");
    be.cfg.pretest = "off";  // generated cohorts are nonstationary by construction
    be.cfg.add_options(c_be, /*with_pretest=*/true, /*with_seed_threads=*/false);
    c_be->callback([&] { cmd_benchmark(be); });

    OracleArgs ora;
    CLI::App* c_or = app.add_subcommand("oracle",
                                        "Population AR coefficients for closed-form models");
    c_or->add_option("--kind", ora.kind, "tv_ma1, tv_ar1, or stationary_ar1")
        ->check(CLI::IsMember({"tv_ma1", "tv_ar1", "stationary_ar1"}));
    c_or->add_option("--a0", ora.a0, "Coefficient a(t) constant term");
    c_or->add_option("--a1", ora.a1, "Coefficient of cos(2 pi t)");
    c_or->add_option("--a2", ora.a2, "Coefficient of sin(2 pi t)");
    c_or->add_option("--b", ora.b, "Predictor order")->check(CLI::PositiveNumber);
    c_or->add_option("--grid", ora.grid, "Evaluation grid size");
    c_or->add_option("--out", ora.out, "Optional CSV of phi_j(t) on the grid");
    c_or->callback([&] { cmd_oracle(ora); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "argument error: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
