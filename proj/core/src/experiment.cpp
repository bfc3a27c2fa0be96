#include "tvclass/experiment.hpp"

#include <cmath>

#include "tvclass/errors.hpp"
#include "tvclass/parallel.hpp"
#include "tvclass/rng.hpp"

namespace tvclass {

ReplicationOutcome run_replication(const ExperimentSpec& spec, int rep_index) {
    if (spec.train_x < 1 || spec.train_y < 1) {
        throw ArgumentError("training cohort sizes must be >= 1");
    }
    if (spec.test_per_class < 1) throw ArgumentError("test_per_class must be >= 1");
    if (rep_index < 0) throw ArgumentError("replicate index must be >= 0");

    const std::uint64_t rep_seed =
        derive_stream(spec.seed, static_cast<std::uint64_t>(rep_index));
    SimulationSpec tmpl;
    tmpl.model_id = spec.model_id;
    tmpl.noise_id = spec.noise_id;
    tmpl.delta = spec.delta;
    tmpl.n = spec.n;

    const std::vector<TimeSeriesRecord> cohort =
        generate_cohort(tmpl, spec.train_x, spec.train_y, derive_stream(rep_seed, 0));
    const std::vector<TimeSeriesRecord> tests = generate_cohort(
        tmpl, spec.test_per_class, spec.test_per_class, derive_stream(rep_seed, 1));

    TrainConfig config = spec.train;
    config.seed = derive_stream(rep_seed, 2);
    config.threads = 1;  // replicates are the parallel unit

    const TrainingResult trained = train(cohort, config);

    ReplicationOutcome out;
    out.mode = trained.model.mode;
    out.total = static_cast<int>(tests.size());
    for (const TimeSeriesRecord& t : tests) {
        ClassLabel got;
        if (trained.model.mode == ClassifierMode::Nonstationary) {
            got = predict(trained.model, t).label;
        } else {
            got = fit_stationary(cohort, t, config).label;
        }
        if (got == *t.label) ++out.correct;
    }
    out.accuracy = static_cast<double>(out.correct) / static_cast<double>(out.total);
    return out;
}

CellSummary run_cell(const ExperimentSpec& spec, unsigned threads) {
    if (spec.reps < 1) throw ArgumentError("replicate count must be >= 1");
    CellSummary cell;
    cell.accuracies.resize(static_cast<std::size_t>(spec.reps));
    parallel_for(static_cast<std::size_t>(spec.reps), threads, [&](std::size_t r) {
        cell.accuracies[r] = run_replication(spec, static_cast<int>(r)).accuracy;
    });
    double mean = 0.0;
    for (double a : cell.accuracies) mean += a;
    mean /= static_cast<double>(spec.reps);
    cell.mean_accuracy = mean;
    if (spec.reps > 1) {
        double ss = 0.0;
        for (double a : cell.accuracies) ss += (a - mean) * (a - mean);
        cell.sd_accuracy = std::sqrt(ss / static_cast<double>(spec.reps - 1));
    }
    return cell;
}

} // namespace tvclass
