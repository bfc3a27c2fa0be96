#pragma once

#include <cstdint>
#include <vector>

#include "tvclass/classifier.hpp"
#include "tvclass/simulate.hpp"

namespace tvclass {

/// One benchmark cell: draw a fresh training cohort and a fresh batch of
/// test series from a simulation model, train, classify, and record the
/// test accuracy; repeat `reps` times with independent streams.
struct ExperimentSpec {
    int model_id = 1;
    int noise_id = 1;
    double delta = 0.2;
    int n = 1000;
    int train_x = 100;      ///< class-X training series per replicate
    int train_y = 100;      ///< class-Y training series per replicate
    int test_per_class = 25;
    int reps = 50;
    std::uint64_t seed = 1;
    /// Training configuration for each replicate (its seed/threads fields
    /// are overridden internally: per-replicate derived seed, one thread).
    TrainConfig train;
};

struct ReplicationOutcome {
    double accuracy = 0.0;
    int correct = 0;
    int total = 0;
    ClassifierMode mode = ClassifierMode::Nonstationary;
};

/// Replicate rep_index of the cell. Deterministic in (spec, rep_index);
/// replicates use disjoint derived streams, so any subset can be reproduced.
/// In fallback mode each test series is classified by the joint
/// constant-coefficient fit (its own selected order participates in the
/// common order), matching fit_stationary.
ReplicationOutcome run_replication(const ExperimentSpec& spec, int rep_index);

struct CellSummary {
    double mean_accuracy = 0.0;
    double sd_accuracy = 0.0;  ///< sample sd over replicates; 0 when reps == 1
    std::vector<double> accuracies;
};

/// All replicates of the cell, fanned out over `threads` workers (0 = the
/// default count); results are identical for any thread count.
CellSummary run_cell(const ExperimentSpec& spec, unsigned threads);

} // namespace tvclass
