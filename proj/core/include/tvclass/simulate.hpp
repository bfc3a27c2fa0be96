#pragma once

#include <cstdint>
#include <vector>

#include "tvclass/series.hpp"

namespace tvclass {

/// Which synthetic two-class generator to draw from and at what length.
/// model_id selects one of six generator pairs (time-varying AR/MA and
/// nonlinear recursions); noise_id selects the innovation standard deviation
/// profile sigma(i/n): 1 -> 1, 2 -> 1/4 + cos^2(2 pi i/n)/4, 3 -> 1/2 + i/(2n).
/// delta scales the class separation and is only read by model 1 (delta = 0
/// makes the two classes identical there). Recursions start from zero
/// history and are warmed up with 100 discarded steps at rescaled time 1/n.
struct SimulationSpec {
    int model_id = 1;   // 1..6
    int noise_id = 1;   // 1..3
    double delta = 0.2; // model 1 separation, >= 0
    int n = 1000;       // series length, >= 10
    ClassLabel class_label = ClassLabel::X;
    std::uint64_t seed = 0;
};

/// One series drawn from the spec; id is left empty. Identical specs always
/// produce identical values. Throws ArgumentError for unknown model/noise
/// ids, delta < 0, or n < 10; NumericError if the recursion leaves the
/// representable range.
TimeSeriesRecord generate_series(const SimulationSpec& spec);

/// n1 class-X records followed by n2 class-Y records, ids "X-0001", ...,
/// "Y-0001", ... Record k (0-based over the whole cohort) is drawn with seed
/// derive_stream(base_seed, k), so any subset is reproducible in isolation.
std::vector<TimeSeriesRecord> generate_cohort(const SimulationSpec& tmpl, int n1,
                                              int n2, std::uint64_t base_seed);

} // namespace tvclass
