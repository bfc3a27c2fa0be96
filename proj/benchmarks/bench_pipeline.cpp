// Microbenchmarks for the hot paths of the fitting pipeline: basis
// evaluation, design construction, a single least-squares fit, full
// cross-validated order selection, feature extraction, and threshold search.

#include <benchmark/benchmark.h>

#include <vector>

#include "tvclass/ar_fit.hpp"
#include "tvclass/classifier.hpp"
#include "tvclass/features.hpp"
#include "tvclass/rng.hpp"
#include "tvclass/simulate.hpp"

namespace {

std::vector<double> demo_series(int n) {
    tvclass::SimulationSpec spec;
    spec.model_id = 1;
    spec.delta = 0.2;
    spec.n = n;
    spec.class_label = tvclass::ClassLabel::X;
    spec.seed = 12345;
    return tvclass::generate_series(spec).values;
}

void BM_BasisEvaluation(benchmark::State& state) {
    const tvclass::SieveBasis basis{tvclass::BasisFamily::NormalizedLegendre,
                                    static_cast<int>(state.range(0))};
    std::vector<double> out(basis.c);
    for (auto _ : state) {
        for (int g = 0; g < 201; ++g) {
            tvclass::evaluate_basis_into(basis, static_cast<double>(g) / 200.0, out.data());
            benchmark::DoNotOptimize(out.data());
        }
    }
    state.SetItemsProcessed(state.iterations() * 201);
}
BENCHMARK(BM_BasisEvaluation)->Arg(4)->Arg(8);

void BM_BuildDesign(benchmark::State& state) {
    const std::vector<double> z = demo_series(1000);
    const tvclass::SieveBasis basis{tvclass::BasisFamily::NormalizedLegendre, 4};
    for (auto _ : state) {
        auto design = tvclass::build_design(z, 4, basis);
        benchmark::DoNotOptimize(design.G.data());
    }
}
BENCHMARK(BM_BuildDesign);

void BM_FitOls(benchmark::State& state) {
    const std::vector<double> z = demo_series(1000);
    for (auto _ : state) {
        auto fit = tvclass::fit_ols(z, 4, 4, tvclass::BasisFamily::NormalizedLegendre);
        benchmark::DoNotOptimize(fit.beta.data());
    }
}
BENCHMARK(BM_FitOls);

void BM_SelectOrderCv(benchmark::State& state) {
    const std::vector<double> z = demo_series(1000);
    const std::vector<int> grid{1, 2, 3, 4, 5, 6, 7, 8};
    for (auto _ : state) {
        auto sel = tvclass::select_order_cv(z, grid, grid,
                                            tvclass::BasisFamily::NormalizedLegendre);
        benchmark::DoNotOptimize(sel.score);
    }
}
BENCHMARK(BM_SelectOrderCv)->Unit(benchmark::kMillisecond);

void BM_MaxDeviations(benchmark::State& state) {
    const std::vector<double> z = demo_series(1000);
    const auto fit = tvclass::fit_ols(z, 4, 4, tvclass::BasisFamily::NormalizedLegendre);
    for (auto _ : state) {
        auto d = tvclass::max_deviations(fit);
        benchmark::DoNotOptimize(d.data());
    }
}
BENCHMARK(BM_MaxDeviations);

void BM_SelectThreshold(benchmark::State& state) {
    tvclass::Rng rng(7);
    std::vector<double> S_x(100), S_y(100);
    for (double& s : S_x) s = 0.2 + 0.05 * rng.next_normal();
    for (double& s : S_y) s = 0.6 + 0.05 * rng.next_normal();
    for (double& s : S_x) s = std::abs(s);
    for (double& s : S_y) s = std::abs(s);
    for (auto _ : state) {
        auto choice = tvclass::select_threshold(S_x, S_y, 1000);
        benchmark::DoNotOptimize(choice.threshold);
    }
}
BENCHMARK(BM_SelectThreshold);

}  // namespace

BENCHMARK_MAIN();
