#include "tvclass/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "tvclass/errors.hpp"
#include "tvclass/rng.hpp"

namespace tvclass {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double noise_sd(int noise_id, double u) {
    switch (noise_id) {
        case 1: return 1.0;
        case 2: {
            const double c = std::cos(two_pi * u);
            return 0.25 + 0.25 * c * c;
        }
        case 3: return 0.5 + 0.5 * u;
    }
    return 1.0;
}

/// State threaded through the recursion: the two previous values and the two
/// previous (already scaled) innovations; model 3's Y class is an MA(2) and
/// needs the innovation history.
struct History {
    double v1 = 0.0, v2 = 0.0;  // z_{i-1}, z_{i-2}
    double e1 = 0.0, e2 = 0.0;  // eps_{i-1}, eps_{i-2}
};

double step(int model, ClassLabel cls, double delta, double u, const History& h,
            double eps) {
    const bool x = (cls == ClassLabel::X);
    switch (model) {
        case 1:
            return (x ? 2.0 * delta : delta) * std::cos(two_pi * u) * h.v1 + eps;
        case 2:
            return x ? 0.4 * h.v1 + 0.6 * std::sin(two_pi * u) * h.v2 + eps
                     : 0.6 * h.v1 + 0.4 * std::cos(two_pi * u) * h.v2 + eps;
        case 3:
            return x ? 0.4 * (std::cos(two_pi * u) + 1.0) * h.v1 + eps
                     : 0.3 * h.e2 + 0.4 * h.e1 + eps;
        case 4:
            return x ? 1.5 * std::sin(two_pi * u) * std::exp(-u * h.v1 * h.v1) + eps
                     : 0.5 * std::cos(two_pi * u) * std::exp(-u * h.v1 * h.v1) + eps;
        case 5:
            return x ? 0.2 * std::sin(two_pi * u) * h.v1 + 0.2 * h.v2 + eps
                     : 0.2 * h.v1 + 0.2 * std::sin(two_pi * u) * h.v2 + eps;
        case 6:
            return x ? 0.2 * (std::sin(two_pi * u) + 1.0) / (h.v1 + 1.0) +
                           0.2 * std::exp(-u * h.v2 * h.v2) + eps
                     : 0.2 * std::exp(-u * h.v1 * h.v1) +
                           0.3 * (std::sin(two_pi * u) + 1.0) * h.v2 + eps;
    }
    return eps;
}

} // namespace

TimeSeriesRecord generate_series(const SimulationSpec& spec) {
    if (spec.model_id < 1 || spec.model_id > 6) {
        throw ArgumentError("unknown simulation model id");
    }
    if (spec.noise_id < 1 || spec.noise_id > 3) {
        throw ArgumentError("unknown noise profile id");
    }
    if (!(spec.delta >= 0.0)) throw ArgumentError("delta must be >= 0");
    if (spec.n < 10) throw ArgumentError("simulated series length must be >= 10");

    Rng rng(spec.seed);
    History h;
    const double u0 = 1.0 / static_cast<double>(spec.n);

    auto advance = [&](double u) {
        const double eps = noise_sd(spec.noise_id, u) * rng.next_normal();
        const double v = step(spec.model_id, spec.class_label, spec.delta, u, h, eps);
        h.v2 = h.v1;
        h.v1 = v;
        h.e2 = h.e1;
        h.e1 = eps;
        return v;
    };

    constexpr int burn_in = 100;
    for (int i = 0; i < burn_in; ++i) advance(u0);

    TimeSeriesRecord rec;
    rec.values.resize(static_cast<std::size_t>(spec.n));
    for (int i = 1; i <= spec.n; ++i) {
        const double v = advance(static_cast<double>(i) / static_cast<double>(spec.n));
        if (!std::isfinite(v)) {
            throw NumericError("simulated recursion produced a non-finite value");
        }
        rec.values[static_cast<std::size_t>(i - 1)] = v;
    }
    rec.label = spec.class_label;
    return rec;
}

std::vector<TimeSeriesRecord> generate_cohort(const SimulationSpec& tmpl, int n1,
                                              int n2, std::uint64_t base_seed) {
    if (n1 < 0 || n2 < 0) throw ArgumentError("cohort sizes must be >= 0");
    std::vector<TimeSeriesRecord> out;
    out.reserve(static_cast<std::size_t>(n1 + n2));
    char buf[16];
    for (int k = 0; k < n1 + n2; ++k) {
        SimulationSpec s = tmpl;
        s.class_label = (k < n1) ? ClassLabel::X : ClassLabel::Y;
        s.seed = derive_stream(base_seed, static_cast<std::uint64_t>(k));
        TimeSeriesRecord rec = generate_series(s);
        const int within = (k < n1) ? k + 1 : k - n1 + 1;
        std::snprintf(buf, sizeof(buf), "%c-%04d", label_char(*rec.label), within);
        rec.id = buf;
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace tvclass
