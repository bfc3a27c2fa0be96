#include "tvclass/series.hpp"

#include <cmath>

#include "tvclass/errors.hpp"

namespace tvclass {

char label_char(ClassLabel label) { return label == ClassLabel::X ? 'X' : 'Y'; }

std::optional<ClassLabel> parse_label(const std::string& text) {
    if (text == "X" || text == "x") return ClassLabel::X;
    if (text == "Y" || text == "y") return ClassLabel::Y;
    return std::nullopt;
}

void require_finite(const TimeSeriesRecord& rec) {
    for (double v : rec.values) {
        if (!std::isfinite(v)) {
            throw DataError("series '" + rec.id + "' contains a non-finite value");
        }
    }
}

TimeSeriesRecord standardized(const TimeSeriesRecord& rec) {
    const std::size_t n = rec.values.size();
    if (n < 2) {
        throw DataError("series '" + rec.id + "' is too short to standardize");
    }
    double mean = 0.0;
    for (double v : rec.values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : rec.values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
        throw DataError("series '" + rec.id + "' is constant; cannot standardize");
    }
    TimeSeriesRecord out;
    out.id = rec.id;
    out.label = rec.label;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = (rec.values[i] - mean) / sd;
    return out;
}

} // namespace tvclass
