#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tvclass {

enum class ClassLabel { X, Y };

char label_char(ClassLabel label);
std::optional<ClassLabel> parse_label(const std::string& text);

/// One observed series. values holds z_1..z_n; the rescaled time attached to
/// z_i is i/n. A labeled record belongs to a training cohort; an unlabeled
/// one is a test series.
struct TimeSeriesRecord {
    std::string id;
    std::optional<ClassLabel> label;
    std::vector<double> values;
};

/// Throws DataError naming the record if any value is NaN or infinite.
void require_finite(const TimeSeriesRecord& rec);

/// Copy of rec with the sample mean removed and the sample standard
/// deviation (denominator n-1) divided out. Throws DataError if the series
/// has fewer than 2 points or is constant.
TimeSeriesRecord standardized(const TimeSeriesRecord& rec);

} // namespace tvclass
