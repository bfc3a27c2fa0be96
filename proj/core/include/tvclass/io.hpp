#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tvclass/classifier.hpp"
#include "tvclass/features.hpp"
#include "tvclass/series.hpp"

namespace tvclass {

/// Shortest text that round-trips the double exactly ("%.17g" trimmed);
/// used for every floating-point value written to CSV so artifacts are
/// byte-stable.
std::string format_double(double v);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ". Only informational fields
/// use this; determinism comparisons ignore them.
std::string iso8601_utc_now();

/// Series CSV: header "index,value", then one row per observation with
/// index = 1..n.
void write_series_csv(const std::string& path, const TimeSeriesRecord& rec);
/// Throws DataError on missing file, bad header, non-numeric or non-finite
/// values, or an empty body. The record id is taken from `id`.
TimeSeriesRecord read_series_csv(const std::string& path, const std::string& id);

struct ManifestEntry {
    std::string id;
    std::string path;  ///< relative to the manifest's directory
    std::optional<ClassLabel> label;
    std::optional<std::uint64_t> seed;  ///< present for generated series
};

/// How a generated cohort was produced; absent for user-assembled data.
struct GeneratorInfo {
    int model_id = 1;
    int noise_id = 1;
    double delta = 0.2;
    int n = 1000;
    std::uint64_t seed = 0;
};

struct Manifest {
    std::vector<ManifestEntry> entries;
    std::optional<GeneratorInfo> generator;
    std::string created_at;  ///< informational
};

void write_manifest(const std::string& path, const Manifest& manifest);
Manifest read_manifest(const std::string& path);

/// Loads every entry's series, resolving relative paths against the
/// manifest's directory.
std::vector<TimeSeriesRecord> load_cohort(const Manifest& manifest,
                                          const std::string& manifest_path);

/// Model JSON round-trip. Every classifier field and the training
/// configuration are preserved exactly; loaders reject files with an
/// unknown format_version.
void save_model(const std::string& path, const TrainedClassifier& model);
TrainedClassifier load_model(const std::string& path);

/// Feature table: series_id,label,b,S,D1..Dmax (short rows padded with
/// empty cells).
void write_features_csv(const std::string& path, const std::vector<FeatureSet>& features);

/// Prediction table: series_id,predicted_label,mode,S_z,S_xz,S_yz,flags.
/// Cells not used by the row's mode are empty; flags are joined with '+'.
void write_predictions_csv(const std::string& path, const std::vector<Prediction>& preds);

/// Cross-validation table: series_id,b,c,score (one block of rows per
/// series; infinite scores print as "inf").
struct CvExport {
    std::string series_id;
    std::vector<CvCell> table;
};
void write_cv_tables_csv(const std::string& path, const std::vector<CvExport>& tables);

} // namespace tvclass
