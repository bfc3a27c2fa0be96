#include "tvclass/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "tvclass/errors.hpp"
#include "tvclass/version.hpp"

namespace tvclass {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_double_field(const std::string& text, const std::string& path) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw DataError("non-numeric value '" + text + "' in '" + path + "'");
    }
    return v;
}

} // namespace

void write_series_csv(const std::string& path, const TimeSeriesRecord& rec) {
    std::ofstream out = open_out(path);
    out << "index,value\n";
    for (std::size_t i = 0; i < rec.values.size(); ++i) {
        out << (i + 1) << ',' << format_double(rec.values[i]) << '\n';
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

TimeSeriesRecord read_series_csv(const std::string& path, const std::string& id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open series file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty series file '" + path + "'");
    strip_cr(line);
    if (line != "index,value") {
        throw DataError("series file '" + path + "' must start with header 'index,value'");
    }
    TimeSeriesRecord rec;
    rec.id = id;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw DataError("malformed row in series file '" + path + "'");
        }
        const double v = parse_double_field(line.substr(comma + 1), path);
        if (!std::isfinite(v)) {
            throw DataError("non-finite value in series file '" + path + "'");
        }
        rec.values.push_back(v);
    }
    if (rec.values.empty()) throw DataError("series file '" + path + "' has no rows");
    return rec;
}

namespace {

ordered_json json_header() {
    ordered_json j;
    j["format_version"] = artifact_format_version;
    j["library_version"] = version_string;
    j["created_at"] = iso8601_utc_now();
    return j;
}

void check_format_version(const ordered_json& j, const std::string& path) {
    if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
        j["format_version"].get<int>() != artifact_format_version) {
        throw DataError("'" + path + "' has an unsupported format_version; expected " +
                        std::to_string(artifact_format_version));
    }
}

ordered_json parse_json_file(const std::string& path) {
    try {
        return ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("cannot parse '" + path + "' as JSON: " + e.what());
    }
}

/// Numbers that may be infinite are stored as strings in that case.
ordered_json dump_extended(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

double load_extended(const ordered_json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

void write_manifest(const std::string& path, const Manifest& manifest) {
    ordered_json j = json_header();
    if (manifest.generator) {
        const GeneratorInfo& g = *manifest.generator;
        j["generator"] = ordered_json{{"model", g.model_id},
                                      {"noise", g.noise_id},
                                      {"delta", g.delta},
                                      {"n", g.n},
                                      {"seed", g.seed}};
    }
    ordered_json list = ordered_json::array();
    for (const ManifestEntry& e : manifest.entries) {
        ordered_json item;
        item["id"] = e.id;
        item["path"] = e.path;
        if (e.label) item["label"] = std::string(1, label_char(*e.label));
        if (e.seed) item["seed"] = *e.seed;
        list.push_back(std::move(item));
    }
    j["series"] = std::move(list);
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw DataError("failed writing '" + path + "'");
}

Manifest read_manifest(const std::string& path) {
    const ordered_json j = parse_json_file(path);
    check_format_version(j, path);
    Manifest m;
    if (j.contains("created_at")) m.created_at = j["created_at"].get<std::string>();
    try {
        if (j.contains("generator")) {
            const ordered_json& g = j["generator"];
            GeneratorInfo info;
            info.model_id = g.at("model").get<int>();
            info.noise_id = g.at("noise").get<int>();
            info.delta = g.at("delta").get<double>();
            info.n = g.at("n").get<int>();
            info.seed = g.at("seed").get<std::uint64_t>();
            m.generator = info;
        }
        if (!j.contains("series") || !j["series"].is_array()) {
            throw DataError("'" + path + "' has no series list");
        }
        for (const ordered_json& item : j["series"]) {
            ManifestEntry e;
            e.id = item.at("id").get<std::string>();
            e.path = item.at("path").get<std::string>();
            if (item.contains("label")) {
                const std::optional<ClassLabel> lbl =
                    parse_label(item["label"].get<std::string>());
                if (!lbl) throw DataError("unknown class label in '" + path + "'");
                e.label = lbl;
            }
            if (item.contains("seed")) e.seed = item["seed"].get<std::uint64_t>();
            m.entries.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed manifest '" + path + "': " + e.what());
    }
    return m;
}

std::vector<TimeSeriesRecord> load_cohort(const Manifest& manifest,
                                          const std::string& manifest_path) {
    const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
    std::vector<TimeSeriesRecord> out;
    out.reserve(manifest.entries.size());
    for (const ManifestEntry& e : manifest.entries) {
        std::filesystem::path p(e.path);
        if (p.is_relative()) p = base / p;
        TimeSeriesRecord rec = read_series_csv(p.string(), e.id);
        rec.label = e.label;
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

ordered_json config_to_json(const TrainConfig& c) {
    ordered_json j;
    j["basis_family"] = family_name(c.basis_family);
    j["b_grid"] = c.b_grid;
    j["c_grid"] = c.c_grid;
    j["threshold_grid_M"] = c.threshold_grid_M;
    j["feature_grid"] = c.feature_grid;
    j["standardize"] = c.standardize;
    j["pretest"] = c.pretest;
    j["pretest_level"] = c.pretest_level;
    j["pretest_subsample"] = c.pretest_subsample;
    j["bootstrap_B"] = c.bootstrap_B;
    j["prescreen"] = c.prescreen;
    j["prescreen_bandwidth"] = c.prescreen_bandwidth;
    j["prescreen_margin"] = dump_extended(c.prescreen_margin);
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    return j;
}

TrainConfig config_from_json(const ordered_json& j) {
    TrainConfig c;
    const std::optional<BasisFamily> fam =
        parse_family(j.at("basis_family").get<std::string>());
    if (!fam) throw DataError("unknown basis family in model file");
    c.basis_family = *fam;
    c.b_grid = j.at("b_grid").get<std::vector<int>>();
    c.c_grid = j.at("c_grid").get<std::vector<int>>();
    c.threshold_grid_M = j.at("threshold_grid_M").get<int>();
    c.feature_grid = j.at("feature_grid").get<int>();
    c.standardize = j.at("standardize").get<bool>();
    c.pretest = j.at("pretest").get<bool>();
    c.pretest_level = j.at("pretest_level").get<double>();
    c.pretest_subsample = j.at("pretest_subsample").get<int>();
    c.bootstrap_B = j.at("bootstrap_B").get<int>();
    c.prescreen = j.at("prescreen").get<bool>();
    c.prescreen_bandwidth = j.at("prescreen_bandwidth").get<double>();
    c.prescreen_margin = load_extended(j.at("prescreen_margin"));
    c.seed = j.at("seed").get<std::uint64_t>();
    c.threads = j.at("threads").get<unsigned>();
    return c;
}

} // namespace

void save_model(const std::string& path, const TrainedClassifier& model) {
    ordered_json j = json_header();
    j["mode"] = mode_name(model.mode);
    if (model.mode == ClassifierMode::Nonstationary) {
        j["orientation"] = model.orientation == Orientation::XBelow ? "x_below" : "x_above";
        j["S_bar_x"] = model.S_bar_x;
        j["S_bar_y"] = model.S_bar_y;
        j["C1"] = model.C1;
        j["C2"] = model.C2;
        j["threshold"] = model.threshold;
        j["pooled_b_star"] = model.pooled_b_star;
    } else {
        j["stationary"] = ordered_json{{"b", model.stationary_b},
                                       {"phi_x", model.stationary_phi_x},
                                       {"phi_y", model.stationary_phi_y}};
    }
    j["training_accuracy"] = model.training_accuracy;
    if (model.prescreen) {
        const PrescreenModel& p = *model.prescreen;
        j["prescreen_model"] = ordered_json{{"bandwidth", p.bandwidth},
                                            {"margin", dump_extended(p.margin)},
                                            {"mean_x", p.mean_x},
                                            {"mean_y", p.mean_y},
                                            {"distance_spread", p.distance_spread}};
    }
    j["config"] = config_to_json(model.config);
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw DataError("failed writing '" + path + "'");
}

TrainedClassifier load_model(const std::string& path) {
    const ordered_json j = parse_json_file(path);
    check_format_version(j, path);
    TrainedClassifier m;
    try {
        const std::optional<ClassifierMode> mode = parse_mode(j.at("mode").get<std::string>());
        if (!mode) throw DataError("unknown classifier mode in '" + path + "'");
        m.mode = *mode;
        if (m.mode == ClassifierMode::Nonstationary) {
            const std::string ori = j.at("orientation").get<std::string>();
            if (ori != "x_below" && ori != "x_above") {
                throw DataError("unknown orientation in '" + path + "'");
            }
            m.orientation = ori == "x_below" ? Orientation::XBelow : Orientation::XAbove;
            m.S_bar_x = j.at("S_bar_x").get<double>();
            m.S_bar_y = j.at("S_bar_y").get<double>();
            m.C1 = j.at("C1").get<double>();
            m.C2 = j.at("C2").get<double>();
            m.threshold = j.at("threshold").get<double>();
            m.pooled_b_star = j.at("pooled_b_star").get<int>();
        } else {
            const ordered_json& s = j.at("stationary");
            m.stationary_b = s.at("b").get<int>();
            m.stationary_phi_x = s.at("phi_x").get<std::vector<double>>();
            m.stationary_phi_y = s.at("phi_y").get<std::vector<double>>();
            if (m.stationary_phi_x.size() != static_cast<std::size_t>(m.stationary_b) ||
                m.stationary_phi_y.size() != static_cast<std::size_t>(m.stationary_b)) {
                throw DataError("inconsistent fallback coefficients in '" + path + "'");
            }
        }
        m.training_accuracy = j.at("training_accuracy").get<double>();
        if (j.contains("prescreen_model")) {
            const ordered_json& p = j["prescreen_model"];
            PrescreenModel pm;
            pm.bandwidth = p.at("bandwidth").get<double>();
            pm.margin = load_extended(p.at("margin"));
            pm.mean_x = p.at("mean_x").get<std::vector<double>>();
            pm.mean_y = p.at("mean_y").get<std::vector<double>>();
            pm.distance_spread = p.at("distance_spread").get<double>();
            if (pm.mean_x.size() != pm.mean_y.size() || pm.mean_x.empty()) {
                throw DataError("inconsistent prescreen curves in '" + path + "'");
            }
            m.prescreen = std::move(pm);
        }
        m.config = config_from_json(j.at("config"));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed model file '" + path + "': " + e.what());
    }
    return m;
}

void write_features_csv(const std::string& path, const std::vector<FeatureSet>& features) {
    std::size_t max_b = 0;
    for (const FeatureSet& f : features) max_b = std::max(max_b, f.D.size());
    std::ofstream out = open_out(path);
    out << "series_id,label,b,S";
    for (std::size_t j = 1; j <= max_b; ++j) out << ",D" << j;
    out << '\n';
    for (const FeatureSet& f : features) {
        out << f.series_id << ',' << f.label << ',' << f.b << ',' << format_double(f.S);
        for (std::size_t j = 0; j < max_b; ++j) {
            out << ',';
            if (j < f.D.size()) out << format_double(f.D[j]);
        }
        out << '\n';
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

void write_predictions_csv(const std::string& path, const std::vector<Prediction>& preds) {
    std::ofstream out = open_out(path);
    out << "series_id,predicted_label,mode,S_z,S_xz,S_yz,flags\n";
    for (const Prediction& p : preds) {
        out << p.series_id << ',' << label_char(p.label) << ',' << mode_name(p.mode) << ',';
        const bool prescreened =
            std::find(p.flags.begin(), p.flags.end(), "prescreen") != p.flags.end();
        if (p.mode == ClassifierMode::Nonstationary && !prescreened) {
            out << format_double(p.S);
        }
        out << ',';
        if (p.mode == ClassifierMode::StationaryFallback && !prescreened) {
            out << format_double(p.d_x);
        }
        out << ',';
        if (p.mode == ClassifierMode::StationaryFallback && !prescreened) {
            out << format_double(p.d_y);
        }
        out << ',';
        for (std::size_t i = 0; i < p.flags.size(); ++i) {
            if (i) out << '+';
            out << p.flags[i];
        }
        out << '\n';
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

void write_cv_tables_csv(const std::string& path, const std::vector<CvExport>& tables) {
    std::ofstream out = open_out(path);
    out << "series_id,b,c,score\n";
    for (const CvExport& t : tables) {
        for (const CvCell& cell : t.table) {
            out << t.series_id << ',' << cell.b << ',' << cell.c << ','
                << format_double(cell.score) << '\n';
        }
    }
    if (!out) throw DataError("failed writing '" + path + "'");
}

} // namespace tvclass
