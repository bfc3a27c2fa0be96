#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef TVCLASS_CLI_PATH
#error "TVCLASS_CLI_PATH must point at the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tvclass-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

/// Runs the binary with the given arguments; returns the exit status.
int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(TVCLASS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

/// File content with any line containing "created_at" removed, so
/// deterministic artifacts can be compared across runs.
std::string strip_timestamps(const std::string& path) {
    std::istringstream in(slurp(path));
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("created_at") == std::string::npos) out << line << '\n';
    }
    return out.str();
}

} // namespace

TEST_CASE("simulate, train, predict round trip", "[cli]") {
    TempDir dir;
    const std::string data = dir.file("data");
    REQUIRE(run_cli("simulate --model 3 --n 300 --n1 6 --n2 6 --seed 42 --out " + data) == 0);
    REQUIRE(fs::exists(data + "/manifest.json"));
    REQUIRE(fs::exists(data + "/X-0001.csv"));
    REQUIRE(fs::exists(data + "/Y-0006.csv"));

    const std::string model = dir.file("model.json");
    const std::string feats = dir.file("features.csv");
    REQUIRE(run_cli("train --data " + data + "/manifest.json --out " + model +
                    " --features " + feats +
                    " --b-grid 1,2 --c-grid 1,2,3 --pretest off --threads 1") == 0);
    REQUIRE(fs::exists(model));
    const std::string feat_text = slurp(feats);
    REQUIRE(feat_text.rfind("series_id,label,b,S", 0) == 0);

    const std::string preds = dir.file("predictions.csv");
    REQUIRE(run_cli("predict --model " + model + " --data " + data +
                    "/manifest.json --out " + preds + " --threads 1") == 0);
    const std::string pred_text = slurp(preds);
    REQUIRE(pred_text.rfind("series_id,predicted_label,mode,S_z,S_xz,S_yz,flags", 0) == 0);
    // Training data should mostly classify back to its own labels; check the
    // file has one row per series.
    REQUIRE(std::count(pred_text.begin(), pred_text.end(), '\n') == 13);
}

TEST_CASE("rerunning simulate reproduces every artifact byte for byte", "[cli]") {
    TempDir dir;
    const std::string a = dir.file("a");
    const std::string b = dir.file("b");
    const std::string args = " --model 1 --delta 0.3 --noise 2 --n 200 --n1 3 --n2 2 --seed 7 --out ";
    REQUIRE(run_cli("simulate" + args + a) == 0);
    REQUIRE(run_cli("simulate" + args + b) == 0);
    for (const char* name : {"X-0001.csv", "X-0002.csv", "X-0003.csv", "Y-0001.csv",
                             "Y-0002.csv"}) {
        REQUIRE(slurp(a + "/" + name) == slurp(b + "/" + name));
    }
    REQUIRE(strip_timestamps(a + "/manifest.json") ==
            strip_timestamps(b + "/manifest.json"));
}

TEST_CASE("usage errors exit with the argument code", "[cli]") {
    TempDir dir;
    REQUIRE(run_cli("simulate --model 9 --n 200 --n1 2 --n2 2 --out " +
                    dir.file("x")) == 2);
    REQUIRE(run_cli("simulate --model") == 2);
    REQUIRE(run_cli("no-such-command") == 2);
    REQUIRE(run_cli("") == 2);
    REQUIRE(run_cli("train --data " + dir.file("none.json") + " --out " +
                    dir.file("m.json")) == 3);
}

TEST_CASE("training on a single class is a data error", "[cli]") {
    TempDir dir;
    const std::string data = dir.file("data");
    REQUIRE(run_cli("simulate --model 3 --n 300 --n1 4 --n2 0 --seed 2 --out " + data) == 0);
    REQUIRE(run_cli("train --data " + data + "/manifest.json --out " +
                    dir.file("m.json") + " --b-grid 1 --c-grid 1,2 --pretest off") == 3);
}

TEST_CASE("corrupted and mismatched models are data errors", "[cli]") {
    TempDir dir;
    const std::string data = dir.file("data");
    REQUIRE(run_cli("simulate --model 3 --n 300 --n1 3 --n2 3 --seed 3 --out " + data) == 0);

    const std::string bad = dir.file("bad.json");
    std::ofstream(bad) << "{ definitely not a model";
    REQUIRE(run_cli("predict --model " + bad + " --data " + data +
                    "/manifest.json --out " + dir.file("p.csv")) == 3);

    const std::string model = dir.file("model.json");
    REQUIRE(run_cli("train --data " + data + "/manifest.json --out " + model +
                    " --b-grid 1,2 --c-grid 1,2,3 --pretest off --threads 1") == 0);
    std::string text = slurp(model);
    const std::string needle = "\"format_version\": 1";
    const auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size(), "\"format_version\": 999");
    std::ofstream(model, std::ios::trunc) << text;
    REQUIRE(run_cli("predict --model " + model + " --data " + data +
                    "/manifest.json --out " + dir.file("p.csv")) == 3);
}

TEST_CASE("benchmark emits one row per cell and hides the spread at one rep",
          "[cli][slow]") {
    TempDir dir;
    const std::string out = dir.file("bench.csv");
    REQUIRE(run_cli("benchmark --model 3 --n 300 --n1 4 --n2 4 --tests 2"
                    " --reps 1 --seed 5 --b-grid 1,2 --c-grid 1,2,3 --out " + out) == 0);
    const std::string text = slurp(out);
    REQUIRE(text.rfind("model,noise,delta,n,n1,n2,n_test,reps,mean_accuracy,sd_accuracy",
                       0) == 0);
    std::istringstream lines(text);
    std::string header, row;
    std::getline(lines, header);
    REQUIRE(std::getline(lines, row));
    // One replicate: the spread cell is empty.
    REQUIRE(row.rfind(",") == row.size() - 1);
    REQUIRE(row.rfind("3,1,", 0) == 0);
}

TEST_CASE("stationarity testing writes a decision per series", "[cli][slow]") {
    TempDir dir;
    const std::string data = dir.file("data");
    REQUIRE(run_cli("simulate --model 1 --delta 0.4 --n 400 --n1 2 --n2 2 --seed 9 --out " +
                    data) == 0);
    const std::string out = dir.file("stat.csv");
    REQUIRE(run_cli("test-stationarity --data " + data + "/manifest.json --b 1 --c 3"
                    " --bootstrap 49 --pretest-level 0.05 --seed 4 --threads 1 --out " + out) == 0);
    const std::string text = slurp(out);
    REQUIRE(text.rfind("series_id,b,c,statistic,p_value,reject", 0) == 0);
    REQUIRE(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("train rejects contradictory grids through the usual exit code", "[cli]") {
    TempDir dir;
    const std::string data = dir.file("data");
    REQUIRE(run_cli("simulate --model 3 --n 200 --n1 3 --n2 3 --seed 6 --out " + data) == 0);
    REQUIRE(run_cli("train --data " + data + "/manifest.json --out " +
                    dir.file("m.json") + " --b-grid 2,1 --c-grid 1") == 2);
    REQUIRE(run_cli("train --data " + data + "/manifest.json --out " +
                    dir.file("m.json") + " --b-grid 1 --c-grid 0") == 2);
}
