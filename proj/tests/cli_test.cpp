#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

std::string cli_path() {
    const char* env = std::getenv("HOFLAB_BIN");
    return env ? env : "";
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = testing::TempDir() + "hoflab_stdout.txt";
    const std::string err_path = testing::TempDir() + "hoflab_stderr.txt";
    const std::string cmd = cli_path() + " " + args + " > " + out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string f;
    while (std::getline(in, f, ',')) fields.push_back(f);
    return fields;
}

#define REQUIRE_CLI()                                          \
    if (cli_path().empty()) {                                  \
        GTEST_SKIP() << "HOFLAB_BIN not set; run via ctest";   \
    }

TEST(Cli, ButterflyRowCountAndDeterminism) {
    REQUIRE_CLI();
    const auto a = run_cli("butterfly --size 5 --steps 201");
    ASSERT_EQ(a.exit_code, 0) << a.err;
    const auto rows = lines_of(a.out);
    ASSERT_EQ(rows.size(), 1u + 201u * 25u);
    EXPECT_EQ(rows[0], "alpha,index,energy");

    const auto b = run_cli("butterfly --size 5 --steps 201");
    EXPECT_EQ(a.out, b.out);  // byte-identical rerun

    const auto serial = run_cli("butterfly --size 4 --steps 41 --jobs 1");
    const auto parallel = run_cli("butterfly --size 4 --steps 41 --jobs 2");
    EXPECT_EQ(serial.out, parallel.out);
}

TEST(Cli, GroundCsvRoundTripsToUnitNorm) {
    REQUIRE_CLI();
    const auto r = run_cli("ground --size 5 --alpha 0.333");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto rows = lines_of(r.out);
    ASSERT_EQ(rows.size(), 26u);
    EXPECT_EQ(rows[0], "p,q,re,im,abs2");

    double norm = 0.0;
    double center_abs2 = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split_csv(rows[i]);
        ASSERT_EQ(f.size(), 5u);
        const double re = std::stod(f[2]);
        const double im = std::stod(f[3]);
        norm += re * re + im * im;
        if (f[0] == "3" && f[1] == "3") center_abs2 = std::stod(f[4]);
    }
    EXPECT_NEAR(norm, 1.0, 1e-9);
    EXPECT_NEAR(center_abs2, 0.3332, 5e-4);
}

TEST(Cli, DensityCsvHasExpectedShape) {
    REQUIRE_CLI();
    const auto r = run_cli("density --size 4 --alpha 0.2");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto rows = lines_of(r.out);
    ASSERT_EQ(rows.size(), 17u);
    EXPECT_EQ(rows[0], "p,q,abs2");
}

TEST(Cli, RowsAndColsOverrideSize) {
    REQUIRE_CLI();
    const auto r = run_cli("density --size 2 --rows 3 --cols 4 --alpha 0.1");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(lines_of(r.out).size(), 13u);  // 3*4 sites + header
}

TEST(Cli, FidelityMinimumSitsAtTheCrossing) {
    REQUIRE_CLI();
    const auto r = run_cli("fidelity --size 5 --alpha-min 0.30 --alpha-max 0.36 --step 0.001");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto rows = lines_of(r.out);
    ASSERT_EQ(rows.size(), 62u);
    double best_alpha = -1.0;
    double best = 2.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split_csv(rows[i]);
        const double fid = std::stod(f[1]);
        if (fid < best) {
            best = fid;
            best_alpha = std::stod(f[0]);
        }
    }
    EXPECT_NEAR(best_alpha, 0.333, 1e-9);
    EXPECT_LE(best, 1e-2);
}

TEST(Cli, CrossingsJsonReportsFirstCrossing) {
    REQUIRE_CLI();
    const auto r = run_cli("crossings --size 5 --alpha-min 0.30 --alpha-max 0.36");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["crossings"].size(), 1u);
    EXPECT_NEAR(j["alpha0"].get<double>(), 1.0 / 3.0, 2e-3);
    EXPECT_NEAR(j["fit_prediction"].get<double>(), 1.0 / 3.0, 1e-12);
}

TEST(Cli, ValidateEffectivePresetJson) {
    REQUIRE_CLI();
    for (const char* preset : {"reference", "paper"}) {
        const auto r = run_cli(std::string("validate-effective --preset ") + preset);
        ASSERT_EQ(r.exit_code, 0) << r.err;
        const auto j = nlohmann::json::parse(r.out);
        EXPECT_NEAR(j["j_predicted_abs"].get<double>(), 0.04, 1e-12);
        EXPECT_EQ(j["method"], "schur_complement");
        EXPECT_LE(j["relative_error"].get<double>(), 0.05);
    }
}

TEST(Cli, ValidateEffectiveDynamicsRoute) {
    REQUIRE_CLI();
    const auto r = run_cli("validate-effective --g 0.05 --tunneling 0.05 --delta 1.0 "
                           "--theta 0 0.5 --method dynamics");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["method"], "dynamics");
    EXPECT_LE(j["relative_error"].get<double>(), 0.05);
}

TEST(Cli, MomentumGridAndPeaks) {
    REQUIRE_CLI();
    const std::string grid_path = testing::TempDir() + "momentum_grid.csv";
    const std::string peaks_path = testing::TempDir() + "momentum_peaks.csv";
    const auto r = run_cli("momentum --size 6 --alpha 0 --peaks 1 --out " + grid_path +
                           " --peaks-out " + peaks_path);
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto grid = lines_of(slurp(grid_path));
    ASSERT_EQ(grid.size(), 37u);
    EXPECT_EQ(grid[0], "kp,kq,magnitude");
    const auto peaks = lines_of(slurp(peaks_path));
    ASSERT_EQ(peaks.size(), 2u);
    const auto f = split_csv(peaks[1]);
    EXPECT_NEAR(std::stod(f[2]), 1.0, 1e-9);  // zero-flux ground state = (1,1) mode
}

TEST(Cli, FitAlpha0Csv) {
    REQUIRE_CLI();
    const auto r = run_cli("fit-alpha0 --sizes 5");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto rows = lines_of(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], "L,alpha0,prediction,deviation");
    const auto f = split_csv(rows[1]);
    EXPECT_EQ(f[0], "5");
    EXPECT_NEAR(std::stod(f[1]), 1.0 / 3.0, 2e-3);
    EXPECT_LT(std::stod(f[3]), 0.02);
}

TEST(Cli, ExitCodesDistinguishFailureClasses) {
    REQUIRE_CLI();
    EXPECT_EQ(run_cli("butterfly --size 5 --bogus-flag").exit_code, 2);
    EXPECT_EQ(run_cli("butterfly").exit_code, 2);                    // missing --size
    EXPECT_EQ(run_cli("ground --size 0 --alpha 0.1").exit_code, 2);  // invalid lattice
    EXPECT_EQ(run_cli("butterfly --size 3 --steps 5 --out /nonexistent-dir/x.csv").exit_code,
              4);
    const auto usage = run_cli("ground --size 0 --alpha 0.1");
    EXPECT_EQ(lines_of(usage.err).size(), 1u);  // single-line diagnostic
}

TEST(Cli, HelpListsExitCodes) {
    REQUIRE_CLI();
    const auto r = run_cli("--help");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
    EXPECT_NE(r.out.find("4  output path"), std::string::npos);
}

}  // namespace
