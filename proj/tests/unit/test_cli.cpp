#include "nprophet/backtest.hpp"
#include "nprophet/csv.hpp"
#include "nprophet/forecast.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    static void SetUpTestSuite()
    {
        dir_ = fs::temp_directory_path() / "nprophet_cli_test";
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        write("fast.ini", "[seasonality]\nauto = false\nweekly = true\n[train]\nepochs = 5\n");
        write("lags.ini", "[model]\nn_forecasts = 3\n[seasonality]\nauto = false\n[ar]\nn_lags = 4\n[train]\nepochs = 5\n");
        write("future.ini", "[seasonality]\nauto = false\n[regressors.future.future]\n[train]\nepochs = 5\n");
        ASSERT_EQ(run("synth S-TSEF -o " + path("synth") + " --length 400 --series 1"), 0);
    }
    static void TearDownTestSuite() { fs::remove_all(dir_); }

    static std::string path(const std::string& name) { return (dir_ / name).string(); }
    static void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
    static std::string read(const std::string& name)
    {
        std::ifstream in(dir_ / name, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    static std::string series() { return path("synth/S-TSEF_1.csv"); }

    // Exit status of the CLI; stderr goes to err.txt.
    static int run(const std::string& args, bool quiet = true)
    {
        const std::string cmd =
            std::string(NPROPHET_CLI_PATH) + (quiet ? " --quiet " : " ") + args + " > " + path("out.txt") + " 2> " + path("err.txt");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static fs::path dir_;
};

fs::path Cli::dir_;

} // namespace

TEST_F(Cli, SynthIsDeterministicAndRejectsUnknownIds)
{
    ASSERT_EQ(run("synth S-TS -o " + path("a") + " --length 300 --series 5"), 0);
    ASSERT_EQ(run("synth S-TS -o " + path("b") + " --length 300 --series 5"), 0);
    for (int i = 1; i <= 5; ++i) {
        const std::string f = "S-TS_" + std::to_string(i) + ".csv";
        ASSERT_TRUE(fs::exists(dir_ / "a" / f));
        EXPECT_EQ(read("a/" + f), read("b/" + f));
    }
    std::ifstream in(dir_ / "a" / "S-TS_1.csv");
    EXPECT_EQ(nprophet::read_dataset(in).size(), 300u);
    ASSERT_EQ(run("--seed 9 synth S-TS -o " + path("c") + " --length 300 --series 1"), 0);
    EXPECT_NE(read("a/S-TS_1.csv"), read("c/S-TS_1.csv"));
    EXPECT_EQ(run("synth S-XX -o " + path("x")), 2);
}

TEST_F(Cli, FitWritesModelAndMetrics)
{
    ASSERT_EQ(run("--config " + path("fast.ini") + " fit " + series() + " -o " + path("m.json")), 0) << read("err.txt");
    EXPECT_TRUE(fs::exists(dir_ / "m.json"));
    const std::string metrics = read("m.json.metrics.jsonl");
    EXPECT_EQ(std::count(metrics.begin(), metrics.end(), '\n'), 5);
    EXPECT_NE(metrics.find("\"rmse\""), std::string::npos);
}

TEST_F(Cli, FitErrorsMapToExitCodes)
{
    write("noy.csv", "ds,value\n2020-01-01,1\n2020-01-02,2\n");
    EXPECT_EQ(run("fit " + path("noy.csv") + " -o " + path("bad.json")), 2);
    EXPECT_NE(read("err.txt").find("'y'"), std::string::npos) << read("err.txt");

    write("short.csv", "ds,y\n2020-01-01,1\n2020-01-02,2\n2020-01-03,1\n2020-01-04,3\n");
    EXPECT_EQ(run("--config " + path("lags.ini") + " fit " + path("short.csv") + " -o " + path("bad.json")), 3);

    write("broken.ini", "[train]\nloss = cubic\n");
    EXPECT_EQ(run("--config " + path("broken.ini") + " fit " + series() + " -o " + path("bad.json")), 2);
    EXPECT_EQ(run("fit"), 2);
    EXPECT_FALSE(fs::exists(dir_ / "bad.json"));
}

TEST_F(Cli, PredictWritesForecastColumns)
{
    ASSERT_EQ(run("--config " + path("lags.ini") + " fit " + series() + " -o " + path("lags.json")), 0)
        << read("err.txt");
    ASSERT_EQ(run("predict " + path("lags.json") + " " + series() + " -o " + path("fc.csv") + " --decompose --plot-data " +
                  path("plot.csv")),
              0)
        << read("err.txt");
    std::ifstream in(dir_ / "fc.csv");
    const auto frame = nprophet::read_forecast(in);
    EXPECT_EQ(frame.rows(), 400u);
    for (const char* c : {"yhat1", "yhat2", "yhat3", "trend", "ar1", "ar3"}) {
        EXPECT_TRUE(frame.has_column(c)) << c;
    }
    for (std::size_t r = 0; r < frame.rows(); ++r) {
        if (std::isnan(frame.column("yhat2")[r])) {
            continue;
        }
        EXPECT_NEAR(frame.column("trend")[r] + frame.column("ar2")[r], frame.column("yhat2")[r], 1e-9);
    }
    EXPECT_EQ(read("plot.csv").rfind("ds,component,value", 0), 0u);
}

TEST_F(Cli, PredictTimeOnlyIntoTheFuture)
{
    ASSERT_EQ(run("--config " + path("fast.ini") + " fit " + series() + " -o " + path("t.json")), 0);
    ASSERT_EQ(run("predict " + path("t.json") + " " + series() + " -o " + path("t.csv") + " --periods 100"), 0)
        << read("err.txt");
    std::ifstream in(dir_ / "t.csv");
    const auto frame = nprophet::read_forecast(in);
    ASSERT_EQ(frame.rows(), 500u);
    for (std::size_t r = 400; r < 500; ++r) {
        EXPECT_FALSE(std::isnan(frame.column("yhat1")[r]));
    }
}

TEST_F(Cli, PredictWithoutFutureRegressorExitsFive)
{
    ASSERT_EQ(run("--config " + path("future.ini") + " fit " + series() + " -o " + path("f.json")), 0) << read("err.txt");
    EXPECT_EQ(run("predict " + path("f.json") + " " + series() + " -o " + path("f.csv") + " --periods 5"), 5);
    EXPECT_NE(read("err.txt").find("future"), std::string::npos);
}

TEST_F(Cli, BacktestReportsEveryHorizonAndIsStable)
{
    const std::string args = "--config " + path("lags.ini") + " backtest " + series() + " --horizons 1,3 --naive --no-timing -o ";
    ASSERT_EQ(run(args + path("r1.txt")), 0) << read("err.txt");
    ASSERT_EQ(run(args + path("r2.txt")), 0);
    EXPECT_EQ(read("r1.txt"), read("r2.txt"));
    std::ifstream in(dir_ / "r1.txt");
    const auto report = nprophet::read_report(in);
    std::set<std::size_t> horizons;
    for (const auto& r : report.records) {
        horizons.insert(r.horizon);
    }
    EXPECT_EQ(horizons, (std::set<std::size_t>{1, 3}));
    EXPECT_EQ(report.records.size(), 2u * 2u * 5u);
}

TEST_F(Cli, NaiveOnlyBacktestScoresNearOne)
{
    write("rw.csv", [] {
        std::ostringstream s;
        s << "ds,y\n";
        std::mt19937_64 rng(1);
        std::normal_distribution<double> g(0, 1);
        double v = 0;
        for (int t = 0; t < 1000; ++t) {
            v += g(rng);
            s << nprophet::format_timestamp(nprophet::parse_timestamp("2010-01-01") + std::chrono::days(t)) << ','
              << v << '\n';
        }
        return s.str();
    }());
    ASSERT_EQ(run("backtest " + path("rw.csv") + " --naive-only -o " + path("naive.txt"), false), 0) << read("err.txt");
    std::ifstream in(dir_ / "naive.txt");
    const auto summary = nprophet::read_report(in).summary();
    ASSERT_EQ(summary.size(), 1u);
    EXPECT_NEAR(summary[0].mase.mean, 1.0, 0.15);
    EXPECT_NE(read("out.txt").find("naive"), std::string::npos);
}

TEST_F(Cli, BundledSampleFits)
{
    const std::string sample = std::string(NPROPHET_SAMPLE_DIR) + "/sample_daily.csv";
    const std::string config = std::string(NPROPHET_SAMPLE_DIR) + "/sample.ini";
    ASSERT_TRUE(fs::exists(sample));
    ASSERT_EQ(run("--config " + config + " fit " + sample + " -o " + path("s.json")), 0) << read("err.txt");
}
