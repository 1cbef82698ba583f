#include "nprophet/errors.hpp"
#include "nprophet/synth.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

using namespace nprophet;

TEST(Synth, TrendPeaksAtChangepoint)
{
    std::size_t cp = 0, cp2 = 0;
    const auto t = gen_trend(1000, 1, &cp);
    const auto t2 = gen_trend(1000, 2, &cp2);
    const auto peak = std::max_element(t.begin(), t.end()) - t.begin();
    EXPECT_EQ(static_cast<std::size_t>(peak), cp);
    EXPECT_EQ(*std::max_element(t.begin(), t.end()), 1.0);
    EXPECT_EQ(*std::min_element(t.begin(), t.end()), 0.0);
    EXPECT_GE(cp, 100u);
    EXPECT_LE(cp, 900u);
    EXPECT_NE(cp, cp2);
}

TEST(Synth, SeasonalityIsPeriodicWithTenCoefficients)
{
    std::vector<double> coef;
    const auto s = gen_seasonality(400, 30.0, 5, 3, &coef);
    ASSERT_EQ(coef.size(), 10u);
    for (double c : coef) {
        EXPECT_GE(c, 0.0);
        EXPECT_LT(c, 1.0);
    }
    for (std::size_t t = 0; t + 30 < s.size(); ++t) {
        EXPECT_NEAR(s[t + 30], s[t], 1e-10);
    }
    const auto zero = fourier_series(50, 365.0, std::vector<double>(10, 0.0));
    EXPECT_EQ(zero, std::vector<double>(50, 0.0));
}

TEST(Synth, EventsHaveExactlyTwentyFiveDistinctOnes)
{
    const auto e = gen_events(6000, 25, 9);
    EXPECT_EQ(std::accumulate(e.begin(), e.end(), 0.0), 25.0);
    for (double v : e) {
        EXPECT_TRUE(v == 0.0 || v == 1.0);
    }
}

TEST(Synth, ArProcess)
{
    const double phi[] = {0.3, 0.3};
    const auto zero = gen_ar_process(100, phi, 0.0, 1);
    EXPECT_EQ(zero, std::vector<double>(100, 0.0));

    const auto y = gen_ar_process(6000, phi, 0.1, 2);
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        c0 += (y[t] - mean) * (y[t] - mean);
        if (t > 0) {
            c1 += (y[t] - mean) * (y[t - 1] - mean);
        }
    }
    EXPECT_NEAR(c1 / c0, 0.3 / (1.0 - 0.3), 0.05);

    const double unit[] = {1.1};
    EXPECT_FALSE(is_stationary(unit));
    EXPECT_THROW(gen_ar_process(10, unit, 0.1, 1), NonStationary);
    const double f[] = {0.2, 0.3, -0.5};
    EXPECT_TRUE(is_stationary(f));
}

TEST(Synth, LaggedEffect)
{
    const std::vector<double> x{1, 2, 3, 4, 5};
    EXPECT_EQ(lagged_effect(x, std::vector<double>{1, 0, 0}), (std::vector<double>{0, 1, 2, 3, 4}));
    const auto draw = gen_lagged_effect(500, 4);
    ASSERT_EQ(draw.c.size(), 3u);
    for (double c : draw.c) {
        EXPECT_GT(c, 0.0);
        EXPECT_LE(c, 1.0);
    }
    EXPECT_EQ(lagged_effect(draw.x, draw.c), draw.effect);
    EXPECT_EQ(*std::min_element(draw.x.begin(), draw.x.end()), 0.0);
    EXPECT_EQ(*std::max_element(draw.x.begin(), draw.x.end()), 1.0);
}

TEST(Synth, ScenarioTableMatchesReference)
{
    using C = SynthComponent;
    // independent transcription of the benchmark's component table
    const std::vector<std::pair<std::string, std::set<C>>> expected = {
        {"S-TS", {C::Trend, C::Monthly, C::Yearly}},
        {"S-EF", {C::Event, C::Future}},
        {"S-TSEF", {C::Trend, C::Monthly, C::Yearly, C::Event, C::Future}},
        {"S-mTSEF", {C::Trend, C::Monthly, C::Yearly, C::Event, C::Future}},
        {"S-AL", {C::Ar, C::Lagged}},
        {"S-TSAL", {C::Trend, C::Monthly, C::Yearly, C::Ar, C::Lagged}},
        {"S-TSEFAL", {C::Trend, C::Monthly, C::Yearly, C::Event, C::Future, C::Ar, C::Lagged}},
    };
    ASSERT_EQ(scenario_table().size(), expected.size());
    for (const auto& [id, comps] : expected) {
        const auto& s = find_scenario(id);
        EXPECT_EQ(std::set<C>(s.components.begin(), s.components.end()), comps) << id;
        EXPECT_EQ(s.components.size(), comps.size()) << id;
        EXPECT_EQ(s.multiplicative, id == "S-mTSEF") << id;
    }
    EXPECT_THROW(find_scenario("S-XX"), ParseError);
}

TEST(Synth, ComposeIsReproducibleAndScaled)
{
    SynthOptions opt;
    opt.length = 800;
    opt.seed = 3;
    for (const auto& sc : scenario_table()) {
        const auto a = compose_scenario(sc, opt, 1);
        const auto b = compose_scenario(sc, opt, 1);
        EXPECT_EQ(a.data.y, b.data.y) << sc.id;
        EXPECT_EQ(a.data.columns, b.data.columns) << sc.id;
        EXPECT_NE(compose_scenario(sc, opt, 2).data.y, a.data.y) << sc.id;
        for (const auto& [name, s] : a.truth.scaled) {
            EXPECT_NEAR(*std::min_element(s.begin(), s.end()), 0.0, 1e-12) << sc.id << ' ' << name;
            EXPECT_NEAR(*std::max_element(s.begin(), s.end()), 1.0, 1e-12) << sc.id << ' ' << name;
        }
        // contributions sum to the noiseless aggregate on [0, 1]
        std::vector<double> total(opt.length, 0.0);
        for (const auto& [name, c] : a.truth.contribution) {
            for (std::size_t t = 0; t < opt.length; ++t) {
                total[t] += c[t];
            }
        }
        const double lo = *std::min_element(total.begin(), total.end());
        const double hi = *std::max_element(total.begin(), total.end());
        EXPECT_NEAR(hi - lo, 1.0, 1e-12) << sc.id;
        double resid = 0.0;
        for (std::size_t t = 0; t < opt.length; ++t) {
            resid += std::pow(a.data.y[t] - (total[t] - lo), 2);
        }
        EXPECT_NEAR(std::sqrt(resid / opt.length), opt.noise_sigma, 0.01) << sc.id;
    }
}

TEST(Synth, SingleComponentAggregateIsThatComponent)
{
    SynthOptions opt;
    opt.length = 500;
    opt.noise_sigma = 0.0;
    const ScenarioDef only_trend{"T", {SynthComponent::Trend}, false};
    const auto s = compose_scenario(only_trend, opt);
    for (std::size_t t = 0; t < opt.length; ++t) {
        EXPECT_NEAR(s.data.y[t], s.truth.scaled.at("trend")[t], 1e-12);
    }
}

TEST(Synth, MultiplicativeScalesByTrend)
{
    SynthOptions opt;
    opt.length = 600;
    opt.noise_sigma = 0.0;
    const auto s = compose_scenario(find_scenario("S-mTSEF"), opt);
    const auto& tr = s.truth.scaled.at("trend");
    const double range = s.truth.aggregate_max - s.truth.aggregate_min;
    for (std::size_t t = 0; t < opt.length; t += 37) {
        double agg = tr[t];
        for (const auto& name : {"monthly", "yearly", "event", "future"}) {
            agg += tr[t] * s.truth.scaled.at(name)[t];
        }
        EXPECT_NEAR(s.data.y[t], (agg - s.truth.aggregate_min) / range, 1e-12);
    }
    EXPECT_TRUE(s.data.has_column("event"));
    EXPECT_TRUE(s.data.has_column("future"));
}

TEST(Synth, ScoreDecomposition)
{
    ComponentTruth truth;
    truth.contribution["a"] = {1, 2, 3, 4};
    truth.contribution["b"] = {0, 1, 0, 1};
    std::map<std::string, std::vector<double>> pred;
    pred["a"] = {11, 12, 13, 14};
    auto s = score_decomposition(truth, pred);
    EXPECT_NEAR(s.at("a"), 0.0, 1e-15);
    // absent prediction: the component's (population) standard deviation
    EXPECT_NEAR(s.at("b"), 0.5, 1e-15);
    pred["b"] = {5, 6, 5, 6};
    EXPECT_NEAR(score_decomposition(truth, pred).at("b"), 0.0, 1e-15);
    pred["b"] = {1, 2};
    EXPECT_THROW(score_decomposition(truth, pred), LengthMismatch);
}

TEST(Synth, WriteScenarioFiles)
{
    const auto dir = std::filesystem::temp_directory_path() / "nprophet_synth_test";
    std::filesystem::remove_all(dir);
    SynthOptions opt;
    opt.length = 100;
    opt.series = 2;
    const auto files = write_scenario(find_scenario("S-AL"), opt, dir);
    ASSERT_GE(files.size(), 2u);
    std::ifstream in(dir / "S-AL_1.csv");
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("ds,y", 0), 0u);
    EXPECT_NE(header.find(",x"), std::string::npos);
    EXPECT_NE(header.find("truth_ar"), std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(dir / "S-AL_manifest.json"));
    std::filesystem::remove_all(dir);
}
