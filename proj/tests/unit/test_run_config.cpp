#include <algorithm>
#include <string>

#include <gtest/gtest.h>

#include "poissonbm/run_config.hpp"

using namespace poissonbm;

namespace {

std::string error_of(std::string const& text)
{
    try
    {
        parse_run_config(text);
    }
    catch (ConfigError const& e)
    {
        return e.what();
    }
    return "";
}

bool contains(std::string const& haystack, std::string const& needle)
{
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST(RunConfig, ParsesEveryKey)
{
    auto c = parse_run_config(R"(# reference desk run
cos_block = 1/2 pi, 2.2
sin_block = 1/2 pi , 1.1   # trailing comment
allow_pi_in_cos = false
horizon_T = 1
epsilons = 0.4, 0.2, 0.1, 0.05
replications = 5000
grid_points = 64
master_seed = 18446744073709551615
checks = covariance, qv
output_dir = out/run 1
allow_invalid_theta = no
reduction = sequential
)");
    ASSERT_EQ(c.theta.cos_block.size(), 2u);
    EXPECT_EQ(c.theta.cos_block[0].to_string(), "1/2 pi");
    EXPECT_EQ(c.theta.cos_block[1].value(), 2.2);
    EXPECT_EQ(c.theta.sin_block[1].value(), 1.1);
    EXPECT_EQ(c.epsilons, (std::vector<double>{0.4, 0.2, 0.1, 0.05}));
    EXPECT_EQ(c.replications, 5000u);
    EXPECT_EQ(c.master_seed, 18446744073709551615ull);
    EXPECT_EQ(c.checks, (std::vector<Check>{Check::kCovariance, Check::kQuadraticVariation}));
    EXPECT_EQ(c.output_dir, "out/run 1");
    EXPECT_FALSE(c.allow_invalid_theta);
    EXPECT_EQ(c.reduction, ReductionMode::kSequential);
}

TEST(RunConfig, DefaultsApply)
{
    auto c = parse_run_config("cos_block = 2.2\nepsilons = 0.1\n");
    EXPECT_EQ(c.horizon_T, 1.0);
    EXPECT_EQ(c.grid_points, 64u);
    EXPECT_EQ(c.replications, 1000u);
    EXPECT_EQ(c.reduction, ReductionMode::kFixedTree);
    EXPECT_TRUE(c.checks.empty());
}

TEST(RunConfig, ErrorsNameTheLine)
{
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 0.1\nbogus = 3\n"), "line 3"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\ncos_block = 1.1\nepsilons = 0.1\n"), "duplicate"));
    EXPECT_TRUE(contains(error_of("cos_block 2.2\n"), "line 1"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 0.1x\n"), "line 2"));
    EXPECT_TRUE(contains(error_of("cos_block = 1/0 pi\nepsilons = 0.1\n"), "line 1"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 0.1\nchecks = qv, nope\n"), "nope"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 0.1\nreduction = fast\n"), "line 3"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 0.1\nreplications = -5\n"), "line 3"));
}

TEST(RunConfig, InvariantViolations)
{
    EXPECT_TRUE(contains(error_of("epsilons = 0.1\n"), "no process components"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\n"), "nonempty"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 0.1, 0.2\n"), "decreasing"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 1.5\n"), "(0, 1]"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 0.00001\n"), "resource cap exceeded"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 0.1\nreplications = 1\n"), "at least 2"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 0.1\ngrid_points = 0\n"), "grid_points"));
    EXPECT_TRUE(contains(error_of("cos_block = 2.2\nepsilons = 0.1\nhorizon_T = 0\n"), "horizon_T"));
    // 2T/ε² exactly at the cap is admissible
    EXPECT_EQ(error_of("cos_block = 2.2\nepsilons = 0.1\nhorizon_T = 5000000\n"), "");
}

TEST(RunConfig, TextRoundTrip)
{
    auto c = parse_run_config(
        "cos_block = pi, 0.7\nallow_pi_in_cos = true\nsin_block = 1/3 pi\nepsilons = 0.3, 0.1\n"
        "checks = stroock, normality\nmaster_seed = 99\nreduction = sequential\n");
    auto d = parse_run_config(to_config_text(c));
    EXPECT_EQ(to_config_text(c), to_config_text(d));
    EXPECT_EQ(d.theta.cos_block[0].to_string(), "pi");
    EXPECT_EQ(d.theta.cos_block[1].value(), 0.7);
    EXPECT_EQ(d.checks, c.checks);
    EXPECT_EQ(d.master_seed, 99u);
}

TEST(RunConfig, EffectiveChecks)
{
    auto plain = parse_run_config("cos_block = 2.2\nepsilons = 0.1\n").effective_checks();
    EXPECT_EQ(plain.size(), 6u);
    EXPECT_EQ(std::count(plain.begin(), plain.end(), Check::kStroock), 0);

    auto pi = parse_run_config("cos_block = pi\nallow_pi_in_cos = true\nepsilons = 0.1\n").effective_checks();
    EXPECT_EQ(std::count(pi.begin(), pi.end(), Check::kStroock), 1);

    auto bad = parse_run_config("cos_block = 1.0, 1.0\nallow_invalid_theta = true\nepsilons = 0.1\n")
                   .effective_checks();
    EXPECT_EQ(std::count(bad.begin(), bad.end(), Check::kDegeneracy), 1);

    auto chosen = parse_run_config("cos_block = 2.2\nepsilons = 0.1\nchecks = martingale\n").effective_checks();
    EXPECT_EQ(chosen, std::vector<Check>{Check::kMartingale});
}

TEST(RunConfig, MissingFile)
{
    EXPECT_THROW(load_run_config("/nonexistent/poissonbm.cfg"), ConfigError);
}
