#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "poissonbm/poisson.hpp"

using namespace poissonbm;

namespace {

// Midpoint Riemann sum of trig(θ N_x) with N read off the jump list directly
double riemann(PoissonPath const& p, double theta, double a, double b, double h, TrigKind kind)
{
    std::size_t const steps = static_cast<std::size_t>(std::ceil((b - a) / h));
    double const dx = (b - a) / static_cast<double>(steps);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < steps; ++i)
    {
        double const x = a + (static_cast<double>(i) + 0.5) * dx;
        while (n < p.jump_times.size() && p.jump_times[n] <= x)
            ++n;
        double const arg = theta * static_cast<double>(n);
        sum += kind == TrigKind::kCos ? std::cos(arg) : std::sin(arg);
    }
    return sum * dx;
}

}  // namespace

TEST(PoissonPath, ZeroHorizonIsEmpty)
{
    auto s = derive_stream(1, 0, 0);
    auto p = sample_poisson_path(0.0, s);
    EXPECT_TRUE(p.jump_times.empty());
    EXPECT_EQ(p.count_at(0.0), 0u);
}

TEST(PoissonPath, NegativeHorizonIsAnError)
{
    auto s = derive_stream(1, 0, 0);
    EXPECT_THROW(sample_poisson_path(-1.0, s), std::invalid_argument);
    EXPECT_THROW(sample_poisson_path(NAN, s), std::invalid_argument);
}

TEST(PoissonPath, StrictlyIncreasingWithinHorizon)
{
    for (std::uint32_t seed = 0; seed < 50; ++seed)
    {
        auto s = derive_stream(seed, 1, 2);
        auto p = sample_poisson_path(500.0, s);
        for (std::size_t k = 0; k < p.jump_times.size(); ++k)
        {
            ASSERT_GT(p.jump_times[k], k ? p.jump_times[k - 1] : 0.0);
            ASSERT_LE(p.jump_times[k], 500.0);
        }
    }
}

TEST(PoissonPath, SameStreamSamePath)
{
    auto a = derive_stream(3, 4, 5);
    auto b = derive_stream(3, 4, 5);
    EXPECT_EQ(sample_poisson_path(100.0, a).jump_times, sample_poisson_path(100.0, b).jump_times);
}

TEST(PoissonPath, MeanCountMatchesHorizon)
{
    constexpr double h = 1e4;
    constexpr int seeds = 1000;
    double sum = 0.0, sum2 = 0.0;
    for (std::uint32_t r = 0; r < seeds; ++r)
    {
        auto s = derive_stream(77, 0, r);
        double n = static_cast<double>(sample_poisson_path(h, s).jump_times.size());
        sum += n;
        sum2 += n * n;
    }
    double const mean = sum / seeds;
    double const sd = std::sqrt((sum2 - seeds * mean * mean) / (seeds - 1));
    EXPECT_NEAR(mean, h, 4 * sd / std::sqrt(double(seeds)));
}

TEST(PoissonPath, CountAt)
{
    PoissonPath p{3.0, {0.5, 1.0, 2.5}};
    EXPECT_EQ(p.count_at(0.0), 0u);
    EXPECT_EQ(p.count_at(0.5), 1u);
    EXPECT_EQ(p.count_at(0.99), 1u);
    EXPECT_EQ(p.count_at(1.0), 2u);
    EXPECT_EQ(p.count_at(3.0), 3u);
}

TEST(TrigIntegral, NoJumps)
{
    PoissonPath p{2.0, {}};
    EXPECT_EQ(trig_integral(p, Angle::radians(1.234), 0.0, 2.0, TrigKind::kCos), 2.0);
    EXPECT_EQ(trig_integral(p, Angle::radians(1.234), 0.0, 2.0, TrigKind::kSin), 0.0);
}

TEST(TrigIntegral, SingleJumpStroockForm)
{
    PoissonPath p{2.0, {1.0}};
    EXPECT_EQ(trig_integral(p, parse_angle("pi"), 0.0, 2.0, TrigKind::kCos), 0.0);
}

TEST(TrigIntegral, TwoJumpsQuarterTurn)
{
    PoissonPath p{1.5, {0.5, 1.0}};
    auto const q = parse_angle("1/2 pi");
    EXPECT_EQ(trig_integral(p, q, 0.0, 1.5, TrigKind::kCos), 0.0);
    EXPECT_EQ(trig_integral(p, q, 0.0, 1.5, TrigKind::kSin), 0.5);
    EXPECT_NEAR(riemann(p, std::numbers::pi / 2, 0.0, 1.5, 1e-6, TrigKind::kSin), 0.5, 1e-6);
}

TEST(TrigIntegral, InvalidIntervals)
{
    PoissonPath p{2.0, {1.0}};
    auto const t = Angle::radians(1.0);
    EXPECT_THROW(trig_integral(p, t, 0.0, 2.5, TrigKind::kCos), std::invalid_argument);
    EXPECT_THROW(trig_integral(p, t, 1.5, 1.0, TrigKind::kCos), std::invalid_argument);
    EXPECT_THROW(trig_integral(p, t, -0.5, 1.0, TrigKind::kCos), std::invalid_argument);
    EXPECT_EQ(trig_integral(p, t, 1.0, 1.0, TrigKind::kCos), 0.0);
}

TEST(TrigIntegral, MatchesRiemannOracle)
{
    auto s = derive_stream(11, 0, 0);
    for (int c = 0; c < 40; ++c)
    {
        auto p = sample_poisson_path(20.0, s);
        double const theta = 6.0 * s.uniform() + 0.1;
        double a = 20.0 * s.uniform();
        double b = 20.0 * s.uniform();
        if (a > b)
            std::swap(a, b);
        for (auto kind : {TrigKind::kCos, TrigKind::kSin})
        {
            double const exact = trig_integral(p, Angle::radians(theta), a, b, kind);
            double const approx = riemann(p, theta, a, b, 1e-5, kind);
            EXPECT_NEAR(exact, approx, 1e-4 * (b - a) + 1e-12);
            EXPECT_LE(std::fabs(exact), b - a + 1e-12);
        }
    }
}

TEST(TrigIntegral, Additivity)
{
    auto s = derive_stream(12, 0, 0);
    for (int c = 0; c < 200; ++c)
    {
        auto p = sample_poisson_path(50.0, s);
        double x[3] = {50 * s.uniform(), 50 * s.uniform(), 50 * s.uniform()};
        std::sort(x, x + 3);
        auto const theta = Angle::radians(0.1 + 6 * s.uniform());
        for (auto kind : {TrigKind::kCos, TrigKind::kSin})
        {
            double const whole = trig_integral(p, theta, x[0], x[2], kind);
            double const parts = trig_integral(p, theta, x[0], x[1], kind)
                                 + trig_integral(p, theta, x[1], x[2], kind);
            double const ulp = std::nextafter(50.0, 100.0) - 50.0;
            EXPECT_LE(std::fabs(whole - parts), 8 * ulp);
        }
    }
}

TEST(CharFn, ClosedFormValues)
{
    auto one = char_fn(Angle::radians(2.0), 0.0);
    EXPECT_EQ(one.real(), 1.0);
    EXPECT_EQ(one.imag(), 0.0);
    auto pi = char_fn(parse_angle("pi"), 1.0);
    EXPECT_DOUBLE_EQ(pi.real(), std::exp(-2.0));
    EXPECT_EQ(pi.imag(), 0.0);
    auto q = char_fn(parse_angle("1/2 pi"), 2.0);
    EXPECT_DOUBLE_EQ(q.real(), std::exp(-2.0) * std::cos(2.0));
    EXPECT_DOUBLE_EQ(q.imag(), std::exp(-2.0) * std::sin(2.0));
}

TEST(CharFn, ModulusBelowOneForPositiveTime)
{
    for (double theta : {0.3, 1.0, 2.0, 3.0, 4.5})
    {
        for (double s : {0.01, 0.5, 3.0})
            EXPECT_LT(std::abs(char_fn(Angle::radians(theta), s)), 1.0);
    }
}

TEST(CharFn, MonteCarloAgreement)
{
    double const theta = 2.0, t = 3.0;
    constexpr int M = 100'000;
    double sum = 0.0, sum2 = 0.0;
    for (std::uint32_t r = 0; r < M; ++r)
    {
        auto s = derive_stream(5150, 0, r);
        auto p = sample_poisson_path(t, s);
        double v = std::cos(theta * static_cast<double>(p.jump_times.size()));
        sum += v;
        sum2 += v * v;
    }
    double const mean = sum / M;
    double const se = std::sqrt((sum2 / M - mean * mean) / (M - 1));
    EXPECT_NEAR(mean, char_fn(Angle::radians(theta), t).real(), 4 * se);
}

TEST(DecayFactor, Values)
{
    EXPECT_EQ(decay_factor(std::numbers::pi), 2.0);
    EXPECT_EQ(decay_factor(0.0), 0.0);
    EXPECT_DOUBLE_EQ(decay_factor(std::numbers::pi / 2), 1.0);
}
