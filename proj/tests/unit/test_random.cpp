#include <cmath>
#include <cstdint>
#include <set>

#include <gtest/gtest.h>

#include "poissonbm/random.hpp"

using namespace poissonbm;

// Known-answer vectors published with the Random123 distribution
TEST(Philox, KnownAnswerVectors)
{
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    EXPECT_EQ(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}),
              (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                   K{0xffffffff, 0xffffffff}),
              (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                   K{0xa4093822, 0x299f31d0}),
              (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(DeriveStream, SameTupleSameOutput)
{
    auto a = derive_stream(42, 3, 17);
    auto b = derive_stream(42, 3, 17);
    for (int i = 0; i < 10000; ++i)
        ASSERT_EQ(a(), b());
}

TEST(DeriveStream, DistinctTuplesDiffer)
{
    auto a = derive_stream(42, 3, 17);
    auto b = derive_stream(42, 3, 18);
    auto c = derive_stream(42, 4, 17);
    auto d = derive_stream(43, 3, 17);
    bool ab = false, ac = false, ad = false;
    for (int i = 0; i < 10000; ++i)
    {
        auto x = a();
        ab |= x != b();
        ac |= x != c();
        ad |= x != d();
    }
    EXPECT_TRUE(ab);
    EXPECT_TRUE(ac);
    EXPECT_TRUE(ad);
}

TEST(DeriveStream, NoSharedBlocksAcrossReplications)
{
    // The first outputs of many streams are pairwise distinct
    std::set<std::uint64_t> seen;
    for (std::uint32_t r = 0; r < 2000; ++r)
    {
        auto s = derive_stream(7, 0, r);
        for (int i = 0; i < 8; ++i)
            seen.insert(s());
    }
    EXPECT_EQ(seen.size(), 16000u);
}

TEST(RandomStream, UniformMeanWithinCltBand)
{
    auto s = derive_stream(2024, 0, 0);
    double sum = 0.0;
    constexpr int n = 1'000'000;
    for (int i = 0; i < n; ++i)
    {
        double u = s.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.002);
}

TEST(RandomStream, ExponentialMoments)
{
    auto s = derive_stream(99, 1, 2);
    constexpr int n = 400'000;
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        double x = s.exponential();
        ASSERT_GT(x, 0.0);
        m1 += x;
        m2 += x * x;
    }
    m1 /= n;
    m2 /= n;
    // mean 1 (sd 1/√n), second moment 2 (sd √20/√n)
    EXPECT_NEAR(m1, 1.0, 4.0 / std::sqrt(n));
    EXPECT_NEAR(m2, 2.0, 4.0 * std::sqrt(20.0 / n));
}

TEST(RandomStream, BitBalance)
{
    auto s = derive_stream(5, 5, 5);
    constexpr int n = 100'000;
    int counts[64] = {};
    for (int i = 0; i < n; ++i)
    {
        auto x = s();
        for (int b = 0; b < 64; ++b)
            counts[b] += (x >> b) & 1u;
    }
    for (int b = 0; b < 64; ++b)
        EXPECT_NEAR(counts[b], n / 2, 5 * std::sqrt(n / 4.0)) << "bit " << b;
}
