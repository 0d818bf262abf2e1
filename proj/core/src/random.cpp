#include "poissonbm/random.hpp"

#include <cmath>

namespace poissonbm {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a,
                    std::uint32_t b,
                    std::uint32_t& lo,
                    std::uint32_t& hi) noexcept
{
    std::uint64_t const p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    hi = static_cast<std::uint32_t>(p >> 32);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t lo0, hi0, lo1, hi1;
        mulhilo(kMul0, ctr[0], lo0, hi0);
        mulhilo(kMul1, ctr[2], lo1, hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RandomStream::RandomStream(std::uint64_t seed,
                           std::uint32_t stream_lo,
                           std::uint32_t stream_hi) noexcept
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)}
    , stream_lo_(stream_lo)
    , stream_hi_(stream_hi)
{
}

RandomStream::result_type RandomStream::operator()() noexcept
{
    if (consumed_ == 2)
    {
        buffer_ = Philox4x32::generate({static_cast<std::uint32_t>(block_),
                                        static_cast<std::uint32_t>(block_ >> 32),
                                        stream_lo_,
                                        stream_hi_},
                                       key_);
        ++block_;
        consumed_ = 0;
    }
    auto const i = static_cast<std::size_t>(2 * consumed_++);
    return static_cast<std::uint64_t>(buffer_[i])
           | (static_cast<std::uint64_t>(buffer_[i + 1]) << 32);
}

double RandomStream::uniform() noexcept
{
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() noexcept
{
    return -std::log(uniform());
}

RandomStream derive_stream(std::uint64_t master_seed,
                           std::uint32_t epsilon_index,
                           std::uint32_t replication_index) noexcept
{
    return RandomStream(master_seed, replication_index, epsilon_index);
}

}  // namespace poissonbm
