#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace poissonbm {

//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 block function (Salmon et al., SC'11).
 *
 * A keyed bijection on 128-bit counters: distinct counters under one key map
 * to distinct output blocks.
 */
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) noexcept;
};

//---------------------------------------------------------------------------//
/*!
 * Stateless-in-spirit random stream: output block b is
 * Philox(key = seed, counter = (b_lo, b_hi, stream_lo, stream_hi)).
 *
 * Satisfies UniformRandomBitGenerator. Two streams with different stream
 * words never produce the same counter, hence share no block.
 */
class RandomStream
{
  public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed,
                 std::uint32_t stream_lo,
                 std::uint32_t stream_hi) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept;

    // Uniform on the open interval (0, 1), 53-bit resolution
    double uniform() noexcept;
    // Unit-mean exponential by inversion: -log(U)
    double exponential() noexcept;

  private:
    Philox4x32::Key key_;
    std::uint32_t stream_lo_;
    std::uint32_t stream_hi_;
    std::uint64_t block_ = 0;
    Philox4x32::Counter buffer_{};
    int consumed_ = 2;  // 64-bit words used from buffer_
};

/// Per-replication stream for (ε index, replication index) under a seed.
RandomStream derive_stream(std::uint64_t master_seed,
                           std::uint32_t epsilon_index,
                           std::uint32_t replication_index) noexcept;

}  // namespace poissonbm
