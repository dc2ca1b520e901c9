#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace uavcoop {

/// SplitMix64 finalizer, used to derive independent stream keys.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Key for (base seed, drop index, substream). Distinct triples give unrelated keys.
[[nodiscard]] constexpr std::uint64_t stream_key(std::uint64_t base_seed, std::uint64_t drop,
                                                 std::uint64_t substream) noexcept
{
    return splitmix64(splitmix64(splitmix64(base_seed) ^ drop) ^ (substream * 0xd1b54a32d192ed03ULL));
}

/// xoshiro256++; satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) noexcept
    {
        for (std::uint64_t i = 0; i < 4; ++i) s_[i] = splitmix64(seed + i * 0x9e3779b97f4a7c15ULL);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Unit-rate exponential.
    double exponential() noexcept { return -std::log1p(-uniform()); }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4]{};
};

}  // namespace uavcoop
