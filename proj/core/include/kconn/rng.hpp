#pragma once

#include <cstdint>
#include <limits>

namespace kconn {

/// Finalizing mix of SplitMix64; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Derives an independent stream seed from a master seed and a stream index.
constexpr std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(mix64(master ^ 0x6a09e667f3bcc909ULL) + stream * 0x9e3779b97f4a7c15ULL);
}

/// Counter-based random stream (SplitMix64). A stream is a pure function of
/// (master seed, stream index), so trial randomness is independent of
/// scheduling order across workers. Value-like and cheap to construct.
///
/// Satisfies UniformRandomBitGenerator, but the sampling helpers below are
/// used instead of <random> distributions so output is identical across
/// standard library implementations.
class RngStream {
  public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : state_(derive_stream_seed(master_seed, stream_index)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform integer in [0, bound). Debiased (Lemire rejection).
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t threshold = (-bound) % bound;
        while (true) {
            std::uint64_t x = (*this)();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            if (static_cast<std::uint64_t>(m) >= threshold)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace kconn
