#pragma once

#include <array>
#include <cstdint>

namespace fblnet {

/// Philox 4x32-10 counter-based block cipher (Salmon et al., Random123).
/// Stateless: a 64-bit key and a 128-bit counter map to 4x32 random bits.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t key, std::array<std::uint32_t, 4> counter);

/// One reproducible random substream, keyed by (seed, sample_index, stream_id).
/// Streams for distinct keys are independent; draws within a stream are
/// sequential. Construction is trivial, so a fresh stream per Monte Carlo
/// sample keeps results independent of worker count and scheduling.
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t sample_index, std::uint32_t stream_id = 0)
        : key_(seed),
          c0_(static_cast<std::uint32_t>(sample_index)),
          c1_(static_cast<std::uint32_t>(sample_index >> 32)),
          stream_id_(stream_id) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Unit-mean exponential variate.
    double exponential();

    /// Poisson variate with the given mean; inversion for small means,
    /// transformed rejection (PTRS) for large ones.
    std::int64_t poisson(double mean);

private:
    void refill();

    std::uint64_t key_;
    std::uint32_t c0_, c1_;
    std::uint32_t stream_id_;
    std::uint32_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

} // namespace fblnet
