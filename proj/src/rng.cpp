#include "fblnet/rng.hpp"

#include <cmath>

namespace fblnet {

std::array<std::uint32_t, 4> philox4x32(std::uint64_t key, std::array<std::uint32_t, 4> c) {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;

    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
        c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0,
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1,
             static_cast<std::uint32_t>(p0)};
        k0 += kW0;
        k1 += kW1;
    }
    return c;
}

void SampleStream::refill() {
    buf_ = philox4x32(key_, {c0_, c1_, block_++, stream_id_});
    pos_ = 0;
}

double SampleStream::exponential() { return -std::log(uniform01()); }

namespace {

// log(k!) table for small k, Stirling series beyond.
double log_factorial(std::int64_t k) {
    static const auto table = [] {
        std::array<double, 1024> t{};
        t[0] = 0.0;
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    if (k < static_cast<std::int64_t>(table.size())) return table[static_cast<std::size_t>(k)];
    const double x = static_cast<double>(k);
    const double inv = 1.0 / x;
    return (x + 0.5) * std::log(x) - x + 0.9189385332046727418 +
           inv * (1.0 / 12.0 - inv * inv * (1.0 / 360.0 - inv * inv / 1260.0));
}

} // namespace

std::int64_t SampleStream::poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
        // Inversion by sequential search.
        const double l = std::exp(-mean);
        double p = 1.0;
        std::int64_t k = 0;
        do {
            p *= uniform01();
            if (p <= l) return k;
            ++k;
        } while (k < 2000);
        return k;
    }
    // Hoermann's PTRS transformed rejection, valid for mean >= 10.
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        const double u = uniform01() - 0.5;
        const double v = uniform01();
        const double us = 0.5 - std::abs(u);
        const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + mean + 0.43));
        if (us >= 0.07 && v <= vr) return k;
        if (k < 0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            static_cast<double>(k) * log_mean - mean - log_factorial(k)) {
            return k;
        }
    }
}

} // namespace fblnet
