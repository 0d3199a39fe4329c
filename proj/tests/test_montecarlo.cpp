#include <doctest.h>

#include <cmath>
#include <set>

#include "fblnet/fbl.hpp"
#include "fblnet/montecarlo.hpp"

using namespace fblnet;

namespace {

NetworkParams params_at(double gamma0, double lambda_per_km2) {
    NetworkParams p;
    p.lambda_density = lambda_per_km2 * 1e-6;
    p.r0 = 250.0;
    p.eta = 4.0;
    p.noise_power = 1.0;
    p.tx_power = gamma0 * std::pow(p.r0, p.eta);
    return p;
}

const auto kGauss = SymbolMomentModel::gaussian_codebook();
const auto kConst = SymbolMomentModel::constant_modulus();

} // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors from the Random123 distribution.
    auto r1 = philox4x32(0, {0, 0, 0, 0});
    CHECK(r1[0] == 0x6627e8d5u);
    CHECK(r1[1] == 0xe169c58du);
    CHECK(r1[2] == 0xbc57ac4cu);
    CHECK(r1[3] == 0x9b00dbd8u);

    auto r2 = philox4x32(0xffffffffffffffffull,
                         {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu});
    CHECK(r2[0] == 0x408f276du);
    CHECK(r2[1] == 0x41c83b0eu);
    CHECK(r2[2] == 0xa20bc7c6u);
    CHECK(r2[3] == 0x6d5451fdu);

    auto r3 = philox4x32(0x299f31d0a4093822ull,
                         {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u});
    CHECK(r3[0] == 0xd16cfe09u);
    CHECK(r3[1] == 0x94fdccebu);
    CHECK(r3[2] == 0x5001e420u);
    CHECK(r3[3] == 0x24126ea1u);
}

TEST_CASE("SampleStream substreams are reproducible and distinct") {
    SampleStream a(42, 7);
    SampleStream b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    SampleStream c(42, 8);
    SampleStream d(43, 7);
    SampleStream e(42, 7, 1);
    SampleStream ref(42, 7);
    bool all_same_c = true, all_same_d = true, all_same_e = true;
    for (int i = 0; i < 16; ++i) {
        const auto r = ref.next_u64();
        all_same_c &= (c.next_u64() == r);
        all_same_d &= (d.next_u64() == r);
        all_same_e &= (e.next_u64() == r);
    }
    CHECK(!all_same_c);
    CHECK(!all_same_d);
    CHECK(!all_same_e);
}

TEST_CASE("uniform01 stays inside the open interval") {
    SampleStream s(1, 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("poisson sampling matches its mean") {
    SUBCASE("small mean (inversion)") {
        SampleStream s(5, 0);
        const double mean = 4.2;
        const int n = 200000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto k = static_cast<double>(s.poisson(mean));
            sum += k;
            sum_sq += k * k;
        }
        const double m = sum / n;
        CHECK(std::abs(m - mean) < 3.0 * std::sqrt(mean / n));
        const double var = sum_sq / n - m * m;
        CHECK(var == doctest::Approx(mean).epsilon(0.05));
    }
    SUBCASE("large mean (PTRS)") {
        SampleStream s(6, 0);
        const double mean = 1256.44;
        const int n = 20000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto k = static_cast<double>(s.poisson(mean));
            sum += k;
            sum_sq += k * k;
        }
        const double m = sum / n;
        CHECK(std::abs(m - mean) < 3.0 * std::sqrt(mean / n));
        const double var = sum_sq / n - m * m;
        CHECK(var == doctest::Approx(mean).epsilon(0.1));
    }
}

TEST_CASE("sample_ppp_annulus") {
    NetworkParams p = params_at(1.0, 1.0);
    MonteCarloConfig cfg;
    cfg.r_max = 20000.0;

    SUBCASE("empty when the network is empty") {
        NetworkParams empty = p;
        empty.lambda_density = 0.0;
        SampleStream s(1, 0);
        CHECK(sample_ppp_annulus(empty, cfg, s).distances.empty());
    }

    SUBCASE("count matches lambda * pi * (r_max^2 - r0^2)") {
        const double expected = M_PI * 1e-6 * (20000.0 * 20000.0 - 250.0 * 250.0);  // 1256.44
        const int n = 100000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            SampleStream s(11, static_cast<std::uint64_t>(i));
            sum += static_cast<double>(sample_ppp_annulus(p, cfg, s).distances.size());
        }
        const double mean = sum / n;
        CHECK(std::abs(mean - expected) < 3.0 * std::sqrt(expected / n));
    }

    SUBCASE("identical seed gives the identical sample") {
        SampleStream s1(3, 9), s2(3, 9);
        const auto g1 = sample_ppp_annulus(p, cfg, s1);
        const auto g2 = sample_ppp_annulus(p, cfg, s2);
        CHECK(g1.distances == g2.distances);
    }

    SUBCASE("exclusion region is honored") {
        for (int i = 0; i < 200; ++i) {
            SampleStream s(17, static_cast<std::uint64_t>(i));
            for (double r : sample_ppp_annulus(p, cfg, s).distances) {
                CHECK(r > p.r0);
                CHECK(r <= cfg.r_max);
            }
        }
    }
}

TEST_CASE("interference_power") {
    const NetworkParams p = params_at(1.0, 1.0);
    SampleStream s(1, 0);

    SUBCASE("empty geometry") {
        CHECK(interference_power(GeometrySample{}, p, kConst, s) == 0.0);
    }
    SUBCASE("single interferer, constant modulus, exact") {
        GeometrySample g;
        g.distances = {2.0 * p.r0};
        const double expect = p.tx_power * std::pow(2.0 * p.r0, -p.eta);
        CHECK(interference_power(g, p, kConst, s) == doctest::Approx(expect).epsilon(1e-14));
    }
    SUBCASE("explicit moments rejected") {
        GeometrySample g;
        g.distances = {600.0};
        auto m = SymbolMomentModel::explicit_model({1.0, 2.0});
        CHECK_THROWS_AS(interference_power(g, p, m, s), std::invalid_argument);
    }
}

TEST_CASE("mc_laplace_B basics") {
    const NetworkParams p = params_at(1.0, 1.0);
    MonteCarloConfig cfg;
    cfg.num_samples = 200;

    SUBCASE("z = 0") {
        const Estimate e = mc_laplace_B(0.0, p, kGauss, cfg);
        CHECK(e.value == 1.0);
        CHECK(e.std_error == 0.0);
        CHECK(e.num_samples == 200);
    }
    SUBCASE("empty network") {
        NetworkParams empty = p;
        empty.lambda_density = 0.0;
        const Estimate e = mc_laplace_B(3.0, empty, kGauss, cfg);
        CHECK(e.value == 1.0);
        CHECK(e.std_error == 0.0);
    }
}

TEST_CASE("mc_laplace_B matches the closed form") {
    const NetworkParams p = params_at(1.0, 1.0);
    MonteCarloConfig cfg;
    cfg.num_samples = 100000;
    cfg.seed = 2024;
    const double z = 3.90625e9;  // normalized argument 1
    const Estimate e = mc_laplace_B(z, p, kGauss, cfg);
    const double closed = 0.85708981112170114347;
    CHECK(e.std_error > 0.0);
    CHECK(std::abs(e.value - closed) < 3.0 * e.std_error);
}

TEST_CASE("mc_laplace_B grid is bit-identical to single calls") {
    const NetworkParams p = params_at(1.0, 1.0);
    MonteCarloConfig cfg;
    cfg.num_samples = 5000;
    cfg.seed = 7;
    const std::vector<double> zs{1e8, 3.90625e9, 2e10};
    const auto grid = mc_laplace_B_grid(zs, p, kGauss, cfg);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const Estimate single = mc_laplace_B(zs[i], p, kGauss, cfg);
        CHECK(grid[i].value == single.value);
        CHECK(grid[i].std_error == single.std_error);
    }
}

TEST_CASE("estimates are independent of the worker count") {
    const NetworkParams p = params_at(10.0, 1.0);
    const double z = 3.90625e9;
    MonteCarloConfig cfg;
    cfg.num_samples = 20000;
    cfg.seed = 99;

    cfg.workers = 1;
    const Estimate a = mc_laplace_B(z, p, kGauss, cfg);
    cfg.workers = 3;
    const Estimate b = mc_laplace_B(z, p, kGauss, cfg);
    cfg.workers = 8;
    const Estimate c = mc_laplace_B(z, p, kGauss, cfg);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    CHECK(a.value == c.value);

    const FblParams fbl{128, 1e-2};
    cfg.workers = 1;
    const Estimate r1 = mc_avg_coding_rate(p, fbl, kGauss, cfg);
    cfg.workers = 5;
    const Estimate r2 = mc_avg_coding_rate(p, fbl, kGauss, cfg);
    CHECK(r1.value == r2.value);
    CHECK(r1.std_error == r2.std_error);
}

TEST_CASE("fused estimator path reproduces the public sampling ops") {
    const NetworkParams p = params_at(10.0, 1.0);
    const FblParams fbl{128, 1e-2};
    const auto thr = SinrThreshold::from_linear(1.0);
    MonteCarloConfig cfg;
    cfg.num_samples = 2000;  // a single reduction block
    cfg.seed = 31;

    const double r_max = cfg.resolve_r_max(p);
    const double tail = truncation_tail_mean(p, r_max);
    const double signal_gain = p.tx_power * std::pow(p.r0, -p.eta);
    const double qinv = q_func_inv(fbl.epsilon);

    double sum_out = 0.0;
    const double z = 1.0 / signal_gain;  // LT of zeta at 1
    double sum_lt = 0.0;
    for (std::int64_t i = 0; i < cfg.num_samples; ++i) {
        SampleStream s(cfg.seed, static_cast<std::uint64_t>(i));
        const auto geom = sample_ppp_annulus(p, cfg, s);
        const double b = interference_power(geom, p, kGauss, s) + tail;
        const double zeta = b / signal_gain;
        const double h = s.exponential();
        const double gamma = h / (1.0 / p.gamma0() + zeta);
        const double rate =
            std::log2(1.0 + gamma) -
            std::sqrt(channel_dispersion(gamma) / static_cast<double>(fbl.blocklength_n)) * qinv;
        sum_out += rate < thr.rate() ? 1.0 : 0.0;
        sum_lt += std::exp(-z * b);
    }

    const Estimate outage = mc_outage(p, thr, fbl, kGauss, cfg);
    CHECK(outage.value ==
          doctest::Approx(sum_out / static_cast<double>(cfg.num_samples)).epsilon(1e-12));

    const Estimate lt = mc_laplace_B(z, p, kGauss, cfg);
    CHECK(lt.value == doctest::Approx(sum_lt / static_cast<double>(cfg.num_samples)).epsilon(1e-12));
}

TEST_CASE("mc_capacity_dispersion against frozen no-interference values") {
    const NetworkParams p = params_at(1.0, 0.0);
    MonteCarloConfig cfg;
    cfg.num_samples = 200000;
    cfg.seed = 5;
    const auto cd = mc_capacity_dispersion(p, kGauss, cfg);
    CHECK(std::abs(cd.capacity.value - 0.86034738227088595119) < 3.0 * cd.capacity.std_error);
    CHECK(std::abs(cd.dispersion.value - 0.62060945092200421932) < 3.0 * cd.dispersion.std_error);
}

TEST_CASE("mc_avg_coding_rate limits") {
    MonteCarloConfig cfg;
    cfg.num_samples = 100000;
    cfg.seed = 12;

    SUBCASE("infinite blocklength, no interference: matches avg_capacity") {
        const NetworkParams p = params_at(1.0, 0.0);
        const Estimate e = mc_avg_coding_rate(p, FblParams{1'000'000'000'000, 1e-2}, kGauss, cfg);
        CHECK(std::abs(e.value - 0.86034738227088595119) < 3.0 * e.std_error);
    }
    SUBCASE("epsilon near one half: penalty free") {
        const NetworkParams p = params_at(10.0, 1.0);
        const Estimate rate = mc_avg_coding_rate(p, FblParams{128, 0.4999}, kGauss, cfg);
        const auto cd = mc_capacity_dispersion(p, kGauss, cfg);
        CHECK(std::abs(rate.value - cd.capacity.value) < 1e-4 + 3.0 * rate.std_error);
    }
}

TEST_CASE("mc_outage approaches the infinite-blocklength outage") {
    const NetworkParams p = params_at(31.622776601683793, 1.0);
    const auto thr = SinrThreshold::from_linear(1.0);
    MonteCarloConfig cfg;
    cfg.num_samples = 100000;
    cfg.seed = 77;
    const Estimate e = mc_outage(p, thr, FblParams{1'000'000'000'000, 1e-2}, kGauss, cfg);
    const double exact = outage_ibl(p, thr, kGauss);
    CHECK(std::abs(e.value - exact) < 3.0 * std::max(e.std_error, 1e-6));
}

TEST_CASE("annulus truncation: doubling r_max moves the LT by less than one stderr") {
    // Common-random-number comparison: the base annulus draws are shared and
    // the extension ring (r_max, 2*r_max] is sampled from its own substream.
    const NetworkParams p = params_at(1.0, 1.0);
    MonteCarloConfig cfg;
    cfg.num_samples = 20000;
    cfg.seed = 123;
    const double r_max = cfg.resolve_r_max(p);
    const double z = 3.90625e9;

    NetworkParams ring = p;
    ring.r0 = r_max;  // the extension ring starts where the base annulus ends
    MonteCarloConfig ring_cfg = cfg;
    ring_cfg.r_max = 2.0 * r_max;

    const double tail_base = truncation_tail_mean(p, r_max);
    const double tail_ext = truncation_tail_mean(p, 2.0 * r_max);

    double s1 = 0.0, s1_sq = 0.0, s2 = 0.0;
    for (std::int64_t i = 0; i < cfg.num_samples; ++i) {
        SampleStream base_stream(cfg.seed, static_cast<std::uint64_t>(i), 0);
        const auto base = sample_ppp_annulus(p, cfg, base_stream);
        const double b1 = interference_power(base, p, kGauss, base_stream) + tail_base;

        SampleStream ext_stream(cfg.seed, static_cast<std::uint64_t>(i), 1);
        const auto ext = sample_ppp_annulus(ring, ring_cfg, ext_stream);
        const double b2 = interference_power(ext, p, kGauss, ext_stream);

        const double x1 = std::exp(-z * b1);
        const double x2 = std::exp(-z * (b1 - tail_base + b2 + tail_ext));
        s1 += x1;
        s1_sq += x1 * x1;
        s2 += x2;
    }
    const auto n = static_cast<double>(cfg.num_samples);
    const double mean1 = s1 / n;
    const double stderr1 = std::sqrt(((s1_sq - n * mean1 * mean1) / (n - 1.0)) / n);
    const double mean2 = s2 / n;
    CHECK(std::abs(mean1 - mean2) < stderr1);
}

TEST_CASE("MonteCarloConfig invariants") {
    const NetworkParams p = params_at(1.0, 1.0);
    MonteCarloConfig cfg;
    cfg.num_samples = 0;
    CHECK_THROWS_AS(cfg.validate(p), std::invalid_argument);
    cfg = {};
    cfg.r_max = 100.0;  // below r0
    CHECK_THROWS_AS(cfg.validate(p), std::invalid_argument);
    cfg = {};
    CHECK(cfg.resolve_r_max(p) == doctest::Approx(30.0 * 250.0));
}
