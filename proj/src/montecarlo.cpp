#include "fblnet/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace fblnet {

void MonteCarloConfig::validate(const NetworkParams& params) const {
    params.validate();
    if (num_samples < 1) throw std::invalid_argument("MonteCarloConfig.num_samples must be >= 1");
    if (r_max > 0.0 && !(r_max > params.r0))
        throw std::invalid_argument("MonteCarloConfig.r_max must exceed r0");
}

double MonteCarloConfig::resolve_r_max(const NetworkParams& params) const {
    return r_max > 0.0 ? r_max : kDefaultRmaxFactor * params.r0;
}

double truncation_tail_mean(const NetworkParams& params, double r_max) {
    return 2.0 * M_PI * params.lambda_density * params.tx_power *
           std::pow(r_max, 2.0 - params.eta) / (params.eta - 2.0);
}

namespace {

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

constexpr std::int64_t kBlockSize = 4096;

// Runs per_sample for every sample index, accumulating nstats statistics.
// Partial sums live in per-block slots indexed by sample position only, and
// the final reduction walks blocks in order, so the totals are bit-identical
// for any worker count or scheduling.
void run_samples(const MonteCarloConfig& cfg, int nstats,
                 const std::function<void(std::uint64_t, double*)>& per_sample,
                 std::vector<double>& totals) {
    const std::int64_t n = cfg.num_samples;
    const std::int64_t num_blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<double> block_sums(static_cast<std::size_t>(num_blocks) * nstats, 0.0);

    auto run_block = [&](std::int64_t b) {
        double* sums = block_sums.data() + static_cast<std::size_t>(b) * nstats;
        const std::int64_t lo = b * kBlockSize;
        const std::int64_t hi = std::min(n, lo + kBlockSize);
        for (std::int64_t i = lo; i < hi; ++i) {
            per_sample(static_cast<std::uint64_t>(i), sums);
        }
    };

    const int workers = static_cast<int>(std::min<std::int64_t>(resolve_workers(cfg.workers), num_blocks));
    if (workers <= 1) {
        for (std::int64_t b = 0; b < num_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::int64_t b = next.fetch_add(1, std::memory_order_relaxed);
                    if (b >= num_blocks) return;
                    run_block(b);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    totals.assign(static_cast<std::size_t>(nstats), 0.0);
    for (std::int64_t b = 0; b < num_blocks; ++b) {
        const double* sums = block_sums.data() + static_cast<std::size_t>(b) * nstats;
        for (int s = 0; s < nstats; ++s) totals[static_cast<std::size_t>(s)] += sums[s];
    }
}

Estimate make_estimate(double sum, double sum_sq, std::int64_t n) {
    const double mean = sum / static_cast<double>(n);
    double stderr_ = 0.0;
    if (n > 1) {
        const double var = (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
        stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
    }
    return {mean, stderr_, n};
}

// Precomputed constants for drawing aggregate interference realizations.
// The draw order (count, all radii, then symbol powers) matches the public
// sample_ppp_annulus / interference_power pair.
struct InterferenceSampler {
    double mean_count;
    double r0_sq;
    double span_sq;       // r_max^2 - r0^2
    double tx_power;
    double eta;
    bool eta4;
    bool gaussian;
    double tail_mean;

    InterferenceSampler(const NetworkParams& params, const SymbolMomentModel& moments,
                        const MonteCarloConfig& cfg) {
        const double r_max = cfg.resolve_r_max(params);
        r0_sq = params.r0 * params.r0;
        span_sq = r_max * r_max - r0_sq;
        mean_count = params.lambda_density * M_PI * span_sq;
        tx_power = params.tx_power;
        eta = params.eta;
        eta4 = params.eta == 4.0;
        gaussian = moments.kind == SymbolMomentModel::Kind::gaussian_codebook;
        if (moments.kind == SymbolMomentModel::Kind::explicit_moments)
            throw std::invalid_argument(
                "Monte Carlo sampling requires constant_modulus or gaussian_codebook symbols");
        tail_mean = cfg.tail_correction ? truncation_tail_mean(params, r_max) : 0.0;
    }

    double sample(SampleStream& stream, std::vector<double>& r_sq_buf) const {
        const std::int64_t count = stream.poisson(mean_count);
        r_sq_buf.clear();
        r_sq_buf.reserve(static_cast<std::size_t>(count));
        for (std::int64_t i = 0; i < count; ++i) {
            r_sq_buf.push_back(r0_sq + stream.uniform01() * span_sq);
        }
        double b = 0.0;
        if (eta4) {
            for (double rsq : r_sq_buf) {
                const double kernel = tx_power / (rsq * rsq);
                b += gaussian ? kernel * stream.exponential() : kernel;
            }
        } else {
            for (double rsq : r_sq_buf) {
                const double kernel = tx_power * std::pow(rsq, -0.5 * eta);
                b += gaussian ? kernel * stream.exponential() : kernel;
            }
        }
        return b + tail_mean;
    }
};

} // namespace

GeometrySample sample_ppp_annulus(const NetworkParams& params, const MonteCarloConfig& cfg,
                                  SampleStream& stream) {
    cfg.validate(params);
    const double r_max = cfg.resolve_r_max(params);
    const double r0_sq = params.r0 * params.r0;
    const double span_sq = r_max * r_max - r0_sq;
    const std::int64_t count = stream.poisson(params.lambda_density * M_PI * span_sq);

    GeometrySample geom;
    geom.distances.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        geom.distances.push_back(std::sqrt(r0_sq + stream.uniform01() * span_sq));
    }
    return geom;
}

double interference_power(const GeometrySample& geom, const NetworkParams& params,
                          const SymbolMomentModel& moments, SampleStream& stream) {
    params.validate();
    if (moments.kind == SymbolMomentModel::Kind::explicit_moments)
        throw std::invalid_argument(
            "interference_power requires constant_modulus or gaussian_codebook symbols");
    const bool gaussian = moments.kind == SymbolMomentModel::Kind::gaussian_codebook;

    double b = 0.0;
    for (double r : geom.distances) {
        const double kernel = params.tx_power * std::pow(r, -params.eta);
        b += gaussian ? kernel * stream.exponential() : kernel;
    }
    return b;
}

Estimate mc_laplace_B(double z, const NetworkParams& params, const SymbolMomentModel& moments,
                      const MonteCarloConfig& cfg) {
    const double zs[1] = {z};
    return mc_laplace_B_grid(zs, params, moments, cfg)[0];
}

std::vector<Estimate> mc_laplace_B_grid(std::span<const double> zs, const NetworkParams& params,
                                        const SymbolMomentModel& moments,
                                        const MonteCarloConfig& cfg) {
    cfg.validate(params);
    for (double z : zs) {
        if (!(z >= 0.0) || !std::isfinite(z))
            throw std::domain_error("mc_laplace_B: z must be >= 0 and finite");
    }
    const InterferenceSampler sampler(params, moments, cfg);
    const int nz = static_cast<int>(zs.size());
    const int nstats = 2 * nz;

    std::vector<double> totals;
    {
        run_samples(
            cfg, nstats,
            [&](std::uint64_t i, double* sums) {
                thread_local std::vector<double> r_sq_buf;
                SampleStream stream(cfg.seed, i);
                const double b = sampler.sample(stream, r_sq_buf);
                for (int j = 0; j < nz; ++j) {
                    const double x = std::exp(-zs[static_cast<std::size_t>(j)] * b);
                    sums[2 * j] += x;
                    sums[2 * j + 1] += x * x;
                }
            },
            totals);
    }

    std::vector<Estimate> out;
    out.reserve(zs.size());
    for (int j = 0; j < nz; ++j) {
        out.push_back(make_estimate(totals[static_cast<std::size_t>(2 * j)],
                                    totals[static_cast<std::size_t>(2 * j + 1)], cfg.num_samples));
    }
    return out;
}

namespace {

// Shared pass for the capacity/dispersion family: draws (geometry, symbols,
// fading), forms gamma = h / (1/gamma0 + zeta), and accumulates
// C, C^2, V, V^2, C*V.
struct CvSums {
    double c = 0, c2 = 0, v = 0, v2 = 0, cv = 0;
};

CvSums run_cv_pass(const NetworkParams& params, const SymbolMomentModel& moments,
                   const MonteCarloConfig& cfg) {
    cfg.validate(params);
    const InterferenceSampler sampler(params, moments, cfg);
    const double inv_gamma0 = 1.0 / params.gamma0();
    const double signal_gain = params.tx_power * std::pow(params.r0, -params.eta);

    std::vector<double> totals;
    {
        run_samples(
            cfg, 5,
            [&](std::uint64_t i, double* sums) {
                thread_local std::vector<double> r_sq_buf;
                SampleStream stream(cfg.seed, i);
                const double b = sampler.sample(stream, r_sq_buf);
                const double zeta = b / signal_gain;
                const double h = stream.exponential();
                const double gamma = h / (inv_gamma0 + zeta);
                const double c = std::log2(1.0 + gamma);
                const double v = channel_dispersion(gamma);
                sums[0] += c;
                sums[1] += c * c;
                sums[2] += v;
                sums[3] += v * v;
                sums[4] += c * v;
            },
            totals);
    }
    return {totals[0], totals[1], totals[2], totals[3], totals[4]};
}

} // namespace

CapacityDispersionEstimate mc_capacity_dispersion(const NetworkParams& params,
                                                  const SymbolMomentModel& moments,
                                                  const MonteCarloConfig& cfg) {
    const CvSums s = run_cv_pass(params, moments, cfg);
    return {make_estimate(s.c, s.c2, cfg.num_samples), make_estimate(s.v, s.v2, cfg.num_samples)};
}

Estimate mc_avg_coding_rate(const NetworkParams& params, const FblParams& fbl,
                            const SymbolMomentModel& moments, const MonteCarloConfig& cfg) {
    fbl.validate();
    const CvSums s = run_cv_pass(params, moments, cfg);
    const auto n = static_cast<double>(cfg.num_samples);
    const double mean_c = s.c / n;
    const double mean_v = s.v / n;

    const double qinv = q_func_inv(fbl.epsilon);
    const double inv_bl = 1.0 / static_cast<double>(fbl.blocklength_n);
    const double value = mean_c - std::sqrt(std::max(0.0, mean_v) * inv_bl) * qinv;

    double stderr_ = 0.0;
    if (cfg.num_samples > 1) {
        const double var_c = (s.c2 - n * mean_c * mean_c) / (n - 1.0);
        const double var_v = (s.v2 - n * mean_v * mean_v) / (n - 1.0);
        const double cov_cv = (s.cv - n * mean_c * mean_v) / (n - 1.0);
        // Delta method for g(C, V) = C - qinv*sqrt(V/n_bl).
        const double dv = mean_v > 0.0 ? -0.5 * qinv * std::sqrt(inv_bl / mean_v) : 0.0;
        const double var_g = var_c + dv * dv * var_v + 2.0 * dv * cov_cv;
        stderr_ = std::sqrt(std::max(0.0, var_g) / n);
    }
    return {value, stderr_, cfg.num_samples};
}

Estimate mc_outage(const NetworkParams& params, const SinrThreshold& thr, const FblParams& fbl,
                   const SymbolMomentModel& moments, const MonteCarloConfig& cfg) {
    thr.validate();
    fbl.validate();
    cfg.validate(params);
    const InterferenceSampler sampler(params, moments, cfg);
    const double inv_gamma0 = 1.0 / params.gamma0();
    const double signal_gain = params.tx_power * std::pow(params.r0, -params.eta);
    const double target_rate = thr.rate();
    const double qinv = q_func_inv(fbl.epsilon);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(fbl.blocklength_n));

    std::vector<double> totals;
    {
        run_samples(
            cfg, 2,
            [&](std::uint64_t i, double* sums) {
                thread_local std::vector<double> r_sq_buf;
                SampleStream stream(cfg.seed, i);
                const double b = sampler.sample(stream, r_sq_buf);
                const double zeta = b / signal_gain;
                const double h = stream.exponential();
                const double gamma = h / (inv_gamma0 + zeta);
                // Unclamped normal-approximation rate.
                const double rate = std::log2(1.0 + gamma) -
                                    std::sqrt(channel_dispersion(gamma)) * inv_sqrt_n * qinv;
                const double indicator = rate < target_rate ? 1.0 : 0.0;
                sums[0] += indicator;
                sums[1] += indicator;  // indicator^2 == indicator
            },
            totals);
    }
    return make_estimate(totals[0], totals[1], cfg.num_samples);
}

} // namespace fblnet
