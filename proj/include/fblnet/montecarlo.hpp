#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fblnet/fbl.hpp"
#include "fblnet/interference.hpp"
#include "fblnet/rng.hpp"

namespace fblnet {

/// Monte Carlo controls. Results are bit-identical for fixed
/// (seed, num_samples) and any worker count: every sample draws from its own
/// counter-based substream and partial sums are reduced in a fixed block
/// order.
///
/// r_max truncates the interference annulus. When tail_correction is on
/// (default) the mean interference of the neglected tail,
/// 2*pi*lambda*P*r_max^(2-eta)/(eta-2), is added back deterministically;
/// the remaining truncation error is the tail's fluctuation around its mean,
/// which decays like r_max^(1-eta) and is far below the Monte Carlo noise at
/// the default radius.
struct MonteCarloConfig {
    double r_max = 0.0;  // m; <= 0 selects kDefaultRmaxFactor * r0
    std::int64_t num_samples = 100000;
    std::uint64_t seed = 1;
    int workers = 0;  // <= 0 selects a hardware-based default
    bool tail_correction = true;

    static constexpr double kDefaultRmaxFactor = 30.0;

    void validate(const NetworkParams& params) const;
    double resolve_r_max(const NetworkParams& params) const;
};

/// A Monte Carlo estimate: sample mean, its standard error
/// (sample standard deviation / sqrt(N)), and the sample count.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t num_samples = 0;
};

/// Distances of one realization of the interfering point process. Angles are
/// irrelevant under isotropic path loss and are not stored.
struct GeometrySample {
    std::vector<double> distances;  // each in (r0, r_max]
};

/// Expected interference power of the neglected region beyond r_max:
/// 2*pi*lambda*P*r_max^(2-eta)/(eta-2).
double truncation_tail_mean(const NetworkParams& params, double r_max);

/// Draws one PPP realization on the annulus (r0, r_max]: a Poisson count
/// with mean lambda*pi*(r_max^2 - r0^2), then radii that are uniform in
/// area.
GeometrySample sample_ppp_annulus(const NetworkParams& params, const MonteCarloConfig& cfg,
                                  SampleStream& stream);

/// Aggregate interference power for one geometry realization:
/// sum_i P * r_i^-eta * |s_i|^2. constant_modulus symbols contribute
/// deterministically; gaussian_codebook symbols draw unit-mean exponential
/// powers from the stream. No truncation-tail term is added here.
double interference_power(const GeometrySample& geom, const NetworkParams& params,
                          const SymbolMomentModel& moments, SampleStream& stream);

/// Sample mean of exp(-z * B) over geometry and symbol randomness.
Estimate mc_laplace_B(double z, const NetworkParams& params, const SymbolMomentModel& moments,
                      const MonteCarloConfig& cfg);

/// Same as mc_laplace_B for several z values sharing one geometry pass.
/// Element j is bit-identical to the single-z call at zs[j].
std::vector<Estimate> mc_laplace_B_grid(std::span<const double> zs, const NetworkParams& params,
                                        const SymbolMomentModel& moments,
                                        const MonteCarloConfig& cfg);

/// Direct Monte Carlo estimates of the network-averaged capacity
/// E{log2(1+gamma)} and dispersion E{V(gamma)} from joint draws of fading
/// and interference.
struct CapacityDispersionEstimate {
    Estimate capacity;
    Estimate dispersion;
};
CapacityDispersionEstimate mc_capacity_dispersion(const NetworkParams& params,
                                                  const SymbolMomentModel& moments,
                                                  const MonteCarloConfig& cfg);

/// Monte Carlo estimate of the network-averaged finite-blocklength coding
/// rate functional Ebar{C} - sqrt(Ebar{V}/n) * Qinv(epsilon): the capacity
/// and dispersion means are estimated jointly and combined, with the
/// standard error propagated by the delta method. The value is not clamped
/// at zero.
Estimate mc_avg_coding_rate(const NetworkParams& params, const FblParams& fbl,
                            const SymbolMomentModel& moments, const MonteCarloConfig& cfg);

/// Monte Carlo outage probability: the fraction of realizations whose
/// per-realization normal-approximation rate (unclamped) falls below the
/// target rate log2(1+T).
Estimate mc_outage(const NetworkParams& params, const SinrThreshold& thr, const FblParams& fbl,
                   const SymbolMomentModel& moments, const MonteCarloConfig& cfg);

} // namespace fblnet
