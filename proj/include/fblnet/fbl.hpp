#pragma once

#include <cstdint>

#include "fblnet/interference.hpp"
#include "fblnet/numerics.hpp"

namespace fblnet {

/// Finite-blocklength operating point: codeword length in channel uses and
/// target frame error rate. The normal approximation behind the rate
/// expressions requires 0 < epsilon < 0.5.
struct FblParams {
    std::int64_t blocklength_n = 128;
    double epsilon = 1e-2;

    void validate() const;
};

/// SINR threshold for the outage family. The equivalent target rate is
/// log2(1+T) bits per channel use and is always derived, never stored.
struct SinrThreshold {
    double T = 1.0;  // linear

    static SinrThreshold from_linear(double t);
    static SinrThreshold from_db(double t_db);
    static SinrThreshold from_rate(double rate_bits);

    double rate() const;  // log2(1+T)
    void validate() const;
};

/// Coding-rate decomposition: rate = max(0, capacity_term - penalty_term).
/// `clamped` records that the difference went negative and was clamped.
struct RateResult {
    double rate;
    double capacity_term;
    double penalty_term;
    bool clamped;

    double unclamped() const { return capacity_term - penalty_term; }
};

/// AWGN capacity log2(1+snr) in bits per channel use.
double awgn_capacity(double snr);

/// Channel dispersion V(snr) = (snr/2)*(snr+2)/(snr+1)^2 * log2(e)^2,
/// increasing from 0 towards the supremum log2(e)^2/2.
double channel_dispersion(double snr);

/// Upper bound of the dispersion: log2(e)^2 / 2.
double channel_dispersion_sup();

/// Normal-approximation maximum coding rate at blocklength n and error rate
/// epsilon for a single channel realization with the given SINR.
RateResult coding_rate_fbl(double snr, const FblParams& fbl);

/// Network-averaged Shannon capacity (infinite blocklength):
/// integral_0^inf exp(-(2^c-1)/gamma0) * L_zeta(2^c-1) dc.
double avg_capacity(const NetworkParams& params, const SymbolMomentModel& moments,
                    const QuadratureSpec& spec = {});

/// Network-averaged channel dispersion E{V(gamma)}, evaluated after the
/// substitution u = sqrt(1/(1 - 2v/log2(e)^2)) - 1 which removes the
/// endpoint singularity of the dispersion-CDF integral:
/// integral_0^inf exp(-u/gamma0) * L_zeta(u) * log2(e)^2/(1+u)^3 du.
double avg_dispersion(const NetworkParams& params, const SymbolMomentModel& moments,
                      const QuadratureSpec& spec = {});

/// Network-averaged coding rate at finite blocklength:
/// avg_capacity - sqrt(avg_dispersion/n) * Qinv(epsilon), clamped at zero.
RateResult avg_coding_rate(const NetworkParams& params, const FblParams& fbl,
                           const SymbolMomentModel& moments, const QuadratureSpec& spec = {});

/// Rate back-off a = sqrt(log2(e)^2/(2n)) * Qinv(epsilon) used by the outage
/// upper bound (the dispersion replaced by its supremum).
double rate_backoff(const FblParams& fbl);

/// Outage probability in the infinite-blocklength regime:
/// P(gamma < T) = 1 - exp(-T/gamma0) * L_zeta(T).
Probability outage_ibl(const NetworkParams& params, const SinrThreshold& thr,
                       const SymbolMomentModel& moments, const QuadratureSpec& spec = {});

/// Finite-blocklength outage lower bound; coincides with outage_ibl once the
/// o(1/sqrt(n)) remainder is dropped.
Probability outage_lower(const NetworkParams& params, const SinrThreshold& thr,
                         const FblParams& fbl, const SymbolMomentModel& moments,
                         const QuadratureSpec& spec = {});

/// Finite-blocklength outage upper bound: the threshold rate is inflated by
/// rate_backoff(fbl) before applying the infinite-blocklength expression.
Probability outage_upper(const NetworkParams& params, const SinrThreshold& thr,
                         const FblParams& fbl, const SymbolMomentModel& moments,
                         const QuadratureSpec& spec = {});

/// The upper bound doubles as the recommended outage approximation for
/// moderate and large SINR.
Probability outage_approx(const NetworkParams& params, const SinrThreshold& thr,
                          const FblParams& fbl, const SymbolMomentModel& moments,
                          const QuadratureSpec& spec = {});

/// Median of the SINR distribution, solved from
/// 1 - exp(-m/gamma0)*L_zeta(m) = 1/2 by bisection. Used to decide whether
/// the outage approximation is in its accurate (moderate/large SINR) regime.
double median_sinr(const NetworkParams& params, const SymbolMomentModel& moments,
                   const QuadratureSpec& spec = {});

} // namespace fblnet
