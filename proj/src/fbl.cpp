#include "fblnet/fbl.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fblnet {

namespace {
const double kLog2e = 1.4426950408889634074;        // log2(e)
const double kLog2e2 = kLog2e * kLog2e;             // log2(e)^2
const double kDispersionSup = 0.5 * kLog2e2;        // sup of V
} // namespace

void FblParams::validate() const {
    if (blocklength_n < 1)
        throw std::invalid_argument("FblParams.blocklength_n must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::invalid_argument("FblParams.epsilon must lie in (0, 0.5)");
}

SinrThreshold SinrThreshold::from_linear(double t) {
    SinrThreshold thr{t};
    thr.validate();
    return thr;
}

SinrThreshold SinrThreshold::from_db(double t_db) {
    return from_linear(std::pow(10.0, t_db / 10.0));
}

SinrThreshold SinrThreshold::from_rate(double rate_bits) {
    if (!(rate_bits >= 0.0)) throw std::invalid_argument("SinrThreshold: rate must be >= 0");
    return from_linear(std::exp2(rate_bits) - 1.0);
}

double SinrThreshold::rate() const { return std::log2(1.0 + T); }

void SinrThreshold::validate() const {
    if (!(T >= 0.0) || !std::isfinite(T))
        throw std::invalid_argument("SinrThreshold.T must be >= 0 and finite");
}

double awgn_capacity(double snr) {
    if (!(snr >= 0.0)) throw std::domain_error("awgn_capacity: snr must be >= 0");
    return std::log2(1.0 + snr);
}

double channel_dispersion(double snr) {
    if (!(snr >= 0.0)) throw std::domain_error("channel_dispersion: snr must be >= 0");
    return 0.5 * snr * (snr + 2.0) / ((snr + 1.0) * (snr + 1.0)) * kLog2e2;
}

double channel_dispersion_sup() { return kDispersionSup; }

RateResult coding_rate_fbl(double snr, const FblParams& fbl) {
    fbl.validate();
    const double capacity = awgn_capacity(snr);
    const double penalty = std::sqrt(channel_dispersion(snr) / static_cast<double>(fbl.blocklength_n)) *
                           q_func_inv(fbl.epsilon);
    const double diff = capacity - penalty;
    return {std::max(0.0, diff), capacity, penalty, diff < 0.0};
}

namespace {

// Truncation point where exp(-x/gamma0) alone is below tol; the Laplace
// transform factor is <= 1 so the integrand tail is certified by the
// exponential envelope.
double exp_envelope_cutoff(double gamma0, double tol) {
    return gamma0 * std::log(1.0 / tol);
}

} // namespace

double avg_capacity(const NetworkParams& params, const SymbolMomentModel& moments,
                    const QuadratureSpec& spec) {
    params.validate();
    spec.validate();
    const double gamma0 = params.gamma0();

    const double tail_tol = 0.01 * spec.abs_tol;
    // exp(-(2^c-1)/gamma0) < tail_tol  =>  c > log2(1 + gamma0*ln(1/tail_tol)).
    const double x_max = std::max(exp_envelope_cutoff(gamma0, tail_tol), 1e-300);
    const double c_max = std::log2(1.0 + x_max);
    if (!(c_max > 0.0)) return 0.0;

    auto integrand = [&](double c) {
        const double x = std::exp2(c) - 1.0;
        return std::exp(-x / gamma0) * lt_zeta(x, params, moments, spec);
    };
    return integrate(integrand, 0.0, c_max, spec);
}

double avg_dispersion(const NetworkParams& params, const SymbolMomentModel& moments,
                      const QuadratureSpec& spec) {
    params.validate();
    spec.validate();
    const double gamma0 = params.gamma0();

    const double tail_tol = 0.01 * spec.abs_tol;
    // Tail certified by whichever envelope bites first:
    //   exponential: exp(-u/gamma0) below tail_tol at u = gamma0*ln(1/tol)
    //   cubic:       integral_u^inf log2e^2/(1+t)^3 dt = log2e^2/(2(1+u)^2) below tol
    const double u_exp = exp_envelope_cutoff(gamma0, tail_tol);
    const double u_poly = std::sqrt(kLog2e2 / (2.0 * tail_tol));
    const double u_max = std::min(u_exp, u_poly);
    if (!(u_max > 0.0)) return 0.0;

    auto integrand = [&](double u) {
        const double ratio = 1.0 + u;
        return std::exp(-u / gamma0) * lt_zeta(u, params, moments, spec) * kLog2e2 /
               (ratio * ratio * ratio);
    };
    return integrate(integrand, 0.0, u_max, spec);
}

RateResult avg_coding_rate(const NetworkParams& params, const FblParams& fbl,
                           const SymbolMomentModel& moments, const QuadratureSpec& spec) {
    fbl.validate();
    const double cbar = avg_capacity(params, moments, spec);
    const double vbar = avg_dispersion(params, moments, spec);
    const double penalty = std::sqrt(vbar / static_cast<double>(fbl.blocklength_n)) *
                           q_func_inv(fbl.epsilon);
    const double diff = cbar - penalty;
    return {std::max(0.0, diff), cbar, penalty, diff < 0.0};
}

double rate_backoff(const FblParams& fbl) {
    fbl.validate();
    return std::sqrt(kDispersionSup / static_cast<double>(fbl.blocklength_n)) *
           q_func_inv(fbl.epsilon);
}

namespace {

// P(gamma < t) = 1 - exp(-t/gamma0) * L_zeta(t) for a linear SINR level t.
double sinr_cdf(double t, const NetworkParams& params, const SymbolMomentModel& moments,
                const QuadratureSpec& spec) {
    if (t <= 0.0) return 0.0;
    const double survival = std::exp(-t / params.gamma0()) * lt_zeta(t, params, moments, spec);
    return 1.0 - survival;
}

} // namespace

Probability outage_ibl(const NetworkParams& params, const SinrThreshold& thr,
                       const SymbolMomentModel& moments, const QuadratureSpec& spec) {
    params.validate();
    thr.validate();
    return Probability(std::clamp(sinr_cdf(thr.T, params, moments, spec), 0.0, 1.0));
}

Probability outage_lower(const NetworkParams& params, const SinrThreshold& thr,
                         const FblParams& fbl, const SymbolMomentModel& moments,
                         const QuadratureSpec& spec) {
    fbl.validate();
    return outage_ibl(params, thr, moments, spec);
}

Probability outage_upper(const NetworkParams& params, const SinrThreshold& thr,
                         const FblParams& fbl, const SymbolMomentModel& moments,
                         const QuadratureSpec& spec) {
    params.validate();
    thr.validate();
    fbl.validate();
    const double a = rate_backoff(fbl);
    // 2^(R+a) - 1 with R = log2(1+T), computed as (1+T)*2^a - 1.
    const double t_eff = (1.0 + thr.T) * std::exp2(a) - 1.0;
    return Probability(std::clamp(sinr_cdf(t_eff, params, moments, spec), 0.0, 1.0));
}

Probability outage_approx(const NetworkParams& params, const SinrThreshold& thr,
                          const FblParams& fbl, const SymbolMomentModel& moments,
                          const QuadratureSpec& spec) {
    return outage_upper(params, thr, fbl, moments, spec);
}

double median_sinr(const NetworkParams& params, const SymbolMomentModel& moments,
                   const QuadratureSpec& spec) {
    params.validate();
    auto cdf = [&](double t) { return sinr_cdf(t, params, moments, spec); };

    double lo = 0.0, hi = 1.0;
    while (cdf(hi) < 0.5) {
        hi *= 2.0;
        if (hi > 1e18) return hi;  // effectively infinite SINR
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < 0.5) lo = mid; else hi = mid;
        if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace fblnet
