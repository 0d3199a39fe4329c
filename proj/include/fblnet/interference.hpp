#pragma once

#include <vector>

#include "fblnet/numerics.hpp"

namespace fblnet {

/// Physical-layer and geometry parameters of the downlink. Internally all
/// quantities are in SI units (meters, watts); the CLI converts BS/km^2
/// densities on input.
struct NetworkParams {
    double lambda_density = 0.0;  // base stations per m^2
    double r0 = 250.0;            // serving distance / exclusion radius, m
    double eta = 4.0;             // path-loss exponent, must be > 2
    double tx_power = 1.0;        // W
    double noise_power = 1.0;     // W

    void validate() const;

    /// Nominal SNR of the serving link: P * r0^-eta / N0.
    double gamma0() const;
};

/// Moment sequence E{|s|^{2k}} of the unit-power codeword symbols, which
/// enters the interference Laplace transform term by term.
struct SymbolMomentModel {
    enum class Kind { constant_modulus, gaussian_codebook, explicit_moments };

    Kind kind = Kind::gaussian_codebook;
    std::vector<double> explicit_moments;  // m_1, m_2, ... when kind == explicit_moments

    static SymbolMomentModel constant_modulus() { return {Kind::constant_modulus, {}}; }
    static SymbolMomentModel gaussian_codebook() { return {Kind::gaussian_codebook, {}}; }
    static SymbolMomentModel explicit_model(std::vector<double> moments);

    void validate() const;

    /// E{|s|^{2k}} for k >= 1. constant_modulus: 1; gaussian_codebook: k!.
    double moment(int k) const;
};

/// Result of the truncated-series Laplace transform evaluation. The last
/// retained term magnitude acts as a truncation diagnostic: the sum sits in
/// the exponent, so it bounds the relative error of the value when the terms
/// are decaying geometrically.
struct SeriesLt {
    double value;
    double last_term_magnitude;
    int terms_used;
};

/// Laplace transform of the aggregate interference power B evaluated by the
/// alternating power series exp(sum_k a_k z^k), truncated at truncation_K
/// terms. Throws series_divergence_error when the term magnitudes grow for
/// three consecutive k (or overflow), in which case the quadrature path
/// should be used instead.
SeriesLt lt_B_series(double z, const NetworkParams& params, const SymbolMomentModel& moments,
                     int truncation_K = 30);

/// Closed-form Laplace transform of B for eta = 4:
/// exp(-pi*lambda*sqrt(z*P)*arctan(sqrt(z*P)/r0^2)). Exact when the symbol
/// power |s|^2 is unit-mean exponential (gaussian_codebook moments m_k = k!).
/// Throws std::invalid_argument when params.eta != 4.
double lt_B_eta4(double z, const NetworkParams& params);

/// Reference Laplace transform of B via the probability generating
/// functional: exp(-2*pi*lambda*integral_{r0}^inf (1 - E_s exp(-z*P*r^-eta*|s|^2)) r dr).
/// Supports constant_modulus (E_s = exp(-c)) and gaussian_codebook
/// (E_s = 1/(1+c)) models; explicit moment sequences do not determine the
/// inner expectation and are rejected.
double lt_B_quadrature(double z, const NetworkParams& params, const SymbolMomentModel& moments,
                       const QuadratureSpec& spec = {});

/// Laplace transform of the normalized interference zeta = B/(P*r0^-eta),
/// i.e. lt_B evaluated at z*r0^eta/P. Dispatches to the closed form when
/// eta = 4 and the moments are gaussian_codebook, otherwise to the
/// quadrature reference. Returns 1 when lambda = 0.
double lt_zeta(double z, const NetworkParams& params, const SymbolMomentModel& moments,
               const QuadratureSpec& spec = {});

} // namespace fblnet
