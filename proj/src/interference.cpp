#include "fblnet/interference.hpp"

#include <cmath>
#include <sstream>

namespace fblnet {

void NetworkParams::validate() const {
    if (!(lambda_density >= 0.0) || !std::isfinite(lambda_density))
        throw std::invalid_argument("NetworkParams.lambda_density must be >= 0");
    if (!(r0 > 0.0) || !std::isfinite(r0))
        throw std::invalid_argument("NetworkParams.r0 must be > 0");
    if (!(eta > 2.0) || !std::isfinite(eta))
        throw std::invalid_argument("NetworkParams.eta must be > 2 (shot-noise finiteness)");
    if (!(tx_power > 0.0) || !std::isfinite(tx_power))
        throw std::invalid_argument("NetworkParams.tx_power must be > 0");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        throw std::invalid_argument("NetworkParams.noise_power must be > 0");
}

double NetworkParams::gamma0() const {
    return tx_power * std::pow(r0, -eta) / noise_power;
}

SymbolMomentModel SymbolMomentModel::explicit_model(std::vector<double> moments) {
    SymbolMomentModel m{Kind::explicit_moments, std::move(moments)};
    m.validate();
    return m;
}

void SymbolMomentModel::validate() const {
    if (kind != Kind::explicit_moments) return;
    if (explicit_moments.empty())
        throw std::invalid_argument("SymbolMomentModel: explicit moment list is empty");
    if (std::abs(explicit_moments.front() - 1.0) > 1e-12)
        throw std::invalid_argument("SymbolMomentModel: m_1 must equal 1 (unit-power symbols)");
    for (double m : explicit_moments) {
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument("SymbolMomentModel: all moments must be positive and finite");
    }
}

double SymbolMomentModel::moment(int k) const {
    if (k < 1) throw std::invalid_argument("SymbolMomentModel::moment: k must be >= 1");
    switch (kind) {
        case Kind::constant_modulus:
            return 1.0;
        case Kind::gaussian_codebook: {
            double f = 1.0;
            for (int i = 2; i <= k; ++i) f *= i;
            return f;  // k!
        }
        case Kind::explicit_moments:
            if (static_cast<size_t>(k) > explicit_moments.size()) {
                std::ostringstream msg;
                msg << "SymbolMomentModel: moment k=" << k << " not provided (have "
                    << explicit_moments.size() << ")";
                throw std::invalid_argument(msg.str());
            }
            return explicit_moments[static_cast<size_t>(k) - 1];
    }
    throw std::logic_error("SymbolMomentModel: bad kind");
}

SeriesLt lt_B_series(double z, const NetworkParams& params, const SymbolMomentModel& moments,
                     int truncation_K) {
    params.validate();
    moments.validate();
    if (!(z >= 0.0) || !std::isfinite(z)) throw std::domain_error("lt_B_series: z must be >= 0");
    if (truncation_K < 1) throw std::invalid_argument("lt_B_series: truncation_K must be >= 1");

    if (z == 0.0 || params.lambda_density == 0.0) return {1.0, 0.0, 0};

    const double prefactor = 2.0 * M_PI * params.lambda_density * params.r0 * params.r0;
    const double c = z * params.tx_power * std::pow(params.r0, -params.eta);

    // term_k = (-1)^k * prefactor * c^k * m_k / ((eta*k - 2) * k!)
    double sum = 0.0;
    double ck_over_kfact = 1.0;  // c^k / k!
    double last_mag = 0.0;
    int growth_streak = 0;
    int used = 0;
    for (int k = 1; k <= truncation_K; ++k) {
        ck_over_kfact *= c / k;
        const double mag = prefactor * ck_over_kfact * moments.moment(k) / (params.eta * k - 2.0);
        if (!std::isfinite(mag) || mag > 1e300) {
            std::ostringstream msg;
            msg << "lt_B_series: term magnitude overflow at k=" << k
                << "; use lt_B_quadrature for this argument";
            throw series_divergence_error(msg.str(), k, mag);
        }
        if (k > 1 && mag > last_mag) {
            if (++growth_streak >= 3) {
                std::ostringstream msg;
                msg << "lt_B_series: terms growing for 3 consecutive k (k=" << k
                    << ", |term|=" << mag << "); use lt_B_quadrature for this argument";
                throw series_divergence_error(msg.str(), k, mag);
            }
        } else {
            growth_streak = 0;
        }
        sum += (k % 2 == 0) ? mag : -mag;
        last_mag = mag;
        used = k;
    }
    return {std::exp(sum), last_mag, used};
}

double lt_B_eta4(double z, const NetworkParams& params) {
    params.validate();
    if (!(z >= 0.0) || !std::isfinite(z)) throw std::domain_error("lt_B_eta4: z must be >= 0");
    if (params.eta != 4.0)
        throw std::invalid_argument("lt_B_eta4: closed form requires eta = 4");

    const double s = std::sqrt(z * params.tx_power);
    return std::exp(-M_PI * params.lambda_density * s * std::atan(s / (params.r0 * params.r0)));
}

double lt_B_quadrature(double z, const NetworkParams& params, const SymbolMomentModel& moments,
                       const QuadratureSpec& spec) {
    params.validate();
    moments.validate();
    if (!(z >= 0.0) || !std::isfinite(z)) throw std::domain_error("lt_B_quadrature: z must be >= 0");
    if (moments.kind == SymbolMomentModel::Kind::explicit_moments)
        throw std::invalid_argument(
            "lt_B_quadrature: explicit moment sequences do not determine the symbol MGF; "
            "use constant_modulus or gaussian_codebook");

    if (z == 0.0 || params.lambda_density == 0.0) return 1.0;

    const double zP = z * params.tx_power;
    const double eta = params.eta;
    const bool gaussian = moments.kind == SymbolMomentModel::Kind::gaussian_codebook;

    // 1 - E_s[exp(-c|s|^2)], written to stay accurate for small c.
    auto integrand = [zP, eta, gaussian](double r) {
        const double c = zP * std::pow(r, -eta);
        const double one_minus = gaussian ? c / (1.0 + c) : -std::expm1(-c);
        return one_minus * r;
    };

    const double integral = integrate(integrand, params.r0, kInfinity, spec);
    return std::exp(-2.0 * M_PI * params.lambda_density * integral);
}

double lt_zeta(double z, const NetworkParams& params, const SymbolMomentModel& moments,
               const QuadratureSpec& spec) {
    params.validate();
    if (!(z >= 0.0) || !std::isfinite(z)) throw std::domain_error("lt_zeta: z must be >= 0");
    if (params.lambda_density == 0.0 || z == 0.0) return 1.0;

    const double zB = z * std::pow(params.r0, params.eta) / params.tx_power;
    if (params.eta == 4.0 && moments.kind == SymbolMomentModel::Kind::gaussian_codebook) {
        return lt_B_eta4(zB, params);
    }
    return lt_B_quadrature(zB, params, moments, spec);
}

} // namespace fblnet
