#pragma once

#include <stdexcept>
#include <string>

namespace fblnet {

/// Adaptive quadrature ran out of subdivisions before reaching the requested
/// tolerance. Carries the best estimate obtained and its error bound so the
/// caller can decide whether the partial result is usable.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

/// The interference Laplace-transform power series shows growing terms; the
/// sum cannot be trusted at this argument. Callers should fall back to the
/// quadrature evaluation.
class series_divergence_error : public std::runtime_error {
public:
    series_divergence_error(const std::string& what, int diverged_at_term, double last_term_magnitude)
        : std::runtime_error(what),
          diverged_at_term_(diverged_at_term),
          last_term_magnitude_(last_term_magnitude) {}

    int diverged_at_term() const noexcept { return diverged_at_term_; }
    double last_term_magnitude() const noexcept { return last_term_magnitude_; }

private:
    int diverged_at_term_;
    double last_term_magnitude_;
};

/// Configuration file could not be parsed or violates a parameter invariant.
/// The message carries file/line/key context.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fblnet
