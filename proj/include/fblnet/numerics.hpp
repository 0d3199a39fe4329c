#pragma once

#include <functional>
#include <limits>

#include "fblnet/errors.hpp"

namespace fblnet {

/// A probability value, checked to lie in [0, 1] on construction.
class Probability {
public:
    explicit Probability(double value);

    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

private:
    double value_;
};

/// Controls for the adaptive quadrature routines. The estimate is refined
/// until the reported error bound drops below max(abs_tol, rel_tol*|result|).
struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 400;

    void validate() const;
};

/// Gaussian tail probability Q(x) = P(Z > x) for standard normal Z.
/// Throws std::domain_error on non-finite input.
Probability q_func(double x);

/// Inverse of q_func on (0, 1). Accurate to full double precision via a
/// rational initial guess refined by a Newton/bisection hybrid; the round
/// trip q_func(q_func_inv(p)) holds to better than 1e-9 relative error down
/// to p = 1e-12.
double q_func_inv(double p);
double q_func_inv(Probability p);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Adaptive Gauss-Kronrod 15(7) quadrature of f over [lower, upper].
/// upper may be +infinity; the tail is folded onto (0, 1] by the algebraic
/// substitution x = lower + (1-t)/t, which is well conditioned for the
/// exponentially decaying integrands used here. Deterministic for fixed
/// inputs. Throws convergence_error (carrying the best estimate and its
/// error bound) if the tolerance cannot be met within max_subdivisions.
double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureSpec& spec = {});

/// Same as integrate() but also reports the error bound attained.
struct IntegralEstimate {
    double value;
    double error_bound;
    int subdivisions;
};
IntegralEstimate integrate_with_error(const std::function<double(double)>& f, double lower,
                                      double upper, const QuadratureSpec& spec = {});

} // namespace fblnet
