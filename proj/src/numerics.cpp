#include "fblnet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace fblnet {

Probability::Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << "Probability out of [0,1]: " << value;
        throw std::domain_error(msg.str());
    }
}

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec.rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadratureSpec.abs_tol must be > 0");
    if (max_subdivisions < 1) throw std::invalid_argument("QuadratureSpec.max_subdivisions must be >= 1");
}

Probability q_func(double x) {
    if (!std::isfinite(x)) throw std::domain_error("q_func: input must be finite");
    // Q(x) = erfc(x/sqrt(2))/2; erfc underflows to 0 for large x, never negative.
    return Probability(0.5 * std::erfc(x * M_SQRT1_2));
}

namespace {

double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

// Rational approximation for the upper-tail quantile (Abramowitz & Stegun
// 26.2.23 style), |error| < 4.5e-4 on p in (0, 0.5].
double qinv_initial(double p) {
    const double t = std::sqrt(-2.0 * std::log(p));
    const double num = 2.515517 + t * (0.802853 + t * 0.010328);
    const double den = 1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308));
    return t - num / den;
}

} // namespace

double q_func_inv(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("q_func_inv: p must lie in (0,1)");
    if (p == 0.5) return 0.0;
    if (p > 0.5) return -q_func_inv(1.0 - p);

    double x = qinv_initial(p);
    // Newton on f(x) = Q(x) - p with f'(x) = -pdf(x), bisection as safety net.
    double lo = 0.0;
    double hi = x + 1.0;
    while (0.5 * std::erfc(hi * M_SQRT1_2) > p) hi += 1.0;
    for (int it = 0; it < 60; ++it) {
        const double q = 0.5 * std::erfc(x * M_SQRT1_2);
        if (q > p) lo = x; else hi = x;
        const double pdf = normal_pdf(x);
        double step = (pdf > 0.0) ? (q - p) / pdf : 0.0;
        double next = x + step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x))) { x = next; break; }
        x = next;
    }
    return x;
}

double q_func_inv(Probability p) { return q_func_inv(p.value()); }

namespace {

// 15-point Kronrod / 7-point Gauss rule on [-1, 1] (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double integral;     // Kronrod estimate
    double error;        // scaled error estimate
    double resabs;
    double resasc;
};

PanelResult qk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv1[7], fv2[7];
    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    double resabs = std::abs(result_kronrod);

    for (int j = 0; j < 3; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = half * kXgk[jtw];
        fv1[jtw] = f(center - absc);
        fv2[jtw] = f(center + absc);
        const double fsum = fv1[jtw] + fv2[jtw];
        result_gauss += kWg[j] * fsum;
        result_kronrod += kWgk[jtw] * fsum;
        resabs += kWgk[jtw] * (std::abs(fv1[jtw]) + std::abs(fv2[jtw]));
    }
    for (int j = 0; j < 4; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = half * kXgk[jtwm1];
        fv1[jtwm1] = f(center - absc);
        fv2[jtwm1] = f(center + absc);
        const double fsum = fv1[jtwm1] + fv2[jtwm1];
        result_kronrod += kWgk[jtwm1] * fsum;
        resabs += kWgk[jtwm1] * (std::abs(fv1[jtwm1]) + std::abs(fv2[jtwm1]));
    }

    const double mean = 0.5 * result_kronrod;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    }

    const double dhlgth = std::abs(half);
    result_kronrod *= half;
    resabs *= dhlgth;
    resasc *= dhlgth;

    double err = std::abs((result_kronrod - result_gauss * half));
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    return {result_kronrod, err, resabs, resasc};
}

struct Interval {
    double a, b;
    double integral;
    double error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

IntegralEstimate adapt(const std::function<double(double)>& f, double a, double b,
                       const QuadratureSpec& spec) {
    std::priority_queue<Interval> heap;
    PanelResult first = qk15(f, a, b);
    heap.push({a, b, first.integral, first.error});
    double total = first.integral;
    double total_err = first.error;
    int subdivisions = 1;

    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (subdivisions >= spec.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature failed to converge within " << spec.max_subdivisions
                << " subdivisions (estimate " << total << ", error bound " << total_err << ")";
            throw convergence_error(msg.str(), total, total_err);
        }
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval cannot be split further in double precision.
            std::ostringstream msg;
            msg << "quadrature interval underflow near x = " << mid << " (estimate " << total
                << ", error bound " << total_err << ")";
            throw convergence_error(msg.str(), total, total_err);
        }
        PanelResult left = qk15(f, worst.a, mid);
        PanelResult right = qk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.integral, left.error});
        heap.push({mid, worst.b, right.integral, right.error});
        ++subdivisions;
    }
    return {total, total_err, subdivisions};
}

} // namespace

IntegralEstimate integrate_with_error(const std::function<double(double)>& f, double lower,
                                      double upper, const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(lower)) throw std::domain_error("integrate: lower bound must be finite");
    if (std::isnan(upper)) throw std::domain_error("integrate: upper bound must not be NaN");

    if (lower == upper) return {0.0, 0.0, 0};

    if (std::isinf(upper)) {
        // x = lower + (1-t)/t maps t in (0,1] onto [lower, inf).
        const double a = lower;
        auto g = [&f, a](double t) {
            const double x = a + (1.0 - t) / t;
            return f(x) / (t * t);
        };
        return adapt(g, 0.0, 1.0, spec);
    }
    if (upper < lower) {
        IntegralEstimate r = integrate_with_error(f, upper, lower, spec);
        return {-r.value, r.error_bound, r.subdivisions};
    }
    return adapt(f, lower, upper, spec);
}

double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureSpec& spec) {
    return integrate_with_error(f, lower, upper, spec).value;
}

} // namespace fblnet
