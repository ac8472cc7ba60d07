#include "randassign/distributions.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace randassign {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be strictly positive and finite");
    }
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kHalfSqrtPi = 0.8862269254527580;  // sqrt(pi)/2

// ---------------------------------------------------------------------------
// Poisson tail machinery
// ---------------------------------------------------------------------------

double poisson_log_pmf(double lambda, double k) {
    return k * std::log(lambda) - lambda - std::lgamma(k + 1.0);
}

// P(X >= m) for integer m > lambda, summed upward from m. Keeps relative
// accuracy deep in the tail where 1 - CDF would cancel.
double poisson_upper_tail(double lambda, double m) {
    double pmf = std::exp(poisson_log_pmf(lambda, m));
    if (pmf == 0.0) return 0.0;
    double term = 1.0;
    double series = 1.0;
    double k = m;
    for (int j = 0; j < 100000; ++j) {
        k += 1.0;
        term *= lambda / k;
        series += term;
        if (term < series * 1e-18) break;
    }
    double tail = pmf * series;
    return tail < 1.0 ? tail : 1.0;
}

// P(X >= m) for integer m <= lambda: Neumaier-compensated CDF of 0..m-1,
// complemented. Absolute error stays at ulp level, which is what matters on
// this side (the tail is close to 1).
double poisson_lower_side_tail(double lambda, double m) {
    double log_pmf = -lambda;
    double sum = 0.0, comp = 0.0;
    for (double k = 0.0; k < m; k += 1.0) {
        if (k > 0.0) {
            log_pmf += std::log(lambda) - std::log(k);
            if (static_cast<long long>(k) % 1024 == 0) log_pmf = poisson_log_pmf(lambda, k);
        }
        double term = std::exp(log_pmf);
        double t = sum + term;
        comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    double cdf = sum + comp;
    if (cdf > 1.0) cdf = 1.0;
    return 1.0 - cdf;
}

double poisson_tail(double lambda, double r) {
    if (r <= 0.0) return 1.0;
    double m = std::ceil(r);
    return m > lambda ? poisson_upper_tail(lambda, m) : poisson_lower_side_tail(lambda, m);
}

// Smallest integer m with P(X >= m) <= p. Linear scan of the CDF with
// compensated summation; beyond lambda + 40*sqrt(lambda) + 50 the tail is
// below ~1e-30 and the scan refuses.
double poisson_tail_quantile(double lambda, double p) {
    const double cap = lambda + 40.0 * std::sqrt(lambda) + 50.0;
    double log_pmf = -lambda;
    double sum = 0.0, comp = 0.0;
    for (double m = 1.0; m <= cap; m += 1.0) {
        double k = m - 1.0;
        if (k > 0.0) {
            log_pmf += std::log(lambda) - std::log(k);
            if (static_cast<long long>(k) % 1024 == 0) log_pmf = poisson_log_pmf(lambda, k);
        }
        double term = std::exp(log_pmf);
        double t = sum + term;
        comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        double tail = 1.0 - (sum + comp);  // P(X >= m)
        // Once the complemented CDF is dominated by rounding noise, decide
        // from the directly summed upper tail instead.
        if (tail <= 1e-10 && m > lambda) tail = poisson_upper_tail(lambda, m);
        if (tail <= p) return m;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "poisson tail quantile scan capped at lambda + 40*sqrt(lambda) + 50 = %.0f; "
                  "requested p=%g lies below ~1e-30", cap, p);
    throw std::domain_error(buf);
}

// ---------------------------------------------------------------------------
// Poisson samplers
// ---------------------------------------------------------------------------

double sample_poisson_inversion(double lambda, RandomStream& stream) {
    const double cap = lambda + 60.0 * std::sqrt(lambda) + 200.0;
    double u = stream.next_double();
    double x = 0.0;
    double pmf = std::exp(-lambda);
    double cdf = pmf;
    while (u >= cdf && x < cap) {
        x += 1.0;
        pmf *= lambda / x;
        cdf += pmf;
    }
    return x;
}

// Transformed rejection with squeeze (Hormann's PTRS), for lambda > 30.
double sample_poisson_ptrs(double lambda, RandomStream& stream) {
    const double slam = std::sqrt(lambda);
    const double llam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = stream.next_double() - 0.5;
        double v = stream.next_open();
        double us = 0.5 - std::fabs(u);
        if (us <= 0.0) continue;
        double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return k;
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        double rhs = k * llam - lambda - std::lgamma(k + 1.0);
        if (lhs <= rhs) return k;
    }
}

double sample_poisson(double lambda, RandomStream& stream) {
    return lambda <= 30.0 ? sample_poisson_inversion(lambda, stream)
                          : sample_poisson_ptrs(lambda, stream);
}

// ---------------------------------------------------------------------------
// Continuous closed forms
// ---------------------------------------------------------------------------

// g(p) for the continuous kinds, p already validated to (0,1).
double continuous_tail_quantile(const DistributionSpec& spec, double p) {
    switch (spec.kind) {
        case DistKind::StandardNormal:
            return kSqrt2 * erfc_inv(2.0 * p);
        case DistKind::Exponential:
            return -std::log(p) / spec.a;
        case DistKind::Gumbel:
            // -log log(1/(1-p)) == -log(-log1p(-p)), stable for small p.
            return spec.a - spec.b * std::log(-std::log1p(-p));
        case DistKind::Laplace:
            return p < 0.5 ? spec.a - spec.b * std::log(2.0 * p)
                           : spec.a + spec.b * std::log(2.0 * (1.0 - p));
        case DistKind::Uniform01:
            return 1.0 - p;
        default:
            throw std::logic_error("continuous_tail_quantile: discrete kind");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// DistributionSpec
// ---------------------------------------------------------------------------

DistributionSpec DistributionSpec::standard_normal() {
    return {DistKind::StandardNormal, 0.0, 0.0};
}

DistributionSpec DistributionSpec::exponential(double rate) {
    require_positive(rate, "exponential rate");
    return {DistKind::Exponential, rate, 0.0};
}

DistributionSpec DistributionSpec::gumbel(double location, double scale) {
    require_finite(location, "gumbel location");
    require_positive(scale, "gumbel scale");
    return {DistKind::Gumbel, location, scale};
}

DistributionSpec DistributionSpec::laplace(double location, double scale) {
    require_finite(location, "laplace location");
    require_positive(scale, "laplace scale");
    return {DistKind::Laplace, location, scale};
}

DistributionSpec DistributionSpec::poisson(double lambda) {
    require_positive(lambda, "poisson lambda");
    return {DistKind::Poisson, lambda, 0.0};
}

DistributionSpec DistributionSpec::uniform01() {
    return {DistKind::Uniform01, 0.0, 0.0};
}

std::string DistributionSpec::name() const {
    char buf[80];
    switch (kind) {
        case DistKind::StandardNormal: return "normal";
        case DistKind::Uniform01: return "uniform01";
        case DistKind::Exponential:
            std::snprintf(buf, sizeof(buf), "exp:%g", a);
            return buf;
        case DistKind::Gumbel:
            std::snprintf(buf, sizeof(buf), "gumbel:%g:%g", a, b);
            return buf;
        case DistKind::Laplace:
            std::snprintf(buf, sizeof(buf), "laplace:%g:%g", a, b);
            return buf;
        case DistKind::Poisson:
            std::snprintf(buf, sizeof(buf), "poisson:%g", a);
            return buf;
    }
    throw std::logic_error("unreachable");
}

namespace {

double parse_decimal(std::string_view text, const char* what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw std::invalid_argument(std::string("invalid decimal for ") + what + ": '" +
                                    std::string(text) + "'");
    }
    return value;
}

}  // namespace

DistributionSpec parse_distribution(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t colon = text.find(':', pos);
        if (colon == std::string_view::npos) {
            parts.push_back(text.substr(pos));
            break;
        }
        parts.push_back(text.substr(pos, colon - pos));
        pos = colon + 1;
    }
    const std::string_view head = parts[0];
    const std::size_t nparams = parts.size() - 1;
    auto arity_error = [&](std::size_t want) {
        throw std::invalid_argument("distribution '" + std::string(head) + "' takes " +
                                    std::to_string(want) + " parameter(s), got " +
                                    std::to_string(nparams));
    };
    if (head == "normal") {
        if (nparams != 0) arity_error(0);
        return DistributionSpec::standard_normal();
    }
    if (head == "uniform01") {
        if (nparams != 0) arity_error(0);
        return DistributionSpec::uniform01();
    }
    if (head == "exp") {
        if (nparams != 1) arity_error(1);
        return DistributionSpec::exponential(parse_decimal(parts[1], "exp rate"));
    }
    if (head == "poisson") {
        if (nparams != 1) arity_error(1);
        return DistributionSpec::poisson(parse_decimal(parts[1], "poisson lambda"));
    }
    if (head == "gumbel") {
        if (nparams != 2) arity_error(2);
        return DistributionSpec::gumbel(parse_decimal(parts[1], "gumbel location"),
                                        parse_decimal(parts[2], "gumbel scale"));
    }
    if (head == "laplace") {
        if (nparams != 2) arity_error(2);
        return DistributionSpec::laplace(parse_decimal(parts[1], "laplace location"),
                                         parse_decimal(parts[2], "laplace scale"));
    }
    throw std::invalid_argument("unknown distribution '" + std::string(text) +
                                "' (expected normal, exp:RATE, gumbel:LOC:SCALE, "
                                "laplace:LOC:SCALE, poisson:LAMBDA, uniform01)");
}

// ---------------------------------------------------------------------------
// erfc_inv
// ---------------------------------------------------------------------------

double erfc_inv(double y) {
    if (!(y > 0.0) || !(y < 2.0)) {
        throw std::domain_error("erfc_inv requires an argument in (0, 2)");
    }
    if (y == 1.0) return 0.0;

    // Rational approximation of the inverse normal CDF at q = y/2
    // (Acklam's fit, |relative error| < 1.2e-9), then mapped through
    // erfc_inv(y) = -ndtri(y/2)/sqrt(2).
    static const double A[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double B[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double C[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double D[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};

    const double q = 0.5 * y;
    double z;
    if (q < 0.02425) {
        double t = std::sqrt(-2.0 * std::log(q));
        z = (((((C[0] * t + C[1]) * t + C[2]) * t + C[3]) * t + C[4]) * t + C[5]) /
            ((((D[0] * t + D[1]) * t + D[2]) * t + D[3]) * t + 1.0);
    } else if (q <= 0.97575) {
        double t = q - 0.5;
        double s = t * t;
        z = (((((A[0] * s + A[1]) * s + A[2]) * s + A[3]) * s + A[4]) * s + A[5]) * t /
            (((((B[0] * s + B[1]) * s + B[2]) * s + B[3]) * s + B[4]) * s + 1.0);
    } else {
        double t = std::sqrt(-2.0 * std::log1p(-q));
        z = -(((((C[0] * t + C[1]) * t + C[2]) * t + C[3]) * t + C[4]) * t + C[5]) /
            ((((D[0] * t + D[1]) * t + D[2]) * t + D[3]) * t + 1.0);
    }
    double x = -z / kSqrt2;

    // Two Newton refinements against the exact complementary error function.
    for (int step = 0; step < 2; ++step) {
        double xx = x * x;
        if (xx > 700.0) break;  // initial approximation already at fp limits out here
        x += (std::erfc(x) - y) * kHalfSqrtPi * std::exp(xx);
    }
    return x;
}

// ---------------------------------------------------------------------------
// Quantiles and tails
// ---------------------------------------------------------------------------

QuantileValue tail_quantile(const DistributionSpec& spec, double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("tail_quantile requires p in (0, 1)");
    }
    double value = spec.kind == DistKind::Poisson ? poisson_tail_quantile(spec.a, p)
                                                  : continuous_tail_quantile(spec, p);
    return {p, value};
}

double asymptotic_tail_quantile(const DistributionSpec& spec, double p) {
    if (spec.kind != DistKind::Poisson) {
        return tail_quantile(spec, p).value;
    }
    static const double kExpMinusE = std::exp(-std::exp(1.0));
    if (!(p > 0.0) || !(p < kExpMinusE)) {
        throw std::domain_error(
            "asymptotic poisson tail quantile requires 0 < p < e^-e (~0.0660) "
            "so that log(log(1/p)) exceeds 1");
    }
    double l = -std::log(p);
    return l / std::log(l);
}

double tail_probability(const DistributionSpec& spec, double r) {
    switch (spec.kind) {
        case DistKind::StandardNormal:
            return 0.5 * std::erfc(r / kSqrt2);
        case DistKind::Exponential:
            return r <= 0.0 ? 1.0 : std::exp(-spec.a * r);
        case DistKind::Gumbel: {
            double z = (r - spec.a) / spec.b;
            return -std::expm1(-std::exp(-z));
        }
        case DistKind::Laplace: {
            double z = (r - spec.a) / spec.b;
            return z <= 0.0 ? 1.0 - 0.5 * std::exp(z) : 0.5 * std::exp(-z);
        }
        case DistKind::Uniform01:
            if (r <= 0.0) return 1.0;
            if (r >= 1.0) return 0.0;
            return 1.0 - r;
        case DistKind::Poisson:
            return poisson_tail(spec.a, r);
    }
    throw std::logic_error("unreachable");
}

double sample(const DistributionSpec& spec, RandomStream& stream) {
    switch (spec.kind) {
        case DistKind::Uniform01:
            return stream.next_double();
        case DistKind::Poisson:
            return sample_poisson(spec.a, stream);
        default:
            // Inverse transform through the tail quantile: for U uniform on
            // (0,1), g(U) has tail P(g(U) >= r) = P(X >= r).
            return continuous_tail_quantile(spec, stream.next_open());
    }
}

}  // namespace randassign
