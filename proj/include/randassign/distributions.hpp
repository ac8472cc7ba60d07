#pragma once

#include <string>
#include <string_view>

#include "randassign/random.hpp"

namespace randassign {

enum class DistKind { StandardNormal, Exponential, Gumbel, Laplace, Poisson, Uniform01 };

/// Entry distribution for the assignment matrix. Construct via the factories;
/// they validate parameters (rate, scale, lambda must be strictly positive).
///
/// Uniform01 is admitted for minimum-side experiments only: its tail quantile
/// is bounded, so prediction operations reject it.
struct DistributionSpec {
    DistKind kind = DistKind::StandardNormal;
    double a = 0.0;  // rate (Exponential), location (Gumbel/Laplace), lambda (Poisson)
    double b = 0.0;  // scale (Gumbel/Laplace)

    static DistributionSpec standard_normal();
    static DistributionSpec exponential(double rate);
    static DistributionSpec gumbel(double location, double scale);
    static DistributionSpec laplace(double location, double scale);
    static DistributionSpec poisson(double lambda);
    static DistributionSpec uniform01();

    bool is_continuous() const { return kind != DistKind::Poisson; }

    /// Canonical compact name, e.g. "normal", "exp:1", "gumbel:0:1".
    std::string name() const;
};

/// Parses the compact grammar: "normal", "exp:RATE", "gumbel:LOC:SCALE",
/// "laplace:LOC:SCALE", "poisson:LAMBDA", "uniform01". Colon-separated decimal
/// parameters, exact arity, no aliases. Throws std::invalid_argument.
DistributionSpec parse_distribution(std::string_view text);

/// A tail quantile evaluation: value = g(p) with g(p) = inf{r : P(X >= r) <= p}.
struct QuantileValue {
    double p = 0.0;
    double value = 0.0;
};

/// Draws one variate. Inverse-transform for every continuous law (the normal
/// reuses erfc_inv), sequential CDF search or transformed rejection for
/// Poisson. Bit-reproducible given the stream state.
double sample(const DistributionSpec& spec, RandomStream& stream);

/// Exact tail quantile g(p), 0 < p < 1. Closed forms for the continuous laws;
/// for Poisson the discrete infimum: the smallest integer m with
/// P(X >= m) <= p (so P(X >= m-1) > p). Throws std::domain_error outside (0,1).
QuantileValue tail_quantile(const DistributionSpec& spec, double p);

/// Leading-order tail quantile. Coincides with tail_quantile for the
/// continuous laws; for Poisson returns log(1/p)/log(log(1/p)), which requires
/// p < e^-e so the denominator exceeds 1. Throws std::domain_error otherwise.
double asymptotic_tail_quantile(const DistributionSpec& spec, double p);

/// P(X >= r). Closed forms for Exp/Gumbel/Laplace/Uniform, complementary
/// error function for the normal, compensated CDF summation for Poisson.
double tail_probability(const DistributionSpec& spec, double r);

/// Inverse complementary error function on (0, 2). Rational initial
/// approximation refined by two Newton steps against std::erfc; absolute
/// error below 1e-10 for arguments corresponding to p in [1e-12, 0.5].
double erfc_inv(double y);

/// Absolute tolerance applied wherever a continuous quantile is checked.
inline constexpr double kQuantileTolerance = 1e-8;

}  // namespace randassign
