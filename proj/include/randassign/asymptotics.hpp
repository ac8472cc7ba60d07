#pragma once

#include <optional>
#include <string>

#include "randassign/distributions.hpp"

namespace randassign {

inline constexpr double kZeta2 = 1.6449340668482264;       // pi^2 / 6
inline constexpr double kZeta3 = 1.2020569031595943;       // Apery's constant
inline constexpr double kEulerGamma = 0.5772156649015329;

/// Theoretical leading-order values for size n: g(1/n) for the i.i.d.
/// maximum and n*g(1/n) for the assignment maximum, plus the exact expected
/// i.i.d. maximum where a closed form exists.
struct PredictionRecord {
    int n = 0;
    double g_of_inv_n = 0.0;
    double em_n_predicted = 0.0;           // leading term of E max of n i.i.d. draws
    double em_assignment_predicted = 0.0;  // n * g(1/n), leading term of E of the optimum
    std::optional<double> exact_em_n;      // closed form when known
    std::string notes;
};

/// Builds the prediction record for a distribution at size n >= 2. Rejects
/// uniform01 with std::domain_error: its tail quantile is bounded, violating
/// the requirement that g tends to infinity and is slowly varying at zero.
PredictionRecord predict(const DistributionSpec& spec, int n);

/// Sum of 1/k^2 for k = 1..n (compensated); increases to zeta(2).
double parisi_sum(int n);

/// zeta(2) - (zeta(2)/2 + 2*zeta(3))/n — the large-n expansion of the
/// expected minimum-assignment cost for uniform entries. Defined for every
/// n >= 1; small n are pre-asymptotic.
double mezard_parisi_expansion(int n);

/// Exact E max of n i.i.d. draws where elementary: H_n/rate (exponential),
/// location + scale*(log n + gamma) (gumbel), n/(n+1) (uniform01). Empty for
/// normal, laplace and poisson.
std::optional<double> exact_iid_max_mean(const DistributionSpec& spec, int n);

/// H_n = sum 1/k: direct summation up to n = 1e6, log n + gamma + 1/(2n) above.
double harmonic_number(long long n);

}  // namespace randassign
