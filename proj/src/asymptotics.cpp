#include "randassign/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace randassign {

double harmonic_number(long long n) {
    if (n < 1) throw std::domain_error("harmonic_number requires n >= 1");
    if (n <= 1000000) {
        // Smallest terms first, no compensation needed at this length.
        double sum = 0.0;
        for (long long k = n; k >= 1; --k) sum += 1.0 / static_cast<double>(k);
        return sum;
    }
    const double x = static_cast<double>(n);
    return std::log(x) + kEulerGamma + 0.5 / x;
}

double parisi_sum(int n) {
    if (n < 1) throw std::domain_error("parisi_sum requires n >= 1");
    double sum = 0.0, comp = 0.0;
    for (int k = n; k >= 1; --k) {
        const double term = 1.0 / (static_cast<double>(k) * k);
        const double t = sum + term;
        comp += (std::fabs(sum) >= term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

double mezard_parisi_expansion(int n) {
    if (n < 1) throw std::domain_error("mezard_parisi_expansion requires n >= 1");
    return kZeta2 - (kZeta2 / 2.0 + 2.0 * kZeta3) / static_cast<double>(n);
}

std::optional<double> exact_iid_max_mean(const DistributionSpec& spec, int n) {
    if (n < 1) throw std::domain_error("exact_iid_max_mean requires n >= 1");
    switch (spec.kind) {
        case DistKind::Exponential:
            return harmonic_number(n) / spec.a;
        case DistKind::Gumbel:
            return spec.a + spec.b * (std::log(static_cast<double>(n)) + kEulerGamma);
        case DistKind::Uniform01:
            return static_cast<double>(n) / (n + 1.0);
        default:
            return std::nullopt;
    }
}

PredictionRecord predict(const DistributionSpec& spec, int n) {
    if (n < 2) throw std::domain_error("predict requires n >= 2");
    if (spec.kind == DistKind::Uniform01) {
        throw std::domain_error(
            "prediction assumption violated: the tail quantile g must tend to infinity and "
            "be slowly varying at zero, but uniform01 has g bounded by 1");
    }

    PredictionRecord record;
    record.n = n;
    const double p = 1.0 / static_cast<double>(n);
    record.g_of_inv_n = tail_quantile(spec, p).value;
    record.em_n_predicted = record.g_of_inv_n;
    record.em_assignment_predicted = static_cast<double>(n) * record.g_of_inv_n;
    record.exact_em_n = exact_iid_max_mean(spec, n);

    if (spec.kind == DistKind::Poisson) {
        static const double kExpMinusE = std::exp(-std::exp(1.0));
        char buf[96];
        if (p < kExpMinusE) {
            std::snprintf(buf, sizeof(buf), "exact discrete g; asymptotic log(n)/log(log(n)) = %.6g",
                          asymptotic_tail_quantile(spec, p));
        } else {
            std::snprintf(buf, sizeof(buf),
                          "exact discrete g; asymptotic form needs 1/n < e^-e (n >= 16)");
        }
        record.notes = buf;
    }
    return record;
}

}  // namespace randassign
