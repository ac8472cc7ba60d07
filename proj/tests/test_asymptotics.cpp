#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oracles.hpp"
#include "randassign/asymptotics.hpp"

using namespace randassign;

TEST_CASE("parisi_sum: exact small values, monotone, bounded by zeta(2)") {
    CHECK(parisi_sum(1) == 1.0);
    CHECK(parisi_sum(2) == 1.25);
    CHECK(parisi_sum(5) == doctest::Approx(1.4636111111111112).epsilon(1e-15));
    double prev = 0.0;
    for (int n = 1; n <= 200; ++n) {
        const double s = parisi_sum(n);
        CHECK(s > prev);
        CHECK(s < kZeta2);
        prev = s;
    }
    // tail of sum 1/k^2 beyond n is below 1/n
    CHECK(std::fabs(parisi_sum(1000000) - kZeta2) < 1e-6 + 1e-6);
    CHECK_THROWS_AS(parisi_sum(0), std::domain_error);
}

TEST_CASE("mezard_parisi_expansion: frozen values and limit") {
    // zeta(2)/2 + 2*zeta(3) = 3.22658083974330, so at n = 100 the expansion
    // evaluates to 1.61266825845079.
    CHECK(mezard_parisi_expansion(100) == doctest::Approx(1.6126682584507934).epsilon(1e-14));
    CHECK(mezard_parisi_expansion(1) == doctest::Approx(-1.5816467728950754).epsilon(1e-14));
    CHECK(std::fabs(mezard_parisi_expansion(1000000000) - kZeta2) < 1e-8);
    CHECK_THROWS_AS(mezard_parisi_expansion(0), std::domain_error);
}

TEST_CASE("harmonic_number: direct sums and asymptotic branch") {
    CHECK(harmonic_number(1) == 1.0);
    CHECK(harmonic_number(5) == doctest::Approx(2.283333333333333).epsilon(1e-15));
    CHECK(harmonic_number(50) == doctest::Approx(4.499205338329425).epsilon(1e-14));
    for (long long n : {2LL, 17LL, 1000LL}) {
        CHECK(harmonic_number(n) == doctest::Approx(oracles::harmonic(n)).epsilon(1e-13));
    }
    // asymptotic branch joins the direct sum smoothly
    const double direct = harmonic_number(1000000);
    const double asym = harmonic_number(1000001);
    CHECK(std::fabs(asym - (direct + 1.0 / 1000001.0)) < 1e-9);
}

TEST_CASE("exact_iid_max_mean vs the integration oracle") {
    // E M_n = integral of (1 - F^n) on r > 0 minus integral of F^n on r < 0,
    // evaluated with test-local CDFs.
    auto exp_cdf = [](double r) { return r <= 0.0 ? 0.0 : -std::expm1(-r); };
    auto uniform_cdf = [](double r) { return r <= 0.0 ? 0.0 : (r >= 1.0 ? 1.0 : r); };
    auto gumbel_cdf = [](double r) { return std::exp(-std::exp(-r)); };

    const auto exp5 = exact_iid_max_mean(DistributionSpec::exponential(1.0), 5);
    REQUIRE(exp5.has_value());
    CHECK(*exp5 == doctest::Approx(2.283333333333333).epsilon(1e-14));
    CHECK(std::fabs(*exp5 - oracles::iid_max_mean(exp_cdf, 5, 0.0, 60.0)) < 1e-8);

    const auto uni3 = exact_iid_max_mean(DistributionSpec::uniform01(), 3);
    REQUIRE(uni3.has_value());
    CHECK(*uni3 == 0.75);
    CHECK(std::fabs(*uni3 - oracles::iid_max_mean(uniform_cdf, 3, 0.0, 1.0)) < 1e-8);

    const auto gum1 = exact_iid_max_mean(DistributionSpec::gumbel(0.0, 1.0), 1);
    REQUIRE(gum1.has_value());
    CHECK(*gum1 == doctest::Approx(kEulerGamma).epsilon(1e-14));
    CHECK(std::fabs(*gum1 - oracles::iid_max_mean(gumbel_cdf, 1, 30.0, 60.0)) < 1e-8);

    // rate and scale/location move the closed forms accordingly
    const auto exp_rate = exact_iid_max_mean(DistributionSpec::exponential(2.0), 5);
    CHECK(*exp_rate == doctest::Approx(*exp5 / 2.0).epsilon(1e-14));
    const auto gum_shift = exact_iid_max_mean(DistributionSpec::gumbel(1.0, 2.0), 7);
    CHECK(*gum_shift ==
          doctest::Approx(1.0 + 2.0 * (std::log(7.0) + kEulerGamma)).epsilon(1e-14));

    CHECK(!exact_iid_max_mean(DistributionSpec::standard_normal(), 5).has_value());
    CHECK(!exact_iid_max_mean(DistributionSpec::laplace(0.0, 1.0), 5).has_value());
    CHECK(!exact_iid_max_mean(DistributionSpec::poisson(4.0), 5).has_value());
}

TEST_CASE("predict: exponential closed form") {
    const PredictionRecord r = predict(DistributionSpec::exponential(1.0), 100);
    CHECK(r.g_of_inv_n == doctest::Approx(std::log(100.0)).epsilon(1e-15));
    CHECK(r.em_assignment_predicted == doctest::Approx(460.5170185988091).epsilon(1e-13));
    CHECK(r.em_assignment_predicted == 100.0 * r.g_of_inv_n);
    REQUIRE(r.exact_em_n.has_value());
    CHECK(*r.exact_em_n == doctest::Approx(oracles::harmonic(100)).epsilon(1e-14));
}

TEST_CASE("predict: internal consistency em_assignment = n * g(1/n)") {
    for (const DistributionSpec& spec :
         {DistributionSpec::standard_normal(), DistributionSpec::exponential(1.0),
          DistributionSpec::gumbel(0.0, 1.0), DistributionSpec::laplace(0.0, 1.0),
          DistributionSpec::poisson(4.0)}) {
        for (int n : {2, 10, 137, 10000}) {
            const PredictionRecord r = predict(spec, n);
            CHECK(r.em_assignment_predicted == static_cast<double>(n) * r.g_of_inv_n);
            CHECK(r.em_n_predicted == r.g_of_inv_n);
        }
    }
}

TEST_CASE("predict: rejects uniform01 and n < 2") {
    CHECK_THROWS_AS(predict(DistributionSpec::uniform01(), 10), std::domain_error);
    CHECK_THROWS_AS(predict(DistributionSpec::exponential(1.0), 1), std::domain_error);
}

TEST_CASE("predict: exact/leading ratios at n = 1e4") {
    // H_n / log n -> 1 from above
    const PredictionRecord exp_r = predict(DistributionSpec::exponential(1.0), 10000);
    // g(1/n) = -log(1/n); rounding 1/n costs at most an ulp against log(n)
    CHECK(exp_r.g_of_inv_n == doctest::Approx(std::log(10000.0)).epsilon(1e-15));
    const double exp_ratio = *exp_r.exact_em_n / exp_r.g_of_inv_n;
    CHECK(exp_ratio >= 1.0);
    CHECK(exp_ratio <= 1.07);

    const PredictionRecord gum_r = predict(DistributionSpec::gumbel(0.0, 1.0), 10000);
    const double gum_ratio = *gum_r.exact_em_n / gum_r.g_of_inv_n;
    CHECK(gum_ratio >= 1.0);
    CHECK(gum_ratio <= 1.08);
}

TEST_CASE("predict: normal leading term against n*sqrt(2 log n)") {
    // g(1/n) = sqrt(2 log n) (1 + o(1)); the o(1) decays like
    // log log n / log n, so the ratio at n = 1e6 is still only ~0.904.
    auto ratio_at = [](int n) {
        const PredictionRecord r = predict(DistributionSpec::standard_normal(), n);
        return r.em_assignment_predicted /
               (static_cast<double>(n) * std::sqrt(2.0 * std::log(static_cast<double>(n))));
    };
    CHECK(ratio_at(1000000) == doctest::Approx(0.9042908061698568).epsilon(1e-9));
    CHECK(ratio_at(1000000) < 1.0);
    CHECK(ratio_at(1000000) > ratio_at(100));  // climbing toward 1
}

TEST_CASE("predict: poisson uses the exact discrete quantile, notes the asymptotic") {
    const PredictionRecord r = predict(DistributionSpec::poisson(4.0), 100);
    CHECK(r.g_of_inv_n == 10.0);  // smallest m with P(X >= m) <= 0.01 at lambda = 4
    CHECK(!r.exact_em_n.has_value());
    CHECK(r.notes.find("3.01547") != std::string::npos);

    // below n = 16 the asymptotic form is out of domain and the note says so
    const PredictionRecord small = predict(DistributionSpec::poisson(4.0), 10);
    CHECK(small.notes.find("n >= 16") != std::string::npos);
}
