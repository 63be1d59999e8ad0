#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "nsum/bounds.hpp"

using namespace nsum;

TEST_CASE("tail function F frozen values") {
    CHECK(f_bound(2.0, 0.0) == doctest::Approx(2.0));
    CHECK(f_bound(2.0, 10.0) == doctest::Approx(0.2366204).epsilon(1e-5));
    CHECK(f_bound(1.05, 6595.35) == doctest::Approx(8.0127e-4).epsilon(1e-3));
    CHECK(f_bound(1.05, 50.0) == doctest::Approx(1.88439).epsilon(1e-4));
    CHECK(f_bound(1.1, 500.0) == doctest::Approx(0.207499).epsilon(1e-4));

    CHECK_THROWS_AS(f_bound(1.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(f_bound(0.5, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(f_bound(2.0, -1.0), std::invalid_argument);
}

TEST_CASE("F is decreasing in y and beta, exponents negative") {
    for (double beta : {1.01, 1.1, 1.5, 2.0, 5.0}) {
        double prev = f_bound(beta, 0.0);
        for (double y : {1.0, 5.0, 20.0, 100.0, 1000.0}) {
            const double cur = f_bound(beta, y);
            CHECK(cur < prev);
            prev = cur;
        }
    }
    for (double y : {1.0, 10.0, 200.0}) {
        double prev = f_bound(1.001, y);
        for (double beta : {1.01, 1.1, 1.5, 2.0, 5.0, 10.0}) {
            const double cur = f_bound(beta, y);
            CHECK(cur < prev);
            prev = cur;
        }
    }
    // Negativity of both exponent coefficients keeps the sample-size
    // denominator positive.
    for (double beta = 1.01; beta <= 100.0; beta *= 1.17) {
        CHECK((beta - 1.0) - beta * std::log(beta) < 0.0);
        CHECK((1.0 / beta - 1.0) + std::log(beta) / beta < 0.0);
    }
}

TEST_CASE("two-sided and lower chernoff bounds") {
    auto vacuous = chernoff_two_sided(2.0, 0.0);
    CHECK(vacuous.raw == doctest::Approx(2.0));
    CHECK(vacuous.clamped == 1.0);
    CHECK(chernoff_two_sided(2.0, 10.0).raw ==
          doctest::Approx(0.2366204).epsilon(1e-5));

    CHECK(chernoff_lower(0.1, 3000.0).raw ==
          doctest::Approx(1.807e-7).epsilon(1e-3));
    CHECK(chernoff_lower(0.5, 10.0).raw ==
          doctest::Approx(0.21561).epsilon(1e-4));
    CHECK(chernoff_lower(1e-9, 100.0).raw == doctest::Approx(1.0));

    CHECK_THROWS_AS(chernoff_lower(0.0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_lower(1.0, 10.0), std::invalid_argument);
}

TEST_CASE("estimator tail bounds") {
    CHECK(mor_bound(1.05, 131907, 0.05).raw ==
          doctest::Approx(8.013e-4).epsilon(1e-3));
    CHECK(mor_bound(2.0, 200, 0.05).raw ==
          doctest::Approx(0.2366204).epsilon(1e-5));

    for (std::size_t m : {10ul, 100ul, 5000ul})
        for (double rho : {0.02, 0.1, 0.5})
            CHECK(ros_bound_simple(1.1, m, rho).raw ==
                  mor_bound(1.1, m, rho).raw);

    auto small = ros_bound_simple(1.05, 1000, 0.05);
    CHECK(small.raw == doctest::Approx(1.88439).epsilon(1e-4));
    CHECK(small.clamped == 1.0);

    CHECK_THROWS_AS(mor_bound(1.05, 0, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(mor_bound(1.05, 10, 0.0), std::invalid_argument);
}

TEST_CASE("reach-sum pmf bound") {
    // Point mass reduces to the closed form.
    std::map<std::uint64_t, double> point{{500, 1.0}};
    CHECK(ros_bound_pmf(1.1, 1.0, point).raw ==
          doctest::Approx(f_bound(1.1, 500.0)));

    std::map<std::uint64_t, double> two{{100, 0.5}, {200, 0.5}};
    CHECK(ros_bound_pmf(2.0, 0.1, two).raw ==
          doctest::Approx(0.141763).epsilon(1e-4));

    std::map<std::uint64_t, double> bad{{100, 0.5}, {200, 0.4}};
    CHECK_THROWS_AS(ros_bound_pmf(2.0, 0.1, bad), std::invalid_argument);
}

TEST_CASE("pmf-averaged bound beats the generic one on regular degrees") {
    // d-regular pmf: R_S is exactly m*d, and F decreases in its second
    // argument, so the averaged bound can only improve for d >= 1.
    for (std::size_t d : {1ul, 2ul, 5ul})
        for (std::size_t m : {10ul, 100ul, 1000ul}) {
            std::map<std::uint64_t, double> pmf{{m * d, 1.0}};
            CHECK(ros_bound_pmf(1.1, 0.05, pmf).raw <=
                  mor_bound(1.1, m, 0.05).raw + 1e-12);
        }
}

TEST_CASE("sufficient sample size") {
    const std::size_t m1 = sample_size(1'000'000, 0.05, 1.05, 0.5);
    CHECK(m1 >= 131'803);
    CHECK(m1 <= 132'066);
    CHECK(sample_size(1'000'000, 0.02, 1.05, 0.5) ==
          doctest::Approx(329'768).epsilon(0.001));
    CHECK(sample_size(1'000'000, 0.10, 1.05, 0.5) ==
          doctest::Approx(65'953).epsilon(0.001));
    CHECK(sample_size(47'538, 0.1101, 1.10, 0.5) ==
          doctest::Approx(12'943).epsilon(0.001));

    CHECK_THROWS_AS(sample_size(1000, 0.05, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(sample_size(1000, 0.0, 1.05, 0.5), std::invalid_argument);
}

TEST_CASE("sample size round-trips through the tail bound") {
    for (std::size_t n : {10'000ul, 100'000ul, 1'000'000ul})
        for (double rho : {0.02, 0.05, 0.1})
            for (double beta : {1.05, 1.1, 1.5}) {
                const std::size_t m = sample_size(n, rho, beta, 0.5);
                CHECK(mor_bound(beta, m, rho).raw <=
                      1.0 / std::sqrt(static_cast<double>(n)) + 1e-12);
            }
}

TEST_CASE("erdos-renyi split bound") {
    // mu = 1000 * 30 = 30000 with p(n-1) = 30.
    const std::size_t n = 10'001;
    const double p = 30.0 / static_cast<double>(n - 1);
    auto fixed = er_ros_bound(1.1, 0.05, 1000, n, p, DeltaPolicy::at(0.1));
    CHECK(fixed.raw == doctest::Approx(4.614e-3).epsilon(1e-3));

    auto best = er_ros_bound(1.1, 0.05, 1000, n, p, DeltaPolicy::minimize());
    for (double d : {0.05, 0.1, 0.3, 0.6, 0.9})
        CHECK(best.raw <=
              er_ros_bound(1.1, 0.05, 1000, n, p, DeltaPolicy::at(d)).raw + 1e-15);

    auto vac = er_ros_bound(1.1, 0.05, 100, n, p, DeltaPolicy::at(0.1));
    CHECK(vac.raw > 1.0);
    CHECK(vac.clamped == 1.0);

    // Monotone nonincreasing in m under the minimizing policy.
    double prev = 2.0;
    for (std::size_t m : {100ul, 300ul, 1000ul, 3000ul, 10000ul}) {
        const double cur =
            er_ros_bound(1.1, 0.05, m, n, p, DeltaPolicy::minimize()).raw;
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }

    CHECK_THROWS_AS(er_ros_bound(1.1, 0.05, 10, n, 0.0, DeltaPolicy::minimize()),
                    std::invalid_argument);
    CHECK_THROWS_AS(er_ros_bound(1.1, 0.05, 10, n, p, DeltaPolicy::at(1.5)),
                    std::invalid_argument);
}

TEST_CASE("scale-free split bound") {
    // m=1, fixed delta, rho=1: y = (1-delta)*mu, exposing mu via the echo.
    auto approx = sf_ros_bound(1.1, 1.0, 1, 1'000'000, 2.5,
                              DeltaPolicy::at(0.5), SfMuMode::closed_form_approx);
    CHECK(approx.y / 0.5 == doctest::Approx(2.997).epsilon(1e-3));

    auto exact = sf_ros_bound(1.1, 1.0, 1, 1'000'000, 2.5,
                              DeltaPolicy::at(0.5), SfMuMode::exact_pmf_mean);
    CHECK(exact.y / 0.5 == doctest::Approx(1.947).epsilon(1e-2));

    CHECK_THROWS_AS(sf_ros_bound(1.1, 0.05, 10, 1000, 2.0,
                                 DeltaPolicy::minimize(), SfMuMode::closed_form_approx),
                    std::invalid_argument);
}

TEST_CASE("adversarial lower bound") {
    CHECK(adversarial_lower_bound(9) == doctest::Approx(2.0));
    CHECK(adversarial_lower_bound(3) == doctest::Approx(1.0));
    CHECK(adversarial_lower_bound(201) == doctest::Approx(10.0));
    CHECK_THROWS_AS(adversarial_lower_bound(8), std::invalid_argument);
    CHECK_THROWS_AS(adversarial_lower_bound(1), std::invalid_argument);
}

TEST_CASE("full-sampling worst cases") {
    DegreeSummary regular{3, 3, 3, 3, 3.0};
    auto [mu, ml] = fullsampling_worstcase(Method::MoR, regular);
    CHECK(mu == doctest::Approx(1.0));
    CHECK(ml == doctest::Approx(1.0));

    DegreeSummary star{9, 1, 1, 9, 1.8};
    auto [smu, sml] = fullsampling_worstcase(Method::MoR, star);
    CHECK(smu == doctest::Approx(9.0));
    CHECK(sml == doctest::Approx(9.0));
    auto [rmu, rml] = fullsampling_worstcase(Method::RoS, star);
    CHECK(rmu == doctest::Approx(5.0));
    CHECK(rml == doctest::Approx(1.8));

    DegreeSummary bad{3, 0, 1, 3, 2.0};
    CHECK_THROWS_AS(fullsampling_worstcase(Method::MoR, bad),
                    std::invalid_argument);
}

TEST_CASE("exact reach-sum convolution") {
    auto point = DegreeDistribution::explicit_pmf(3, {{1, 1.0}});
    auto pmf = convolve_rs_pmf(point, 2);
    REQUIRE(pmf.size() == 1);
    CHECK(pmf.at(2) == doctest::Approx(1.0));

    auto two = DegreeDistribution::explicit_pmf(4, {{1, 0.5}, {2, 0.5}});
    auto conv = convolve_rs_pmf(two, 2);
    CHECK(conv.at(2) == doctest::Approx(0.25));
    CHECK(conv.at(3) == doctest::Approx(0.5));
    CHECK(conv.at(4) == doctest::Approx(0.25));

    auto big = DegreeDistribution::er_truncated(10'000, 0.01);
    CHECK_THROWS_AS(convolve_rs_pmf(big, 10'000, 1'000'000),
                    std::invalid_argument);

    // Convolved pmf feeds the averaged bound directly.
    auto bound = ros_bound_pmf(1.5, 0.3, conv);
    CHECK(bound.raw > 0.0);
}
