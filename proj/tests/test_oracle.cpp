#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "nsum/oracle.hpp"

using namespace nsum;

TEST_CASE("exact enumeration of tiny constructions") {
    // n=3, everyone picks one in-neighbor: 2^3 equiprobable outcomes.
    TinyModel eight{3, {{1, 1.0}}, 1};
    std::size_t outcomes = 0;
    enumerate_exact(eight, [&](const std::vector<ArdRecord>& rec, double p) {
        ++outcomes;
        CHECK(p == doctest::Approx(0.125));
        CHECK(rec.size() == 3);
    });
    CHECK(outcomes == 8);

    // Forced complete in-neighborhoods: a single outcome.
    TinyModel forced{3, {{2, 1.0}}, 0};
    outcomes = 0;
    enumerate_exact(forced, [&](const std::vector<ArdRecord>&, double p) {
        ++outcomes;
        CHECK(p == doctest::Approx(1.0));
    });
    CHECK(outcomes == 1);

    CHECK(enumerate_total_mass({4, {{1, 0.5}, {2, 0.5}}, 2}) ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(enumerate_exact({6, {{3, 1.0}}, 1},
                                    [](const std::vector<ArdRecord>&, double) {},
                                    10.0),
                    std::invalid_argument);
}

TEST_CASE("expectation identities") {
    auto rep = check_expectation_y({3, {{1, 1.0}}, 1});
    CHECK(rep.pass);
    CHECK(rep.e_y == doctest::Approx(1.0 / 3.0));
    CHECK(rep.e_x_in == doctest::Approx(0.0));
    CHECK(rep.e_x_out == doctest::Approx(0.5));

    auto rep2 = check_expectation_y({4, {{1, 0.5}, {2, 0.5}}, 2});
    CHECK(rep2.pass);
    CHECK(rep2.e_y == doctest::Approx(0.5));
}

TEST_CASE("negative correlation on small models") {
    auto rep = check_negative_correlation({3, {{1, 1.0}}, 1});
    CHECK(rep.pass);
    CHECK(rep.worst_y <= 1e-12);

    // Degenerate endpoints give products of constants.
    CHECK(check_negative_correlation({4, {{1, 1.0}}, 0}).pass);
    CHECK(check_negative_correlation({4, {{1, 1.0}}, 4}).pass);
}

TEST_CASE("seeing the one hidden node is negatively dependent") {
    for (std::size_t n : {3ul, 4ul, 5ul}) {
        auto rep = check_dependence_example(n, 1);
        REQUIRE(rep.applicable);
        CHECK(rep.strict);
        CHECK(rep.conditional < rep.unconditional);
    }
    CHECK_FALSE(check_dependence_example(4, 4).applicable);
}

TEST_CASE("corpus covers the advertised shapes") {
    auto corpus = default_corpus();
    bool has_n2 = false, has_two_point = false, has_full_h = false;
    for (const auto& m : corpus) {
        if (m.n == 2) has_n2 = true;
        if (m.pmf.size() == 2) has_two_point = true;
        if (m.h == m.n) has_full_h = true;
        CHECK(m.n >= 2);
        CHECK(m.n <= 6);
        CHECK(enumeration_state_estimate(m) <= 1e7);
    }
    CHECK(has_n2);
    CHECK(has_two_point);
    CHECK(has_full_h);
}
