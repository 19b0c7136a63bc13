#include <doctest.h>

#include <cmath>

#include "levyhk/builtin.hpp"
#include "levyhk/model.hpp"

using namespace levyhk;

TEST_CASE("stable profile closed form") {
    const auto p = UnimodalProfile::stable(1.0, 1);
    CHECK(p(2.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(p(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // exact scaling nu0(lam r) = lam^{-d-alpha} nu0(r)
    for (double lam : {0.5, 2.0})
        for (double r : {0.1, 1.0, 7.0})
            CHECK(p(lam * r) ==
                  doctest::Approx(std::pow(lam, -2.0) * p(r)).epsilon(1e-13));
}

TEST_CASE("mixture and log-heavy closed forms") {
    const auto mix = UnimodalProfile::stable_mixture(1.5, 0.5, 1);
    for (double r : {0.25, 1.0, 4.0})
        CHECK(mix(r) == doctest::Approx(std::pow(r, -2.5) + std::pow(r, -1.5))
                            .epsilon(1e-13));
    const auto lh = UnimodalProfile::log_heavy(1.0, 1);
    for (double r : {0.5, 2.0, 50.0}) {
        const double ref = 1.0 / (r * sqr(std::log1p(std::sqrt(r))));
        CHECK(lh(r) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("truncated profile support edge") {
    const auto p = UnimodalProfile::truncated(1.0, 1.0, 1);
    CHECK(p(0.5) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(p(1.5) == 0.0);
    CHECK(p.support_log_edge() == doctest::Approx(0.0));
    CHECK(UnimodalProfile::stable(1.0, 1).support_log_edge() == inf);
}

TEST_CASE("profiles are non-increasing on a log grid") {
    for (const auto& m : builtin_models()) {
        double prev = inf;
        for (int i = 0; i < 100; ++i) {
            const double r = 1e-4 * std::pow(1e8, i / 99.0);
            const double v = m.profile(r);
            CHECK(v <= prev * (1.0 + 1e-12));
            prev = v;
        }
    }
}

TEST_CASE("table profile interpolates and rejects non-monotone input") {
    const auto p = UnimodalProfile::table({{1.0, 1.0}, {10.0, 0.01}}, 1);
    CHECK(p(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p(10.0) == doctest::Approx(0.01).epsilon(1e-12));
    // log-log linear midpoint
    CHECK(p(std::sqrt(10.0)) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(UnimodalProfile::table({{1.0, 1.0}, {2.0, 3.0}}, 1), Error);
    CHECK_THROWS_AS(UnimodalProfile::stable(2.5, 1), InvalidParameter);
}

TEST_CASE("validate_levy_measure verdicts") {
    // nu0 = r^-2, d=1: int (1 ^ x^2) nu0 dx = 2(1+1) = 4, infinite mass at 0
    const auto good = LevyModel::isotropic(UnimodalProfile::stable(1.0, 1));
    const auto rep = validate_levy_measure(good);
    CHECK(rep.levy_integral == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(rep.mass_total == inf);
    CHECK(rep.h_zero_infinite);

    // nu0 = r^-4: int_0 r^2 r^-4 diverges
    CHECK_THROWS_AS(
        validate_levy_measure(LevyModel::isotropic(UnimodalProfile::custom(
            [](double r) { return std::pow(r, -4.0); }, 1))),
        Error);

    // finite-mass indicator: compound-Poisson warning
    const auto cp = LevyModel::isotropic(UnimodalProfile::custom(
        [](double r) { return r < 2.0 ? 1.0 : 0.0; }, 1));
    const auto rep2 = validate_levy_measure(cp);
    CHECK(rep2.mass_total == doctest::Approx(4.0).epsilon(1e-8));
    CHECK_FALSE(rep2.h_zero_infinite);
    REQUIRE_FALSE(rep2.warnings.empty());
    CHECK(rep2.warnings.front().find("compound-poisson") != std::string::npos);
}
