#include <doctest.h>

#include <cmath>

#include "levyhk/builtin.hpp"
#include "levyhk/density.hpp"

using namespace levyhk;

TEST_CASE("Cauchy-type inversion against the closed form") {
    Characteristics ch(builtin_model("cauchy1d"));
    for (double t : {0.25, 4.0}) {
        DensityEngine eng(ch, t);
        for (double x : {0.0, 0.7, 5.0, 18.0}) {
            const double ref = t / (sqr(pi * t) + x * x);
            CHECK(eng.at({x}) == doctest::Approx(ref).epsilon(1e-8));
        }
    }
}

TEST_CASE("pure Gaussian inversion is exact") {
    const auto m = LevyModel::isotropic(UnimodalProfile::none(1), Matrix{{0.5}});
    Characteristics ch(m);
    DensityEngine eng(ch, 1.0);  // variance 2tA = 1
    for (double x : {0.0, 1.3}) {
        const double ref = std::exp(-x * x / 2.0) / std::sqrt(2.0 * pi);
        CHECK(eng.at({x}) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("two-dimensional Cauchy-type inversion") {
    Characteristics ch(builtin_model("cauchy2d"));
    DensityEngine eng(ch, 0.5);
    const double a = 2.0 * pi * 0.5;
    for (double r : {0.0, 2.0, 12.0}) {
        const double ref = a / (2.0 * pi * std::pow(a * a + r * r, 1.5));
        CHECK(eng.at({r, 0.0}) == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("anisotropic line path agrees with the radial path") {
    auto m = builtin_model("cauchy1d");
    m.anisotropy = [](const Vector&) { return 1.0; };
    m.symmetric = false;
    Characteristics ch(m);
    DensityEngine eng(ch, 1.0);
    for (double x : {0.0, 2.0, 9.0})
        CHECK(eng.at({x}) ==
              doctest::Approx(1.0 / (sqr(pi) + x * x)).epsilon(1e-8));
}

TEST_CASE("derivatives of the Cauchy-type density") {
    Characteristics ch(builtin_model("cauchy1d"));
    DensityEngine eng(ch, 1.0);
    const double c = pi;
    // p'(1,x) = -(1/pi) 2cx/(c^2+x^2)^2
    CHECK(eng.derivative_at({1.0}, {1}) ==
          doctest::Approx(-(1.0 / pi) * 2.0 * c / sqr(c * c + 1.0)).epsilon(1e-7));
    // p''(1,x) = (1/pi) c (6x^2-2c^2)/(c^2+x^2)^3
    CHECK(eng.derivative_at({1.0}, {2}) ==
          doctest::Approx((1.0 / pi) * c * (6.0 - 2.0 * c * c) /
                          std::pow(c * c + 1.0, 3.0))
              .epsilon(1e-7));
    CHECK_THROWS_AS(eng.derivative_at({1.0}, {5}), InvalidParameter);
}

TEST_CASE("sup search finds the on-diagonal maximum") {
    Characteristics ch(builtin_model("cauchy1d"));
    DensityEngine eng(ch, 1.0);
    const auto s = eng.sup(Vector{0.0});
    CHECK(s.value == doctest::Approx(1.0 / sqr(pi)).epsilon(1e-7));
    CHECK(std::abs(s.argmax[0]) < 1e-4);
    CHECK_FALSE(s.on_boundary);
}

TEST_CASE("imaginary residual vanishes by construction") {
    Characteristics ch(builtin_model("cauchy1d"));
    DensityEngine eng(ch, 1.0);
    CHECK(eng.imaginary_residual() == 0.0);
}

TEST_CASE("non-integrable exponent is reported") {
    // finite-activity jumps, no Gaussian part: e^{-t psi} is not integrable
    const auto m = LevyModel::isotropic(UnimodalProfile::custom(
        [](double r) { return r < 2.0 ? 1.0 : 0.0; }, 1));
    Characteristics ch(m);
    CHECK_THROWS_WITH_AS(DensityEngine(ch, 0.01), doctest::Contains("not-integrable"),
                         Error);
}

TEST_CASE("density mass on a wide window is close to 1") {
    Characteristics ch(builtin_model("stable15-1d"));
    DensityEngine eng(ch, 0.5);
    double mass = 0.0;
    const double lo = -40.0, hi = 40.0;
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double p = eng.at({x});
        CHECK(p > -1e-7);  // nonnegative up to inversion noise
        mass += p * (hi - lo) / n * (i == 0 || i == n ? 0.5 : 1.0);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(2e-3));
}
