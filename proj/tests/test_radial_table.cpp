#include <doctest.h>

#include <cmath>

#include "levyhk/radial_table.hpp"

using namespace levyhk;

namespace {

RadialTable power_law_table(double slope) {
    std::vector<double> g, v;
    for (int i = 0; i <= 64; ++i) {
        g.push_back(-4.0 + 8.0 * i / 64.0);
        v.push_back(slope * g.back());
    }
    return RadialTable(std::move(g), std::move(v),
                       slope >= 0 ? RadialTable::Direction::Increasing
                                  : RadialTable::Direction::Decreasing);
}

}  // namespace

TEST_CASE("node exactness") {
    const auto t = power_law_table(-2.0);
    for (double lr : t.log_grid()) CHECK(t(lr) == doctest::Approx(-2.0 * lr).epsilon(1e-14));
}

TEST_CASE("pchip interpolation is monotone between nodes") {
    std::vector<double> g = {0.0, 1.0, 2.0, 3.0, 4.0};
    std::vector<double> v = {0.0, 0.1, 3.0, 3.1, 3.2};  // steep middle step
    const RadialTable t(std::move(g), std::move(v), RadialTable::Direction::Increasing);
    double prev = -inf;
    for (int i = 0; i <= 400; ++i) {
        const double x = 4.0 * i / 400.0;
        const double y = t(x);
        CHECK(y >= prev - 1e-12);
        prev = y;
    }
}

TEST_CASE("boundary power-law extrapolation") {
    const auto t = power_law_table(-2.0);
    CHECK(t.tail_exponent_low() == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(t.tail_exponent_high() == doctest::Approx(-2.0).epsilon(1e-10));
    // extrapolated values continue the fitted law
    CHECK(t(-6.0) == doctest::Approx(12.0).epsilon(1e-10));
    CHECK(t(6.0) == doctest::Approx(-12.0).epsilon(1e-10));
}

TEST_CASE("direction violations are rejected") {
    std::vector<double> g = {0.0, 1.0, 2.0};
    std::vector<double> up = {0.0, 2.0, 1.0};
    CHECK_THROWS_AS(RadialTable(g, up, RadialTable::Direction::Increasing),
                    InvalidParameter);
    CHECK_NOTHROW(RadialTable(g, up, RadialTable::Direction::Free));
    std::vector<double> bad_grid = {0.0, 0.0, 1.0};
    CHECK_THROWS_AS(RadialTable(bad_grid, up, RadialTable::Direction::Free),
                    InvalidParameter);
}
