#include <doctest.h>

#include <cmath>

#include "levyhk/bound.hpp"
#include "levyhk/builtin.hpp"

using namespace levyhk;

TEST_CASE("rho closed forms for the Cauchy-type model") {
    Characteristics ch(builtin_model("cauchy1d"));
    BoundFunctionContext ctx(ch, 0.25);
    CHECK(ctx.h_inv_1t() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ctx.eval_rho(0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ctx.eval_rho(1.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(ctx.eval_rho(10.0) == doctest::Approx(0.005).epsilon(1e-9));
    CHECK(ctx.eval_rho(Vector{-10.0}) == doctest::Approx(0.005).epsilon(1e-9));
}

TEST_CASE("r0 solves t K(r0) r0^{-d} = [h^-1(1/t)]^{-d}") {
    Characteristics ch(builtin_model("cauchy1d"));
    // t = 0.25: 2t/x^2 = 1 => r0 = sqrt(0.5)
    BoundFunctionContext c1(ch, 0.25);
    CHECK(c1.solve_r0() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
    // bracket and monotonicity in t
    BoundFunctionContext c2(ch, 1.0);
    const double r0a = c1.solve_r0(), r0b = c2.solve_r0();
    CHECK(r0a < r0b);
    CHECK(r0b >= ch.invert_h(3.0) * (1.0 - 1e-10));
    CHECK(r0b <= ch.invert_h(1.0) * (1.0 + 1e-10));
}

TEST_CASE("integral of rho: exact value and dimensional band") {
    Characteristics ch(builtin_model("cauchy1d"));
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
        BoundFunctionContext ctx(ch, t);
        CHECK(ctx.integrate_rho() ==
              doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-8));
    }
    Characteristics ch2(builtin_model("cauchy2d"));
    for (double t : {0.1, 1.0}) {
        BoundFunctionContext ctx(ch2, t);
        const double v = ctx.integrate_rho();
        CHECK(v >= pi * (1.0 - 1e-9));
        CHECK(v <= 2.0 * pi * (1.0 + 1e-9));
    }
}

TEST_CASE("phi plateau/tail form dominates rho") {
    Characteristics ch(builtin_model("cauchy1d"));
    const auto est = estimate_scaling(ch, ScalingRegime::LowerAtZero, 1e-4, 1e2);
    BoundFunctionContext ctx(ch, 0.25, CenteringMode::HInverse, est);
    CHECK(ctx.eval_phi(0.9) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ctx.eval_phi(1.5) ==
          doctest::Approx(0.25 * (2.0 / 1.5) / 1.5).epsilon(1e-9));
    for (int i = 0; i < 20; ++i) {
        const double r = 0.05 * std::pow(400.0, i / 19.0);
        CHECK(ctx.eval_phi(r) >= ctx.eval_rho(r) * (1.0 - 1e-12));
    }
    // phi requires a scaling estimate
    BoundFunctionContext bare(ch, 0.25);
    CHECK_THROWS_AS(bare.eval_phi(1.0), Error);
}

TEST_CASE("drift centering modes") {
    Characteristics ch(builtin_model("cauchy1d"));
    BoundFunctionContext ctx(ch, 2.0, CenteringMode::PlainDrift);
    CHECK(ctx.drift_center()[0] == doctest::Approx(0.0));

    // one-sided alpha = 0.5 model: beta_h < 1, so the small-jump mode applies;
    // center = t (b + int_{|z|<1} z nu(dz)) with int = 2 int_0^1 z^{-1/2} dz = 4
    auto m = LevyModel::isotropic(UnimodalProfile::stable(0.5, 1));
    m.anisotropy = [](const Vector& x) { return x[0] > 0.0 ? 2.0 : 0.0; };
    m.comp_lower = 1e-9;
    m.comp_upper = 2.0;
    m.symmetric = false;
    Characteristics cho(m);
    BoundFunctionContext c2(cho, 0.5, CenteringMode::DriftPlusSmallJumps);
    CHECK(c2.small_jump_mean()[0] == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(c2.drift_center()[0] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("bound function uses jump-only characteristics when A != 0") {
    Characteristics full(builtin_model("gauss-trunc1d"));
    Characteristics jumps(builtin_model("truncated1d"));
    BoundFunctionContext ctx(full, 1.0);
    CHECK(ctx.h_inv_1t() ==
          doctest::Approx(jumps.invert_h(1.0)).epsilon(1e-9));
    for (double r : {0.5, 1.5, 3.0})
        CHECK(ctx.eval_rho(r) ==
              doctest::Approx(std::min(std::pow(ctx.h_inv_1t(), -1.0),
                                       1.0 * jumps.K(r) / r))
                  .epsilon(1e-9));
}
