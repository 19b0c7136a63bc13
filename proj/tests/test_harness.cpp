#include <doctest.h>

#include <cmath>

#include "levyhk/harness.hpp"

using namespace levyhk;

TEST_CASE("bound id round trip") {
    for (auto id : {BoundId::Rho, BoundId::FExample1, BoundId::FExample2,
                    BoundId::OnDiagonal, BoundId::NuTail})
        CHECK(parse_bound_id(bound_name(id)) == id);
    CHECK_THROWS_AS(parse_bound_id("nope"), InvalidParameter);
}

TEST_CASE("equivalence chain holds for the Cauchy-type model") {
    const auto rep = verify_equivalence_chain(builtin_model("cauchy1d"));
    CHECK(rep.all_hold);
    CHECK_FALSE(rep.consistent_failure);
    REQUIRE_FALSE(rep.links.empty());
    CHECK(rep.links[0].id == "a:h<=cK");
    CHECK(rep.links[0].verdict == Verdict::Holds);
    CHECK(rep.links[0].witness == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("log-heavy model fails (a) and (b) on the same window") {
    const auto rep = verify_equivalence_chain(builtin_model("logheavy1d"));
    CHECK_FALSE(rep.all_hold);
    CHECK(rep.consistent_failure);
    CHECK(rep.links[0].verdict == Verdict::Fails);
    CHECK(rep.links[1].verdict == Verdict::Fails);
}

TEST_CASE("lemma suite passes on Cauchy-type and Gaussian-plus-jumps models") {
    for (const auto& name : {"cauchy1d", "gauss-trunc1d"}) {
        const auto rep = verify_lemma_suite(builtin_model(name));
        for (const auto& c : rep.checks) {
            INFO(name, " / ", c.id, ": ", c.note);
            CHECK(c.pass);
        }
        CHECK(rep.all_pass);
    }
}

TEST_CASE("off-diagonal density vs jump tail on the Cauchy-type model") {
    // p(t,x)/(t nu0(x)) = x^2/((pi t)^2 + x^2); at t = 0.25, x = 4:
    // 16/((pi/4)^2 + 16) = 0.96287944...
    Characteristics ch(builtin_model("cauchy1d"));
    HarnessOptions ho;
    ho.mc_cross_check = false;
    const auto rep = comparability_report(builtin_model("cauchy1d"), {0.25}, {4.0},
                                          BoundId::NuTail, CenteringMode::HInverse, ho);
    const double ref = 16.0 / (sqr(pi / 4.0) + 16.0);
    CHECK(rep.ratio_max == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("rho comparability with Monte Carlo cross-check") {
    HarnessOptions ho;
    ho.mc_samples = 20000;
    const auto rep = comparability_report(builtin_model("cauchy1d"), {0.25, 1.0}, {},
                                          BoundId::Rho, CenteringMode::HInverse, ho);
    CHECK(rep.holds);
    CHECK(rep.mc_pass);
    CHECK(rep.mc_points > 0);
    // closed-form spot t = 1, x -> 0: p(1,0)/rho_1(0) = (1/pi^2)/(1/4)
    CHECK(rep.ratio_max <= 0.5 * (1.0 + 1e-6));
    CHECK(rep.ratio_min > 0.1);
}

TEST_CASE("example reports are grid-certified") {
    HarnessOptions ho;
    ho.mc_cross_check = false;
    const auto rep = verify_example("example2", {0.1, 0.5}, {0.5, 2.0, 10.0}, ho);
    CHECK(rep.holds);
    CHECK(std::isfinite(rep.ratio_max));
    CHECK(rep.ratio_min > 0.0);
    CHECK(rep.note.find("grid-certified") != std::string::npos);
}
