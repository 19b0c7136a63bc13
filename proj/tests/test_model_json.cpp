#include <doctest.h>

#include "levyhk/model_json.hpp"

using namespace levyhk;
using nlohmann::json;

TEST_CASE("full schema parses") {
    const json j = json::parse(R"({
        "dim": 1, "A": [[0.0]], "drift": [0.5],
        "profile": {"kind": "stable", "alpha": 1.0},
        "comp_lower": 1.0, "comp_upper": 1.0, "symmetric": true})");
    const auto m = model_from_json(j, "demo");
    CHECK(m.dim == 1);
    CHECK(m.drift[0] == 0.5);
    CHECK(m.profile.kind_name() == "stable");
    CHECK(m.profile(2.0) == doctest::Approx(0.25));
    CHECK(m.name == "demo");
}

TEST_CASE("defaults: A, drift, comparability, symmetry") {
    const auto m = model_from_json(
        json::parse(R"({"dim": 2, "profile": {"kind": "stable", "alpha": 1.0}})"));
    CHECK(m.A == zero_matrix(2));
    CHECK(m.drift == Vector(2, 0.0));
    CHECK(m.comp_lower == 1.0);
    CHECK(m.symmetric);
}

TEST_CASE("profile kinds round-trip through serialization") {
    for (const json& p : {
             json{{"kind", "stable"}, {"alpha", 1.5}},
             json{{"kind", "stable-mixture"}, {"alpha", 1.5}, {"beta", 0.5}},
             json{{"kind", "tempered"}, {"alpha", 1.0}, {"lambda", 2.0}},
             json{{"kind", "truncated"}, {"alpha", 1.0}, {"radius", 3.0}},
             json{{"kind", "log-heavy"}, {"alpha", 1.0}},
         }) {
        const auto m = model_from_json(json{{"dim", 1}, {"profile", p}});
        const auto m2 = model_from_json(model_to_json(m));
        for (double r : {0.5, 1.0, 2.5})
            CHECK(m.profile(r) == doctest::Approx(m2.profile(r)).epsilon(1e-14));
    }
}

TEST_CASE("table profile from pairs") {
    const auto m = model_from_json(json::parse(
        R"({"dim": 1, "profile": {"kind": "table", "pairs": [[1.0, 1.0], [10.0, 0.01]]}})"));
    CHECK(m.profile(1.0) == doctest::Approx(1.0));
}

TEST_CASE("schema errors are invalid-parameter") {
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"dim": 1})")), InvalidParameter);
    CHECK_THROWS_AS(
        model_from_json(json::parse(R"({"profile": {"kind": "warp"}})")),
        InvalidParameter);
    CHECK_THROWS_AS(
        model_from_json(json::parse(R"({"profile": {"kind": "stable"}})")),
        InvalidParameter);
    CHECK_THROWS_AS(
        model_from_json(json::parse(
            R"({"dim": 2, "A": [[1.0]], "profile": {"kind": "stable", "alpha": 1}})")),
        InvalidParameter);
    CHECK_THROWS_AS(load_model("/nonexistent/nothing.json"), InvalidParameter);
}
