#ifndef LEVYHK_MODEL_JSON_HPP
#define LEVYHK_MODEL_JSON_HPP

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "levyhk/model.hpp"

namespace levyhk {

// Model ingestion from a JSON document of the shape
//   {"dim": 1, "A": [[0.0]], "drift": [0.0],
//    "profile": {"kind": "stable", "alpha": 1.0},
//    "comp_lower": 1.0, "comp_upper": 1.0, "symmetric": true}
// Only data-representable models are accepted; anisotropy and custom profile
// callables have no JSON form.

inline UnimodalProfile profile_from_json(const nlohmann::json& j, int dim) {
    if (!j.is_object() || !j.contains("kind"))
        throw InvalidParameter("profile must be an object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    auto num = [&](const char* key) {
        if (!j.contains(key))
            throw InvalidParameter("profile kind \"" + kind +
                                   "\" requires field \"" + key + "\"");
        return j.at(key).get<double>();
    };
    if (kind == "none") return UnimodalProfile::none(dim);
    if (kind == "stable") return UnimodalProfile::stable(num("alpha"), dim);
    if (kind == "stable-mixture")
        return UnimodalProfile::stable_mixture(num("alpha"), num("beta"), dim);
    if (kind == "tempered")
        return UnimodalProfile::tempered(num("alpha"), num("lambda"), dim);
    if (kind == "truncated")
        return UnimodalProfile::truncated(num("alpha"), num("radius"), dim);
    if (kind == "log-heavy") return UnimodalProfile::log_heavy(num("alpha"), dim);
    if (kind == "table") {
        if (!j.contains("pairs") || !j.at("pairs").is_array())
            throw InvalidParameter("table profile requires \"pairs\": [[r, v], ...]");
        std::vector<std::pair<double, double>> pairs;
        for (const auto& e : j.at("pairs"))
            pairs.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        return UnimodalProfile::table(std::move(pairs), dim);
    }
    throw InvalidParameter("unknown profile kind: " + kind);
}

inline LevyModel model_from_json(const nlohmann::json& j,
                                 const std::string& name = "model") {
    if (!j.is_object()) throw InvalidParameter("model document must be an object");
    const int dim = j.value("dim", 1);
    if (dim < 1) throw InvalidParameter("dim must be positive");
    if (!j.contains("profile")) throw InvalidParameter("model requires \"profile\"");
    LevyModel m = LevyModel::isotropic(profile_from_json(j.at("profile"), dim));
    if (j.contains("A")) {
        m.A = j.at("A").get<Matrix>();
    } else {
        m.A = zero_matrix(m.dim);
    }
    m.drift = j.contains("drift") ? j.at("drift").get<Vector>()
                                  : Vector(m.dim, 0.0);
    m.comp_lower = j.value("comp_lower", 1.0);
    m.comp_upper = j.value("comp_upper", 1.0);
    m.symmetric = j.value("symmetric", true);
    m.name = j.value("name", name);
    m.validate_shape();
    if (!m.profile.is_zero()) m.profile.check_monotone();
    return m;
}

inline LevyModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter("model file " + path + ": " + e.what());
    }
    std::string stem = path;
    if (auto p = stem.find_last_of('/'); p != std::string::npos) stem = stem.substr(p + 1);
    if (auto p = stem.rfind(".json"); p != std::string::npos) stem = stem.substr(0, p);
    try {
        return model_from_json(j, stem);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameter("model file " + path + ": " + e.what());
    }
}

inline nlohmann::json model_to_json(const LevyModel& m) {
    nlohmann::json p;
    p["kind"] = m.profile.kind_name();
    switch (m.profile.kind()) {
        case UnimodalProfile::Kind::Stable:
        case UnimodalProfile::Kind::LogHeavy:
            p["alpha"] = m.profile.alpha();
            break;
        case UnimodalProfile::Kind::StableMixture:
            p["alpha"] = m.profile.alpha();
            p["beta"] = m.profile.beta();
            break;
        case UnimodalProfile::Kind::Tempered:
            p["alpha"] = m.profile.alpha();
            p["lambda"] = m.profile.lambda();
            break;
        case UnimodalProfile::Kind::Truncated:
            p["alpha"] = m.profile.alpha();
            p["radius"] = m.profile.radius();
            break;
        default:
            break;
    }
    return nlohmann::json{{"dim", m.dim},           {"A", m.A},
                          {"drift", m.drift},       {"profile", p},
                          {"comp_lower", m.comp_lower},
                          {"comp_upper", m.comp_upper},
                          {"symmetric", m.symmetric},
                          {"name", m.name}};
}

}  // namespace levyhk

#endif
