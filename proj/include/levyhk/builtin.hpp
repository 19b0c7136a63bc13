#ifndef LEVYHK_BUILTIN_HPP
#define LEVYHK_BUILTIN_HPP

#include <string>
#include <vector>

#include "levyhk/model.hpp"

namespace levyhk {

// Named reference models used by the verification harness and tests.
inline LevyModel builtin_model(const std::string& name) {
    if (name == "cauchy1d")
        return LevyModel::isotropic(UnimodalProfile::stable(1.0, 1), {}, {}, name);
    if (name == "stable15-1d")
        return LevyModel::isotropic(UnimodalProfile::stable(1.5, 1), {}, {}, name);
    if (name == "mixture1d")
        return LevyModel::isotropic(UnimodalProfile::stable_mixture(1.5, 0.5, 1), {},
                                    {}, name);
    if (name == "logheavy1d")
        return LevyModel::isotropic(UnimodalProfile::log_heavy(1.0, 1), {}, {}, name);
    if (name == "cauchy2d")
        return LevyModel::isotropic(UnimodalProfile::stable(1.0, 2), {}, {}, name);
    if (name == "truncated1d")
        return LevyModel::isotropic(UnimodalProfile::truncated(1.0, 1.0, 1), {}, {},
                                    name);
    if (name == "gauss-trunc1d")
        return LevyModel::isotropic(UnimodalProfile::truncated(1.0, 1.0, 1),
                                    Matrix{{1.0}}, {}, name);
    throw InvalidParameter("unknown builtin model: " + name);
}

inline std::vector<std::string> builtin_model_names() {
    return {"cauchy1d", "stable15-1d", "mixture1d", "logheavy1d", "cauchy2d"};
}

inline std::vector<LevyModel> builtin_models() {
    std::vector<LevyModel> out;
    for (const auto& n : builtin_model_names()) out.push_back(builtin_model(n));
    return out;
}

}  // namespace levyhk

#endif
