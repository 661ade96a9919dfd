#pragma once

#include "json.hpp"
#include "rpf/analysis.hpp"

namespace rpf {

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    nlohmann::json data = nlohmann::json::object();
    for (const auto& [k, v] : r.data) data[k] = v;
    return nlohmann::json{{"check", r.check},
                          {"parameters", params},
                          {"pass", r.pass},
                          {"counterexamples", r.counterexamples},
                          {"data", data}};
}

}  // namespace rpf
