#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "promenade/curve_topology.hpp"

namespace promenade {

/// {"vertices": [[x, y, z], ...]}
inline PolyCurve3D curve_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw InvalidInput("curve JSON needs a \"vertices\" array");
    std::vector<Vec3> v;
    for (const auto& p : j["vertices"]) {
        if (!p.is_array() || p.size() != 3) throw InvalidInput("each vertex is [x, y, z]");
        for (const auto& c : p)
            if (!c.is_number()) throw InvalidInput("vertex coordinates must be numbers");
        v.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    return PolyCurve3D(std::move(v));
}

inline PolyCurve3D load_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
    return curve_from_json(j);
}

inline nlohmann::json curve_to_json(const PolyCurve3D& c) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& p : c.vertices()) v.push_back({p.x, p.y, p.z});
    return {{"vertices", v}};
}

} // namespace promenade
