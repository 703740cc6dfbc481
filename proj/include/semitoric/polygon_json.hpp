#pragma once

#include <json.hpp>

#include "semitoric/marked_polygon.hpp"

namespace semitoric {

using json = nlohmann::json;

// Points serialize as ["num/den", "num/den"] strings so round trips are
// bit-exact; marked polygons use {polygon: [...], marks: [{c, eps}]}.

inline json to_json(const RatPoint& p) { return json::array({p.x.str(), p.y.str()}); }

inline RatPoint point_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::domain_error("point: expected a two-element array");
    auto coord = [](const json& v) {
        if (v.is_string()) return Rat::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rat(v.get<long>());
        throw std::domain_error("point: coordinates must be rational strings or integers");
    };
    return {coord(j[0]), coord(j[1])};
}

inline json to_json(const ConvexPolygon& poly) {
    json out = json::array();
    for (const auto& v : poly.vertices()) out.push_back(to_json(v));
    return out;
}

inline json to_json(const MarkedPolygon& mp) {
    json marks = json::array();
    for (const auto& m : mp.marks())
        marks.push_back({{"c", to_json(m.c)}, {"eps", m.eps}});
    return {{"polygon", to_json(mp.polygon())}, {"marks", marks}};
}

inline MarkedPolygon marked_polygon_from_json(const json& j) {
    if (!j.contains("polygon")) throw std::domain_error("marked polygon: missing 'polygon'");
    std::vector<RatPoint> verts;
    for (const auto& v : j.at("polygon")) verts.push_back(point_from_json(v));
    std::vector<Mark> marks;
    if (j.contains("marks")) {
        for (const auto& m : j.at("marks")) {
            Mark mark{point_from_json(m.at("c")), m.at("eps").get<int>()};
            marks.push_back(mark);
        }
    }
    return MarkedPolygon(hull(std::move(verts)), std::move(marks));
}

} // namespace semitoric
