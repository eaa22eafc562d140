#include "pdcover/geom/instance_io.h"

#include "pdcover/geom/errors.h"

#include <json.hpp>

namespace pdc {

namespace {

using nlohmann::json;

Scalar scalar_from(const json& j) {
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_number_float()) return parse_scalar(j.dump());
    throw Error(ErrorKind::InvalidInput, "expected a number, got " + j.dump());
}

Point2 point_from(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw Error(ErrorKind::InvalidInput, "expected [x, y], got " + j.dump());
    return {scalar_from(j[0]), scalar_from(j[1])};
}

}  // namespace

PlanarInstance parse_planar_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::InvalidInput, "expected an object");
    PlanarInstance inst;
    if (doc.contains("points"))
        for (const auto& p : doc.at("points")) inst.points.push_back(point_from(p));
    if (doc.contains("regions")) {
        for (const auto& r : doc.at("regions")) {
            if (!r.contains("vertices"))
                throw Error(ErrorKind::InvalidInput, "region without vertices");
            int id = r.contains("id") ? r.at("id").get<int>()
                                      : static_cast<int>(inst.regions.size());
            Scalar w = r.contains("weight") ? scalar_from(r.at("weight")) : Scalar(1);
            Polygon poly;
            for (const auto& v : r.at("vertices")) poly.push_back(point_from(v));
            inst.regions.push_back(make_region(id, w, std::move(poly)));
        }
    }
    return inst;
}

std::string write_planar_instance(const PlanarInstance& inst) {
    json doc = json::object();
    json pts = json::array();
    for (const auto& p : inst.points)
        pts.push_back({format_scalar(p.x), format_scalar(p.y)});
    json regs = json::array();
    for (const auto& r : inst.regions) {
        json verts = json::array();
        for (const auto& p : r.boundary)
            verts.push_back({format_scalar(p.x), format_scalar(p.y)});
        regs.push_back({{"id", r.id}, {"weight", format_scalar(r.weight)},
                        {"vertices", verts}});
    }
    doc["points"] = pts;
    doc["regions"] = regs;
    return doc.dump(1) + "\n";
}

}  // namespace pdc
