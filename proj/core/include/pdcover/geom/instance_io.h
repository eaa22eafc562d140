#pragma once

#include "pdcover/geom/region.h"

#include <string>
#include <vector>

namespace pdc {

/// Regions plus points; the shared text format for planar inputs.
struct PlanarInstance {
    std::vector<Point2> points;
    std::vector<Region> regions;
};

/// Parse `{"points": [[x,y],...], "regions": [{"id", "weight", "vertices"}]}`.
/// Numbers may be JSON integers, decimal strings or "p/q" strings.
/// Throws Error(InvalidInput) on schema problems.
PlanarInstance parse_planar_instance(const std::string& text);

/// Canonical serialization (numbers as strings, stable key order).
std::string write_planar_instance(const PlanarInstance& inst);

}  // namespace pdc
