#pragma once

#include "pdcover/geom/polygon.h"
#include "pdcover/geom/scalar.h"

#include <vector>

namespace pdc {

/// An x-monotone polyline carved out of a region boundary.
struct PolyCurve {
    std::vector<Point2> vertices;  ///< strictly increasing x
    int region_id = -1;
    int piece = -1;
    /// True when the boundary cycle traverses this piece left to right.
    bool forward = true;
};

/// Weighted alpha-simple region with a polygonal boundary.
struct Region {
    int id = 0;
    Scalar weight = 1;
    Polygon boundary;  ///< ccw, starting at the lexicographically smallest vertex
    std::vector<PolyCurve> monotone_pieces;
    int alpha = 0;
};

/// Split a closed polygon into maximal x-monotone pieces.
/// Pieces follow the cycle order of `boundary`, starting at boundary[0],
/// which must be an x-extreme vertex (make_region guarantees this).
std::vector<PolyCurve> monotone_decompose(const Polygon& boundary,
                                          int region_id = -1);

/// Validate, normalize (ccw, rotated to the lexicographic minimum) and
/// decompose. Throws VerticalEdge or SelfIntersecting.
Region make_region(int id, const Scalar& weight, Polygon boundary);

/// Rebuild the boundary cycle by concatenating the pieces.
Polygon concatenate_pieces(const std::vector<PolyCurve>& pieces);

Location locate(const Point2& p, const Region& r);

/// Centroid of the vertex set (inside for convex regions).
Point2 vertex_centroid(const Region& r);

Scalar total_weight(const std::vector<Region>& regions);

/// Thin convex quadrilateral standing in for the segment [a, b]
/// (a.x != b.x); `half_width` is the offset of the two side vertices.
Polygon thin_segment_polygon(const Point2& a, const Point2& b,
                             const Scalar& half_width);

}  // namespace pdc
