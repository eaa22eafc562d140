#pragma once

#include "pdcover/geom/scalar.h"

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

namespace pdc {

struct Point2 {
    Scalar x;
    Scalar y;

    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point2& o) const { return !(*this == o); }
    /// Lexicographic (x, y); the tie-break used everywhere for equal x.
    bool operator<(const Point2& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

/// Closed polygon as a cyclic vertex sequence (last vertex joins the first).
using Polygon = std::vector<Point2>;

struct BBox {
    Scalar xmin, ymin, xmax, ymax;
};

/// Sign of the cross product (b - a) x (c - a): +1 left turn, -1 right, 0 collinear.
int orient(const Point2& a, const Point2& b, const Point2& c);

/// True when p lies on the closed segment [a, b].
bool on_segment(const Point2& p, const Point2& a, const Point2& b);

enum class SegmentRelation { Disjoint, Cross, Touch, Overlap };

struct SegmentHit {
    SegmentRelation kind = SegmentRelation::Disjoint;
    /// Cross/Touch: the shared point. Overlap: the two ends of the shared piece.
    Point2 p;
    Point2 q;
};

/// Exact intersection of closed segments [a, b] and [c, d].
/// Cross means a single point interior to both segments.
SegmentHit intersect_segments(const Point2& a, const Point2& b,
                              const Point2& c, const Point2& d);

/// Twice the signed area (positive for counter-clockwise).
Scalar signed_area2(const Polygon& poly);
Scalar area(const Polygon& poly);

BBox bbox_of(const Polygon& poly);
bool bbox_overlap(const BBox& a, const BBox& b);

/// Reverse the polygon in place when it is clockwise.
void make_ccw(Polygon& poly);

/// Drop repeated and collinear-middle vertices.
Polygon simplify(const Polygon& poly);

/// O(n^2) exact simplicity check; returns the first offending edge pair.
std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(
    const Polygon& poly);

enum class Location { Inside, OnBoundary, Outside };

/// Exact crossing-number classification.
Location locate(const Point2& p, const Polygon& poly);

/// Y-coordinate of the segment [a, b] at abscissa x (a.x != b.x).
Scalar y_at(const Point2& a, const Point2& b, const Scalar& x);

/// Interior/exterior overlap pattern of two simple polygons.
/// Interiors are open sets; boundaries are resolved by which side of a
/// shared edge each interior lies on.
struct PolyRelation {
    bool int_int = false;   ///< interiors meet
    bool a_in_b_ext = false;  ///< interior of a meets open exterior of b
    bool b_in_a_ext = false;  ///< interior of b meets open exterior of a
    bool boundaries_meet = false;
};

PolyRelation relate(const Polygon& a, const Polygon& b);

/// True when the closed segment meets the open interior of the polygon.
bool segment_meets_interior(const Point2& a, const Point2& b,
                            const Polygon& poly);

/// True when the open direction d (d != 0) at point p enters the open
/// interior of the polygon arbitrarily close to p.
bool direction_enters(const Point2& p, const Point2& d, const Polygon& poly);

}  // namespace pdc
