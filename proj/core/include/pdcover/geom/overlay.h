#pragma once

#include "pdcover/geom/polygon.h"

#include <vector>

namespace pdc {

/// Input segment for the overlay. `owner` >= 0 marks a boundary edge of
/// polygon `owner` whose interior lies to the left of a -> b; walls and
/// frames use owner = -1.
struct OverlaySegment {
    Point2 a;
    Point2 b;
    int owner = -1;
    int tag = -1;  ///< caller payload copied to the edges it covers (-1 = none)
};

/// Exact planar subdivision (half-edge form) induced by a set of segments.
/// Overlapping collinear pieces are merged into one edge that lists every
/// owner. Face labels record which owner polygons contain the face.
class Overlay {
public:
    struct Vertex {
        Point2 p;
        std::vector<int> out;  ///< outgoing half-edges in ccw angular order
    };

    struct HalfEdge {
        int origin = -1;
        int twin = -1;
        int next = -1;
        int face = -1;
        int edge = -1;  ///< undirected edge index
        /// Owners whose interior lies to the left of this half-edge.
        std::vector<int> owners_left;
        /// Owners whose interior lies to the right.
        std::vector<int> owners_right;
        bool has_wall = false;  ///< some input segment here had owner -1
        std::vector<int> tags;  ///< sorted tags of the input segments here
    };

    struct Face {
        bool unbounded = false;
        int outer = -1;               ///< one half-edge of the outer cycle
        std::vector<int> holes;       ///< one half-edge per hole cycle
        std::vector<int> label;       ///< sorted owners containing the face
        Scalar area = 0;
    };

    Overlay() = default;
    explicit Overlay(const std::vector<OverlaySegment>& segments);

    /// Overlay of closed polygons, owner = index in `polys`.
    static Overlay from_polygons(const std::vector<Polygon>& polys);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
    const std::vector<Face>& faces() const { return faces_; }
    int unbounded_face() const { return unbounded_; }
    int num_edges() const { return static_cast<int>(half_edges_.size() / 2); }

    int dest(int h) const { return half_edges_[half_edges_[h].twin].origin; }

    /// Vertex cycle of the face boundary starting at half-edge h.
    std::vector<int> cycle(int h) const;
    /// Half-edge cycle starting at h.
    std::vector<int> edge_cycle(int h) const;
    Polygon cycle_polygon(int h) const;

    /// Vertex id at point p, or -1.
    int find_vertex(const Point2& p) const;

    bool face_has(int f, int owner) const;

private:
    void build(const std::vector<OverlaySegment>& segments);

    std::vector<Vertex> vertices_;
    std::vector<HalfEdge> half_edges_;
    std::vector<Face> faces_;
    int unbounded_ = -1;
};

}  // namespace pdc

namespace pdc {

/// Boundary cycles (as half-edge sequences, set on the left) of a face set.
std::vector<std::vector<int>> face_set_boundary(const Overlay& ov,
                                                const std::vector<bool>& in_set);

/// A point strictly inside the given bounded face.
Point2 face_interior_point(const Overlay& ov, int face);

/// Even-odd location of p against a family of boundary cycles.
Location locate_in_cycles(const Point2& p, const std::vector<Polygon>& cycles);

}  // namespace pdc
