#pragma once

#include "pdcover/geom/region.h"
#include "pdcover/partition/trapezoid.h"

#include <vector>

namespace pdc {

/// Combinatorial plane graph in half-edge form: half-edges 2e and 2e+1 are
/// twins, next(h) continues the face on the left of h.
struct PlanarGraph {
    int vertex_count = 0;
    std::vector<Point2> points;  ///< coordinates when embedded in the plane
    std::vector<int> origin;
    std::vector<int> next;
    std::vector<int> face;
    std::vector<int> edge_tag;   ///< per undirected edge, -1 when untagged
    int face_count = 0;
    int outer_face = -1;         ///< unbounded face, -1 for abstract graphs

    int edge_count() const { return static_cast<int>(origin.size() / 2); }
    int twin(int h) const { return h ^ 1; }
    int dest(int h) const { return origin[h ^ 1]; }
    /// Half-edges around the face of h, starting at h.
    std::vector<int> face_walk(int h) const;
    /// One half-edge per face.
    std::vector<int> face_starts() const;
    /// V - E + F for a connected graph equals 2.
    int euler_characteristic() const { return vertex_count - edge_count() + face_count; }
};

/// Build from a rotation system: rotation[v] lists neighbours in ccw order.
PlanarGraph planar_graph_from_rotation(const std::vector<std::vector<int>>& rotation);

struct SubdivisionGraph {
    PlanarGraph graph;
    std::vector<Scalar> face_weights;        ///< per graph face
    std::vector<int> face_cell;              ///< graph face -> cell index, -1 outside
    std::vector<std::vector<int>> region_faces;  ///< faces each region meets
};

/// Plane graph of the cell boundaries. Each region spreads its weight
/// (or 1 when unweighted) evenly over the faces whose interiors it meets.
/// `regions` must be the ones whose curves (group = index) built `part`.
SubdivisionGraph subdivision_graph(const Partition& part, const std::vector<Region>& regions,
                                   bool weighted = true);

}  // namespace pdc
