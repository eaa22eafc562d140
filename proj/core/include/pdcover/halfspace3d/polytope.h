#pragma once

#include "pdcover/halfspace3d/halfspace.h"
#include "pdcover/partition/cycle_separator.h"

#include <map>
#include <vector>

namespace pdc {

struct Facet {
    int source = -1;            ///< Halfspace3::id of the supporting plane
    Halfspace3 plane;
    std::vector<int> vertices;  ///< ccw seen from outside
};

/// Intersection of the closed complements {<n, x> <= c}.
struct Polytope3 {
    std::vector<Halfspace3> planes;
    std::vector<Point3> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<Facet> facets;
    std::map<int, int> facet_of;  ///< halfspace id -> facet; redundant ids absent
    PlanarGraph skeleton;         ///< graph face i is facet i
    Point3 interior;              ///< vertex centroid

    int euler_characteristic() const {
        return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) +
               static_cast<int>(facets.size());
    }
};

/// Exact construction from plane triples. Non-simple vertices are merged;
/// coincident planes keep the first id. Throws Degenerate when the result
/// is not a bounded full-dimensional polytope.
Polytope3 complement_polytope(const std::vector<Halfspace3>& planes);

struct ConeCore3 {
    enum class Kind { FacetCone, Clipped };
    int source = -1;           ///< index into the halfspace list
    Kind kind = Kind::Clipped;
    int facet = -1;            ///< FacetCone: cone(facet) within the halfspace
    std::vector<int> facets;   ///< facets whose cone meets the core
    bool empty = false;        ///< Clipped core missing the polytope
};

struct ConeCores {
    std::vector<ConeCore3> cores;
    std::vector<Scalar> facet_weights;
    Scalar total = 0;
};

/// Cores of the reference members `q` (indices into hs). Net members with
/// a facet keep cone(facet) and give it their weight; every other member
/// is clipped to the polytope and splits its weight evenly over the facets
/// whose cones meet the clipped core. A member missing the polytope spreads
/// over the facets whose cones meet the member itself. Throws ApexInside
/// unless o is strictly outside every member of q.
ConeCores cone_cores_and_weights(const std::vector<Halfspace3>& hs, const std::vector<int>& q,
                                 const std::vector<int>& net, const Polytope3& poly,
                                 const Point3& o);

struct SkeletonSeparator {
    std::vector<int> cycle;          ///< polytope vertices in order
    std::vector<char> facet_inside;  ///< per facet
    Scalar inside_weight = 0, outside_weight = 0, total = 0;
    bool balanced = false;           ///< both sides <= (2/3 + delta) total
    double c_sep = 0;
};

/// Cycle separator of the skeleton with facet weights; the separating
/// surface is the cone over the cycle from the apex. Throws Unbalanced
/// when a facet outweighs a third of the total.
SkeletonSeparator skeleton_separator(const Polytope3& poly, const std::vector<Scalar>& facet_weights,
                                     const Scalar& delta, const CycleSeparatorConfig& cfg = {});

/// +1 inside the cone over the cycle, -1 outside, 0 on it (the apex too).
int cone_side(const Polytope3& poly, const SkeletonSeparator& sep, const Point3& o, const Point3& x);

struct ConeSplit {
    Scalar core_inside = 0, core_outside = 0, core_crossing = 0;
    std::vector<int> crossing;     ///< halfspace indices
    int net_core_violations = 0;   ///< net cores cut by the cone
    int crossing_without_vertex = 0;  ///< crossing cores holding no cycle vertex
    Scalar stab_budget = 0;        ///< sum over cycle vertices of stab weight of [o, v]
    Scalar max_vertex_stab = 0;    ///< heaviest open stab range just short of a cycle vertex
};

/// Side of every core relative to the cone over the cycle, with the
/// checks of the crossing bound.
ConeSplit evaluate_cone_split(const std::vector<Halfspace3>& hs, const ConeCores& cores,
                              const Polytope3& poly, const SkeletonSeparator& sep, const Point3& o);

}  // namespace pdc
