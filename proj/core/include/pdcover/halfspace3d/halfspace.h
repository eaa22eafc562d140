#pragma once

#include "pdcover/geom/scalar.h"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pdc {

struct Point3 {
    Scalar x, y, z;
    friend bool operator==(const Point3&, const Point3&) = default;
    friend bool operator<(const Point3& a, const Point3& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }
};

Point3 operator+(const Point3& a, const Point3& b);
Point3 operator-(const Point3& a, const Point3& b);
Point3 operator*(const Scalar& s, const Point3& a);
Scalar dot(const Point3& a, const Point3& b);
Point3 cross(const Point3& a, const Point3& b);

/// {x : <normal, x> >= offset}.
struct Halfspace3 {
    Point3 normal;
    Scalar offset = 0;
    Scalar weight = 1;
    int id = -1;
    bool dummy = false;

    /// <normal, p> - offset: positive inside, zero on the plane.
    Scalar side(const Point3& p) const { return dot(normal, p) - offset; }
    bool contains(const Point3& p) const { return side(p) >= 0; }
};

/// Throws InvalidInput on a zero normal or a negative weight.
Halfspace3 make_halfspace(int id, const Point3& normal, const Scalar& offset, const Scalar& weight);

struct HalfspaceInstance {
    std::vector<Halfspace3> halfspaces;
    std::vector<Point3> points;
};

/// `{"halfspaces": [{"normal": [a,b,c], "offset": d, "weight": w}], "points": [[x,y,z]]}`.
HalfspaceInstance parse_halfspace_instance(const std::string& text);
std::string write_halfspace_instance(const HalfspaceInstance& inst);

/// Halfspaces containing each point (closed). Throws Infeasible when a
/// point is uncovered.
std::vector<std::vector<int>> halfspace_coverage(const HalfspaceInstance& inst);

/// Indices whose boundary plane meets the segment [o, x].
std::vector<int> stab_set(const std::vector<Halfspace3>& hs, const Point3& o, const Point3& x);

/// True when the union of the selected halfspaces is all of space, i.e.
/// their open complements have no common point.
bool covers_space(const std::vector<Halfspace3>& hs, const std::vector<int>& selected);

/// Cheapest tuple of at most four halfspaces covering space, with weight;
/// nullopt when no tuple does. Such a tuple covers every point.
struct HellyCover {
    std::vector<int> selected;
    Scalar weight = 0;
    int tuples_checked = 0;
};
std::optional<HellyCover> helly_small_cover(const std::vector<Halfspace3>& hs);

/// Point strictly outside every selected halfspace, or nullopt.
std::optional<Point3> point_outside(const std::vector<Halfspace3>& hs, const std::vector<int>& selected);

/// Containment sets {i in subset : x in H_i} realized by some point x.
/// Decided per candidate set by exact strict feasibility.
std::vector<std::vector<int>> realized_sets(const std::vector<Halfspace3>& hs,
                                            const std::vector<int>& subset);

struct VcReport {
    int max_shattered = 0;
    int max_realized_k4 = 0;  ///< most sets realized by a 4-subset
    int subsets_checked = 0;
};

/// Largest subset (size <= 4) on which the stabbing ranges realize every
/// subset. With the apex outside every halfspace, the range of x is the set
/// of halfspaces containing x. Throws TooLarge above `cap` halfspaces.
VcReport vc_shatter_check(const std::vector<Halfspace3>& hs, int cap = 12);

/// One point in each cell around every vertex of the plane arrangement:
/// the vertex moved off its planes along each sign pattern, by a step
/// small enough to cross no other plane. Cells are deduplicated by their
/// containment sets. Without three independent normals a fallback grid of
/// sign patterns is solved by LP.
std::vector<Point3> cell_representatives(const std::vector<Halfspace3>& hs);

/// Containment sets of every cell of the arrangement, with the sets of
/// the vertices themselves (closed semantics).
std::vector<std::vector<int>> canonical_ranges(const std::vector<Halfspace3>& hs);

/// Four weight-zero halfspaces whose complements bound a simplex that
/// contains the cube [-bound, bound]^3 in its interior. They contain no
/// point of that cube.
std::vector<Halfspace3> dummy_halfspaces(const Scalar& bound, int first_id);

/// Largest absolute coordinate over the points and the arrangement vertices.
Scalar geometry_bound(const std::vector<Halfspace3>& hs, const std::vector<Point3>& points);

struct NetConfig {
    double c_net = 4.0;
    int max_attempts = 32;
};

struct EpsilonNet {
    std::vector<int> members;        ///< indices into the input, sorted
    std::vector<Halfspace3> dummies; ///< appended, ids after the input
    int attempts = 0;
    int sample_size = 0;
    int ranges_checked = 0;
    int heavy_ranges = 0;
};

/// Weighted sample of ceil((c_net / eps) log(1 / eps)) draws, validated
/// against every canonical range of weight at least eps W. Throws
/// ApexInside when o lies in a halfspace and NetValidationFailed when no
/// sample passes within max_attempts.
EpsilonNet epsilon_net_stab(const std::vector<Halfspace3>& hs, const Point3& o,
                            const Scalar& eps, std::uint64_t seed, const NetConfig& cfg = {},
                            const std::vector<Point3>& extra_points = {});

}  // namespace pdc
