#pragma once

#include "pdcover/geom/region.h"
#include "pdcover/halfspace3d/halfspace.h"

#include <cstdint>
#include <string>
#include <vector>

namespace pdc::tools {

/// Weight law for generated regions.
enum class WeightLaw { Unit, Uniform10 };

WeightLaw parse_weight_law(const std::string& name);

/// Regular k-gons under random similarity transforms, rejection-sampled so
/// that the family is a cover-free pseudodisk family in general position.
std::vector<Region> disk_polygons(int n, int k, WeightLaw law, std::uint64_t seed);

/// Pairwise disjoint convex k-gons placed in jittered grid cells.
std::vector<Region> disjoint_polygons(int n, int k, WeightLaw law, std::uint64_t seed);

struct Segment {
    Point2 a, b;  ///< a.x < b.x
};

/// Random non-vertical segments in [0, 100]^2 with lengths in [lmin, lmax];
/// endpoints and crossings are in general position. Disjoint when requested.
std::vector<Segment> random_segments(int n, double lmin, double lmax, bool disjoint,
                                     std::uint64_t seed);

/// Segments as thin quadrilateral regions (alpha = 2).
std::vector<Region> segment_regions(const std::vector<Segment>& segs, WeightLaw law,
                                    std::uint64_t seed);

/// Segments as single-piece monotone curves with region ids 0..n-1.
std::vector<PolyCurve> segment_curves(const std::vector<Segment>& segs);

/// Concentric copies of a regular (c/delta)-gon, each side a separate
/// shortened segment region. Throws SpecInvalid unless c/delta is an
/// integer >= 3.
std::vector<Region> lowerbound_rings(const Scalar& delta, int c, int copies);

/// Grid points strictly inside the union and off every boundary.
std::vector<Point2> grid_points(const std::vector<Region>& regions, int per_side);

/// Random points strictly inside the union and off every boundary,
/// clustered around region centroids.
std::vector<Point2> clustered_points(const std::vector<Region>& regions, int count,
                                     std::uint64_t seed);

/// Halfspaces {<n, x> >= d} with small integer normals, mostly facing away
/// from the origin (d > 0), plus a fraction `opposing` containing it.
/// Points are drawn in [-10, 10]^3, off every boundary plane, and kept only
/// when covered.
HalfspaceInstance random_halfspaces(int n, int points, double opposing, WeightLaw law,
                                    std::uint64_t seed);

}  // namespace pdc::tools
