#pragma once

#include "pdcover/geom/overlay.h"
#include "pdcover/geom/region.h"

#include <map>
#include <optional>
#include <vector>

namespace pdc {

struct ArrangementVertex {
    Point2 location;
    int i = -1;  ///< defining region ids, i < j
    int j = -1;
    Scalar depth = 0;      ///< weight of regions strictly containing it, minus i, j
    int depth_count = 0;   ///< number of such regions
};

struct Arrangement {
    std::vector<Region> regions;
    std::vector<ArrangementVertex> vertices;
    int m = 0;
};

/// Transversal crossings of the two boundaries; depth left at zero.
/// Throws Degenerate on touching or overlapping edges.
std::vector<ArrangementVertex> boundary_intersections(const Region& a,
                                                      const Region& b);

struct FamilyCheck {
    bool ok = true;
    int first = -1;   ///< witness region id(s) on failure
    int second = -1;
    int max_crossings = 0;  ///< observed maximum over pairs
};

FamilyCheck is_pseudodisk_family(const std::vector<Region>& regions);
FamilyCheck is_cover_free(const std::vector<Region>& regions);

Arrangement build_arrangement(const std::vector<Region>& regions);

struct UnionStats {
    int union_vertices = 0;
    int m = 0;
    std::map<int, int> depth_histogram;  ///< containing-region count -> vertices
};

UnionStats union_stats(const std::vector<Region>& regions);

/// closure(A \ X) with the carved arc tagged by X.
struct DifferenceResult {
    Region region;
    /// Source region id per boundary edge of region.boundary (edge k joins
    /// vertex k and k+1).
    std::vector<int> edge_source;
    int new_vertices = 0;
};

/// Throws Swallowed (A inside X) or Disconnected.
DifferenceResult region_difference(const Region& a, const Region& x);

/// Deterministic y-shift of region k by k*h, with h a rational below the
/// smallest vertical feature gap. Breaks coincidences in most inputs.
std::vector<Region> perturb_regions(const std::vector<Region>& regions);

}  // namespace pdc
