#pragma once

#include "pdcover/geom/arrangement.h"
#include "pdcover/geom/overlay.h"
#include "pdcover/geom/region.h"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace pdc {

/// Shared substrate of every decomposition: the overlay of the original
/// boundaries (owner = region index) and the arrangement with depths.
/// A core is a set of overlay faces; pushing removes faces. This is the
/// limit of the gap construction as the gaps shrink to zero.
struct CoreContext {
    std::vector<Region> regions;
    Overlay overlay;
    Arrangement arrangement;
    std::map<Point2, int> vertex_index;  ///< overlay point -> arrangement vertex
    std::vector<int> edge_owner;         ///< undirected overlay edge -> region index
};

std::shared_ptr<const CoreContext> make_core_context(const std::vector<Region>& regions);

/// Symbolic offset of a boundary edge: (push step, rank) pairs sorted by
/// step. Earlier steps dominate; a larger rank means pushed further in.
using GapTag = std::vector<std::pair<int, int>>;

/// Compare offsets: negative, zero or positive.
int compare_gaps(const GapTag& a, const GapTag& b);

enum class CoreMode { Pusher, Disjoint, Uniform };

const char* core_mode_name(CoreMode mode);

struct CoreVertex {
    Point2 location;
    int i = -1;  ///< defining region indices (i < j)
    int j = -1;
    int arrangement_index = -1;
};

struct CoreRegion {
    int source = -1;                   ///< region index
    std::vector<char> faces;           ///< membership per overlay face
    std::map<int, GapTag> gaps;        ///< pushed boundary edges
    /// Derived by refresh_core():
    int boundary_cycles = 0;
    bool pinched = false;              ///< a boundary vertex repeats
    Polygon boundary;                  ///< first boundary cycle
    std::vector<int> edge_source;      ///< region index per boundary edge
    std::vector<GapTag> edge_gap;
    std::vector<std::vector<int>> cycles;   ///< boundary half-edges per cycle
    std::vector<Polygon> cycle_polygons;
    std::vector<CoreVertex> vertex_list;  ///< v(R~): source switches
    bool empty() const;
};

/// Recompute boundary cycle, edge tags and the vertex list from `faces`.
void refresh_core(const CoreContext& ctx, CoreRegion& core);

struct CoreDecomposition {
    CoreMode mode = CoreMode::Disjoint;
    std::shared_ptr<const CoreContext> context;
    std::vector<CoreRegion> cores;     ///< aligned with context->regions
    std::vector<int> order;            ///< pusher region indices in push order
    std::vector<int> position;         ///< pi: region index -> position (disjoint)
    std::vector<std::vector<int>> ranks;  ///< per push step, rank per region (0 = none)
    std::vector<int> net;              ///< uniform mode: members of Q
    int net_attempts = 0;
    bool cover_free_between_pushes = true;
};

/// Ranks for one push: regions whose interval along the pusher boundary is
/// strictly nested inside another's get a higher rank. Regions that do not
/// meet the pusher boundary get trailing ranks by index. Pusher gets 0.
/// Throws IntervalUndefined if a core would vanish inside the pusher.
std::vector<int> interval_ranks(const CoreContext& ctx,
                                const std::vector<CoreRegion>& cores, int pusher);

/// Single push of the original family by region index `pusher`.
/// Throws NotCoverFree / NotPseudodisks on invalid input families.
CoreDecomposition push(const std::vector<Region>& regions, int pusher);
CoreDecomposition push(std::shared_ptr<const CoreContext> ctx, int pusher);

/// Sequential weighted sampling without replacement (exact law of the
/// first draw: w_i / W). Zero weights are drawn last, uniformly.
std::vector<int> weighted_permutation(const std::vector<Scalar>& weights,
                                      std::uint64_t seed);

CoreDecomposition disjoint_core_decomposition(const std::vector<Region>& regions,
                                              std::uint64_t seed);
/// Same with an explicit push order (region indices).
CoreDecomposition disjoint_core_decomposition(std::shared_ptr<const CoreContext> ctx,
                                              const std::vector<int>& order);

struct UniformConfig {
    Scalar eta = Scalar(1, 4);
    double c_net = 4.0;
    int max_attempts = 32;
};

CoreDecomposition uniform_core_decomposition(const std::vector<Region>& regions,
                                             const UniformConfig& cfg,
                                             std::uint64_t seed);

struct CoreCost {
    Scalar cost = 0;          ///< sum |v(R~_i)| * w_i
    Scalar closed_form = 0;   ///< 2 sum w_i w_j / (w_i + w_j + d_v)
    /// Exact expectation under the pushing process when a vertex keeps only
    /// the first container pushed after i and j (equals closed_form when no
    /// vertex has two or more positive-weight containers).
    Scalar refined_expectation = 0;
};

CoreCost core_vertex_cost(const CoreDecomposition& dec);

/// Sum over vertices with k <= d_v < 2k of w_i w_j / (w_i + w_j + k).
Scalar cs_sum(const Arrangement& arr, const Scalar& k);
Scalar cs_sum(const std::vector<Region>& regions, const Scalar& k);

/// Number of proper crossings of the two core boundaries, with coincident
/// arcs resolved by gap tags.
int core_crossings(const CoreContext& ctx, const CoreRegion& a, const CoreRegion& b);

struct CoreReport {
    int violations = 0;
    std::vector<std::string> messages;
    int probes = 0;
    int vertices_checked = 0;
    int total_intersections = 0;     ///< pairwise crossings of the cores
    std::vector<int> vertex_counts;  ///< |v(R~_i)|
    bool ok() const { return violations == 0; }
};

/// Checks containment, coverage, simple connectivity and the mode-specific
/// structure. `points` are extra probes; interior points of every overlay
/// face are always probed.
CoreReport verify_core_decomposition(const std::vector<Region>& original,
                                     const CoreDecomposition& dec,
                                     const std::vector<Point2>& points = {});

}  // namespace pdc
