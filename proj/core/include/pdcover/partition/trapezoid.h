#pragma once

#include "pdcover/geom/region.h"

#include <cstdint>
#include <optional>
#include <vector>

namespace pdc {

/// Weighted x-monotone curves grouped by owner. `curves[k].region_id` is the
/// group index; a group is sampled or inserted as a whole.
struct CurveSet {
    std::vector<PolyCurve> curves;
    std::vector<Scalar> weights;   ///< per group
    /// Per group; a non-empty polygon marks a solid whose interior receives
    /// no walls once the group is part of the decomposition.
    std::vector<Polygon> solids;

    int groups() const { return static_cast<int>(weights.size()); }
    Scalar total_weight() const;
};

/// Monotone pieces of the regions, group = position in `regions`.
CurveSet curves_of_regions(const std::vector<Region>& regions, bool protect);

/// Vertical wall shot from an anchor (curve endpoint or contact point).
struct Wall {
    Point2 anchor;
    Point2 end;
    std::vector<int> curves;  ///< curves through the anchor
    bool up = true;
};

struct Trapezoid {
    Polygon boundary;  ///< ccw
    /// Per boundary edge (k -> k+1): curve index, wall tag, or -1 for the frame.
    std::vector<int> edge_tags;
    int top = -1;      ///< curve index or -1
    int bottom = -1;
    std::vector<int> determining;  ///< sorted curve indices
    std::vector<int> conflicts;    ///< groups meeting the open interior
    Scalar conflict_weight = 0;
    int level = 0;                 ///< 0 = first level, k = k-th refinement
};

struct Partition {
    BBox bbox;
    int curve_count = 0;
    std::vector<int> sample;       ///< first-level groups
    std::vector<Wall> walls;       ///< wall tag = curve_count + index
    std::vector<Trapezoid> cells;
    Scalar total_weight = 0;
    Scalar budget = 0;             ///< per-cell conflict weight limit
    int first_level_cells = 0;
    int insertions = 0;            ///< refinement insertions
    int retries = 0;

    bool is_wall_tag(int tag) const { return tag >= curve_count; }
    const Wall& wall_of(int tag) const { return walls[tag - curve_count]; }
};

/// Frame strictly containing every curve (and solid).
BBox frame_of(const CurveSet& set);

/// Decomposition induced by the given groups: walls from every endpoint and
/// contact, up and down to the nearest selected curve or the frame, except
/// into selected solids. Conflicts are filled against all groups.
Partition decompose(const CurveSet& set, const std::vector<int>& groups, const BBox& bbox);

/// All curves, unit weights, no solids.
Partition trapezoidal_decomposition(const std::vector<PolyCurve>& curves, const BBox& bbox);

struct SampleConfig {
    Scalar c = Scalar(1, 2);  ///< first-level rate c * r * w / W
    int max_retries = 32;
};

/// Two-level sampled partition: a weighted first-level sample, then local
/// refinement of every cell whose conflict weight exceeds W / r. The bound
/// is re-verified independently; a failing draw is retried.
/// Throws SamplingFailed after max_retries.
Partition sample_partition(const CurveSet& set, long r, std::uint64_t seed,
                           const SampleConfig& cfg = {},
                           std::optional<BBox> bbox = std::nullopt);

/// Groups among `candidates` whose curves meet the open interior of `cell`.
std::vector<int> cell_conflicts(const CurveSet& set, const Polygon& cell,
                                const std::vector<int>& candidates);

struct PartitionCheck {
    bool tiles = false;          ///< cell areas sum to the frame area
    bool within_budget = false;  ///< every cell, recomputed from scratch
    Scalar area_sum = 0;
    Scalar max_conflict_weight = 0;
    bool ok() const { return tiles && within_budget; }
};

PartitionCheck verify_partition(const CurveSet& set, const Partition& part);

}  // namespace pdc
