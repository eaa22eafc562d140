#pragma once

#include "pdcover/geom/region.h"
#include "pdcover/separator/separator.h"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pdc {

struct SetCoverInstance {
    std::vector<Region> regions;
    std::vector<Point2> points;
};

struct Solution {
    std::vector<int> selected;  ///< region indices, sorted
    Scalar weight = 0;
    std::vector<std::string> provenance;
};

/// Region indices covering each point. Throws InvalidInput when a point is
/// on a region boundary and Infeasible when a point is uncovered.
std::vector<std::vector<int>> coverage(const SetCoverInstance& inst);

/// Move boundary points off every boundary by a small exact offset.
SetCoverInstance perturb_points(const SetCoverInstance& inst);

/// Independent re-check: each point located inside a selected region.
bool is_cover(const SetCoverInstance& inst, const std::vector<int>& selected);

Scalar weight_of(const std::vector<Region>& regions, const std::vector<int>& ids);

/// Set cover over abstract sets: by_point[p] lists the sets containing
/// point p. Branch and bound on the uncovered point with fewest candidates.
/// Throws TooLarge above `cap` sets and Infeasible for an uncovered point.
Solution exact_cover_sets(const std::vector<Scalar>& weights,
                          const std::vector<std::vector<int>>& by_point, int cap = 20);
Solution greedy_cover_sets(const std::vector<Scalar>& weights,
                           const std::vector<std::vector<int>>& by_point);

/// Branch and bound on the uncovered point with fewest candidates.
/// Throws TooLarge above `cap` regions, Infeasible when no cover exists.
Solution exact_set_cover(const SetCoverInstance& inst, int cap = 20);

/// Repeatedly takes the region with least weight per newly covered point.
Solution greedy_set_cover(const SetCoverInstance& inst);

/// One (max-weight guess, total-weight guess) split. Regions of weight at
/// least eps * w_aprx / n are kept and rescaled by n / (eps * w_aprx); the
/// rest are always taken and their points removed.
struct NormalizedGuess {
    Scalar w_max = 0;
    Scalar w_aprx = 0;
    Scalar scale = 0;
    SetCoverInstance reduced;     ///< kept regions (rescaled), uncovered points
    std::vector<int> kept;        ///< reduced index -> original index
    std::vector<int> light;       ///< original indices always taken
    bool feasible = true;         ///< kept regions cover the remaining points
};

std::vector<NormalizedGuess> normalize_instance(const SetCoverInstance& inst, const Scalar& eps);

/// Map a solution of guess.reduced back to the original instance.
Solution complete_solution(const SetCoverInstance& inst, const NormalizedGuess& guess,
                           const Solution& reduced);

struct SetCoverSeparatorConfig {
    double c_tau = 4.0;   ///< tau = c_tau / delta * log2 w(Q)
    std::uint64_t seed = 1;
    SeparatorConfig separator;
    bool evaluate_bounds = false;  ///< run the exact oracle on both sides
    int exact_cap = 20;
};

struct SetCoverSeparatorReport {
    SeparatorReport separator;
    std::vector<int> cover;         ///< reference cover after pruning
    Scalar cover_weight = 0;
    double tau = 0;
    std::vector<int> vertex_counts;  ///< |v| per cover member
    std::vector<int> low_complexity; ///< cover members whose cores were used
    std::vector<Region> core_pieces; ///< separator input
    Scalar core_inside = 0, core_outside = 0, core_crossing = 0;
    std::vector<int> points_in, points_ext;
    /// Filled when evaluate_bounds is set.
    std::optional<Scalar> opt, opt_in, opt_ext;
    bool inside_bound = false;   ///< opt_in <= (2/3 + 3 delta) opt
    bool outside_bound = false;  ///< opt_ext <= (2/3 + 3 delta) opt
    bool sum_bound = false;      ///< opt_in + opt_ext <= (1 + 2 delta) opt
};

/// Curve splitting the points so that both halves have covers not much
/// heavier than 2/3 of the reference cover Q. Q is first pruned to be
/// cover-free; cores of its low-complexity members feed the weighted
/// region separator. Throws HeavyMember when a member of Q outweighs
/// w(Q)/3 and InvalidInput when Q does not cover the points.
SetCoverSeparatorReport setcover_separator(const SetCoverInstance& inst,
                                           const std::vector<int>& cover, const Scalar& delta,
                                           const SetCoverSeparatorConfig& cfg = {});

/// Drop members contained in the union of the others while the rest
/// still covers the points.
std::vector<int> prune_cover(const SetCoverInstance& inst, std::vector<int> cover);

}  // namespace pdc
