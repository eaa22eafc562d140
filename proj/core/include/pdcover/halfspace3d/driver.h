#pragma once

#include "pdcover/halfspace3d/polytope.h"
#include "pdcover/solvers/qptas.h"

namespace pdc {

bool is_halfspace_cover(const HalfspaceInstance& inst, const std::vector<int>& selected);
/// Throws TooLarge above `cap` halfspaces and Infeasible for an uncovered point.
Solution exact_halfspace_cover(const HalfspaceInstance& inst, int cap = 20);
Solution greedy_halfspace_cover(const HalfspaceInstance& inst);

/// net eps = a * delta^2 / ln(1 / delta^2), snapped to a 2^-30 grid.
Scalar net_eps(const Scalar& delta, double a);

struct HalfspaceSeparatorReport {
    Point3 apex;
    EpsilonNet net;                ///< members index into `q`
    std::vector<int> net_ids;      ///< the same as halfspace indices
    Polytope3 polytope;
    ConeCores cores;
    SkeletonSeparator separator;
    ConeSplit split;
    bool conserved = false;        ///< facet weights sum to w(q)
    std::vector<int> points_in, points_ext;
};

/// Polyhedral separator for the reference members `q` with apex o: net,
/// complement polytope with dummies, cone cores, skeleton cycle and the
/// cone over it. Points on the cone go to both sides.
HalfspaceSeparatorReport halfspace_separator(const HalfspaceInstance& inst, const std::vector<int>& q,
                                             const Point3& o, const Scalar& delta, const Scalar& eps,
                                             std::uint64_t seed, const NetConfig& net_cfg = {});

struct HalfspaceStats {
    Scalar delta = 0;
    Scalar eps_net = 0;
    int depth_cap = 0;
    int nodes = 0;
    int base_cases = 0;
    int separator_calls = 0;
    int separator_failures = 0;
    int apex_candidates = 0;
    bool helly_available = false;
    Scalar helly_weight = 0;
    int conservation_failures = 0;
    int unbalanced = 0;            ///< sides above (2/3 + delta) of the facet weight
    int net_core_violations = 0;
    int crossing_without_vertex = 0;
};

/// Recursive cover: the cheapest space-covering tuple competes with the
/// separator recursion. Oracle and heuristic modes take the apex from the
/// reference cover; enumerate mode tries one point per arrangement cell.
/// Zero-weight halfspaces are taken up front.
Solution qptas_halfspace_cover(const HalfspaceInstance& inst, const DriverConfig& cfg,
                               HalfspaceStats* stats = nullptr);

}  // namespace pdc
