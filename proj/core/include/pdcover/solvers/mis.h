#pragma once

#include "pdcover/solvers/qptas.h"

namespace pdc {

/// Interior intersection graph: adjacency[i] lists j with int(i) meeting int(j).
std::vector<std::vector<int>> intersection_graph(const std::vector<Region>& regions);

/// Pairwise disjoint interiors among the selected regions.
bool is_independent(const std::vector<Region>& regions, const std::vector<int>& selected);

/// Maximum-weight independent set by branch and bound on the intersection
/// graph. Throws TooLarge above `cap` regions.
Solution exact_mis(const std::vector<Region>& regions, int cap = 24);

/// Heaviest region first, skipping regions that meet a chosen one.
Solution greedy_mis(const std::vector<Region>& regions);

struct MisStats {
    Scalar delta = 0;
    int depth_cap = 0;
    int filtered = 0;     ///< regions below eps * M / n
    int nodes = 0;
    int separator_calls = 0;
    int separator_failures = 0;
    int base_cases = 0;
};

/// Separator recursion on region subsets. Light regions are dropped and the
/// rest rescaled; each node splits by a curve through the reference set,
/// keeping the regions in the closed interior on one side, those in the
/// closed exterior on the other and discarding the crossing ones. Only
/// oracle and heuristic modes are supported.
Solution qptas_independent_set(const std::vector<Region>& regions, const DriverConfig& cfg,
                               MisStats* stats = nullptr);

}  // namespace pdc
