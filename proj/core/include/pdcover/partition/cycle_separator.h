#pragma once

#include "pdcover/partition/subdivision.h"

#include <vector>

namespace pdc {

struct CycleSeparatorConfig {
    int roots = 4;                ///< BFS roots tried
    int candidates_per_tree = 6;  ///< fundamental cycles kept per tree
};

struct CycleSeparator {
    std::vector<int> vertices;    ///< simple cycle in order
    std::vector<int> half_edges;  ///< inside faces on the left
    std::vector<char> inside;     ///< per face
    Scalar inside_weight = 0;
    Scalar outside_weight = 0;
    Scalar total = 0;
    double c_sep = 0;             ///< |C| / sqrt(V)
    int candidates = 0;
    int repair_moves = 0;
};

/// Simple cycle with at most 2/3 of the face weight strictly on each side.
/// Candidates are fundamental cycles of BFS trees in a star-triangulated
/// copy (lifted back along face boundaries) and in the graph itself; each
/// is repaired by moving single faces across the cycle until balanced, and
/// the shortest balanced result is returned.
/// Throws Unbalanced when some face outweighs a third of the total.
CycleSeparator cycle_separator(const PlanarGraph& g, const std::vector<Scalar>& face_weights,
                               const CycleSeparatorConfig& cfg = {});

struct CycleCheck {
    bool simple = false;
    bool separates = false;  ///< the two sides are distinct face sets
    Scalar inside = 0;       ///< weight left of the half-edges
    Scalar outside = 0;
    bool balanced = false;
};

/// Independent check by flood fill over the faces.
CycleCheck check_cycle(const PlanarGraph& g, const std::vector<Scalar>& face_weights,
                       const std::vector<int>& half_edges);

}  // namespace pdc
