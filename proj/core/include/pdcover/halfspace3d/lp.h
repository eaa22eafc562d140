#pragma once

#include "pdcover/geom/scalar.h"

#include <optional>
#include <vector>

namespace pdc {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Scalar> x;
    Scalar value = 0;
};

/// Maximize c.x subject to A x <= b with x free. Exact two-phase simplex
/// with Bland's rule; meant for a few dozen constraints.
LpResult solve_lp(const std::vector<std::vector<Scalar>>& a, const std::vector<Scalar>& b,
                  const std::vector<Scalar>& c);

/// A point with a_i.x < b_i on strict rows and a_i.x <= b_i on the rest.
std::optional<std::vector<Scalar>> strictly_feasible(const std::vector<std::vector<Scalar>>& a,
                                                     const std::vector<Scalar>& b,
                                                     const std::vector<char>& strict, int dim);

}  // namespace pdc
