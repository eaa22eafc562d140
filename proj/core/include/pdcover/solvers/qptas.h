#pragma once

#include "pdcover/solvers/setcover.h"

#include <cstdint>
#include <string>

namespace pdc {

enum class DriverMode { Oracle, Heuristic, Enumerate };

const char* driver_mode_name(DriverMode mode);
/// Throws InvalidInput on unknown names.
DriverMode parse_driver_mode(const std::string& name);

struct DriverConfig {
    Scalar eps = Scalar(1, 2);
    DriverMode mode = DriverMode::Oracle;
    int depth_cap = 0;        ///< 0: ceil(c_l * log2 T) with T = n / eps
    int budget = 8;           ///< curve pieces, enumerate mode
    long enumeration_cap = 10'000'000;
    std::uint64_t seed = 1;
    double c_delta = 1.0;
    double c_l = 2.0;
    double c_tau = 4.0;
    double c_net = 4.0;
    Scalar delta_clip = Scalar(1, 9);
    int exact_cap = 20;
    int heuristic_seeds = 3;  ///< separator reseeds per node, heuristic mode
    bool all_guesses = false; ///< every weight guess instead of the reference one
    double net_a = 1.0;       ///< halfspaces: net eps = net_a * delta^2 / ln(delta^-2)
    int apex_cap = 64;        ///< halfspaces, enumerate mode: apex cells tried per node
};

struct DriverStats {
    Scalar delta = 0;
    int depth_cap = 0;
    int guesses = 0;           ///< distinct reduced instances solved
    int nodes = 0;
    int separator_calls = 0;
    int separator_failures = 0;
    int base_cases = 0;
    long curves = 0;           ///< enumerate mode
    int splits = 0;            ///< distinct point splits, enumerate mode
};

/// delta = c_delta * eps / log2(n / eps), clipped to delta_clip.
Scalar driver_delta(int n, const DriverConfig& cfg);

/// Recursive separator-based cover. Each node splits its points by a curve
/// and solves both halves; the node keeps the cheapest of the split
/// candidates and the single-region cover. Heavy members of the reference
/// cover are selected up front. Throws Infeasible and, in enumerate mode,
/// BudgetTooLarge.
Solution qptas_set_cover(const SetCoverInstance& inst, const DriverConfig& cfg,
                         DriverStats* stats = nullptr);

}  // namespace pdc
