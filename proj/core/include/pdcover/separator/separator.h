#pragma once

#include "pdcover/geom/region.h"
#include "pdcover/partition/trapezoid.h"
#include "pdcover/separator/encoding.h"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace pdc {

/// Region and point indices by side of a closed curve. Points on the curve
/// belong to both point sets.
struct SideClassification {
    std::vector<int> inside, outside, crossing;
    std::vector<int> inside_points, outside_points;
};

/// A region is inside when it lies in the closed interior, outside when in
/// the closed exterior, crossing otherwise.
SideClassification classify(const SeparatorCurve& curve, const std::vector<Region>& regions,
                            const std::vector<Point2>& points = {});

struct SeparatorConfig {
    SampleConfig sample;
    std::uint64_t seed = 1;
    int max_doublings = 6;  ///< weighted: r doubles while a check fails
    int max_attempts = 8;   ///< intersecting: reseeds while a check fails
};

struct SeparatorReport {
    SeparatorCurve curve;
    SideClassification sides;
    Scalar total = 0;           ///< W, or n when unweighted
    Scalar inside_weight = 0;
    Scalar outside_weight = 0;
    Scalar crossing_weight = 0;
    long r = 0;                 ///< sampling parameter used
    int attempts = 0;
    int alpha = 0;
    int cells = 0;
    int cycle_length = 0;
    double c_sep = 0;
    long crossings_m = 0;       ///< boundary crossings (intersecting only)
    double complexity_envelope = 0;  ///< the complexity bound without its constant
    double crossing_envelope = 0;    ///< intersecting only
};

/// Curve through disjoint weighted regions with crossing weight at most
/// delta W and at most 2W/3 on each side, both re-verified by classify.
/// Samples at r = ceil(alpha^2 / delta^2), doubling r when a check fails.
/// Throws Unbalanced when a region outweighs W/3, SamplingFailed when
/// every r fails.
SeparatorReport weighted_region_separator(const std::vector<Region>& regions, const Scalar& delta,
                                          const SeparatorConfig& cfg = {});

/// Curve with at most 2n/3 regions strictly on each side, for regions that
/// may intersect. Crossing count and complexity are reported against their
/// envelopes.
SeparatorReport intersecting_region_separator(const std::vector<Region>& regions, long r,
                                              const SeparatorConfig& cfg = {});

/// Concentric shrinking copies of a regular (c/delta)-gon, each side a
/// separate thin segment region. Throws SpecInvalid unless c/delta is an
/// integer >= 3.
std::vector<Region> lower_bound_instance(const Scalar& delta, int c, int copies);

/// Lazy stream of every simple closed curve of the full decomposition of
/// `regions` with at most `budget` pieces, deduplicated by encoding.
/// Throws BudgetTooLarge from next() once more than `cap` curves have
/// been produced.
class SeparatorStream {
public:
    SeparatorStream(const std::vector<Region>& regions, int budget, long cap);
    ~SeparatorStream();
    SeparatorStream(SeparatorStream&&) noexcept;
    SeparatorStream& operator=(SeparatorStream&&) noexcept;

    std::optional<SeparatorCurve> next();
    /// Sides of the last curve from next(), found from the faces it
    /// encloses; agrees with classify(curve, regions, points).
    const SideClassification& sides() const;
    /// Points classified by sides(); set before the first next().
    void set_points(const std::vector<Point2>& points);
    long expanded() const;

private:
    struct State;
    std::unique_ptr<State> state_;
};

SeparatorStream enumerate_separators(const std::vector<Region>& regions, int budget,
                                     long cap = 10'000'000);

}  // namespace pdc
