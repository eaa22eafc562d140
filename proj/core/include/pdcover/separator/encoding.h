#pragma once

#include "pdcover/geom/region.h"
#include "pdcover/partition/subdivision.h"
#include "pdcover/partition/trapezoid.h"

#include <string>
#include <vector>

namespace pdc {

/// Pseudo-region for the horizontal frame sides: piece 0 bottom, 1 top.
inline constexpr int kFrameRegion = -1;

/// Stretch of a monotone piece traversed from x_from to x_to.
struct PieceRef {
    int region = 0;
    int piece = 0;
    Scalar x_from = 0;
    Scalar x_to = 0;

    bool operator==(const PieceRef&) const = default;
};

/// Closed curve given by pieces joined at junctions. Junction i follows
/// pieces[i]: either the next piece starts where this one ends, or a
/// vertical connector at the shared x joins them; bits[i] is set when
/// that connector goes up.
struct SeparatorCurve {
    std::vector<PieceRef> pieces;
    std::vector<bool> bits;
    Polygon geometry;  ///< simplified, starting at its smallest vertex

    int complexity() const { return static_cast<int>(pieces.size()); }
};

struct Encoding {
    std::vector<PieceRef> pieces;
    std::vector<bool> bits;

    bool operator==(const Encoding&) const = default;
};

/// Frame used to realize pieces of kFrameRegion.
BBox frame_of_regions(const std::vector<Region>& regions);

/// Canonical encoding: rotated to the smallest start. Curves built here
/// are always counter-clockwise, so equal geometry gives equal encodings.
Encoding encode(const SeparatorCurve& curve);

/// Realize an encoding. Throws MalformedEncoding on dangling references,
/// ranges outside a piece, broken junctions, wrong bits, or a curve that
/// is not simple.
SeparatorCurve decode(const std::vector<Region>& regions, const Encoding& enc);

/// Stable text form, used for hashing and deduplication.
std::string encoding_key(const Encoding& enc);

/// Curve traced by a simple cycle of a decomposition graph whose edge tags
/// index `set.curves` (walls above, frame -1). `set` must come from
/// curves_of_regions(regions, ...) and the frame from frame_of_regions.
/// With `verify`, the result is decoded again and compared to the cycle;
/// skipping that is safe for simple cycles of a plane graph.
SeparatorCurve curve_from_cycle(const std::vector<Region>& regions, const CurveSet& set,
                                const PlanarGraph& g, const std::vector<int>& half_edges,
                                bool verify = true);

/// Simplified copy rotated to start at its smallest vertex.
Polygon normalize_ring(const Polygon& poly);

}  // namespace pdc
