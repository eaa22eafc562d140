#pragma once

#include "pdcover/cores/cores.h"
#include "pdcover/geom/instance_io.h"

#include <string>
#include <vector>

namespace pdc::tools {

/// Optional overlays drawn above the instance.
struct SvgLayers {
    const CoreDecomposition* cores = nullptr;
    std::vector<Polygon> curves;    ///< separator curves, closed
    std::vector<int> selected;      ///< highlighted region indices
};

/// Standalone SVG with one group per layer: frame, regions, cores, curves,
/// points. Every region and core path carries an id attribute. Coordinates
/// are printed with fixed precision so the output is deterministic.
std::string render_svg(const PlanarInstance& inst, const SvgLayers& layers = {});

}  // namespace pdc::tools
