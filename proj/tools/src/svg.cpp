#include "pdcover_tools/svg.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace pdc::tools {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 20.0;

struct View {
    double xmin = 0, ymin = 0, scale = 1;

    std::string point(const Point2& p) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", kMargin + (to_double(p.x) - xmin) * scale,
                      kCanvas - kMargin - (to_double(p.y) - ymin) * scale);
        return buf;
    }

    std::string path(const Polygon& poly) const {
        std::string d;
        for (std::size_t i = 0; i < poly.size(); ++i) d += (i ? " L" : "M") + point(poly[i]);
        return d + " Z";
    }
};

View view_of(const PlanarInstance& inst, const SvgLayers& layers) {
    std::vector<Point2> all = inst.points;
    for (const auto& r : inst.regions) all.insert(all.end(), r.boundary.begin(), r.boundary.end());
    for (const auto& c : layers.curves) all.insert(all.end(), c.begin(), c.end());
    View v;
    if (all.empty()) return v;
    double x0 = to_double(all[0].x), x1 = x0, y0 = to_double(all[0].y), y1 = y0;
    for (const auto& p : all) {
        x0 = std::min(x0, to_double(p.x));
        x1 = std::max(x1, to_double(p.x));
        y0 = std::min(y0, to_double(p.y));
        y1 = std::max(y1, to_double(p.y));
    }
    v.xmin = x0;
    v.ymin = y0;
    double span = std::max({x1 - x0, y1 - y0, 1e-9});
    v.scale = (kCanvas - 2 * kMargin) / span;
    return v;
}

}  // namespace

std::string render_svg(const PlanarInstance& inst, const SvgLayers& layers) {
    const View v = view_of(inst, layers);
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
        << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n";
    out << "<g id=\"frame\"><rect x=\"0\" y=\"0\" width=\"" << kCanvas << "\" height=\"" << kCanvas
        << "\" fill=\"white\" stroke=\"black\"/></g>\n";
    out << "<g id=\"regions\" fill-opacity=\"0.15\">\n";
    for (std::size_t i = 0; i < inst.regions.size(); ++i) {
        const auto& r = inst.regions[i];
        const bool hot = std::find(layers.selected.begin(), layers.selected.end(), static_cast<int>(i)) !=
                         layers.selected.end();
        out << "<path id=\"region-" << r.id << "\" d=\"" << v.path(r.boundary) << "\" fill=\""
            << (hot ? "#d62728" : "#1f77b4") << "\" stroke=\"#1f77b4\"><title>w="
            << format_scalar(r.weight) << "</title></path>\n";
    }
    out << "</g>\n";
    if (layers.cores) {
        out << "<g id=\"cores\" fill=\"#2ca02c\" fill-opacity=\"0.3\" stroke=\"#2ca02c\">\n";
        const auto& cores = layers.cores->cores;
        for (std::size_t i = 0; i < cores.size(); ++i)
            for (std::size_t k = 0; k < cores[i].cycle_polygons.size(); ++k)
                out << "<path id=\"core-" << layers.cores->context->regions[i].id << "-" << k << "\" d=\""
                    << v.path(cores[i].cycle_polygons[k]) << "\"/>\n";
        out << "</g>\n";
    }
    if (!layers.curves.empty()) {
        out << "<g id=\"curves\" fill=\"none\" stroke=\"#ff7f0e\" stroke-width=\"2\">\n";
        for (std::size_t i = 0; i < layers.curves.size(); ++i)
            out << "<path id=\"curve-" << i << "\" d=\"" << v.path(layers.curves[i]) << "\"/>\n";
        out << "</g>\n";
    }
    out << "<g id=\"points\" fill=\"black\">\n";
    for (const auto& p : inst.points) {
        std::string xy = v.point(p);
        auto comma = xy.find(',');
        out << "<circle cx=\"" << xy.substr(0, comma) << "\" cy=\"" << xy.substr(comma + 1) << "\" r=\"2\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace pdc::tools
