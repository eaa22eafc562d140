#include "pdcover/geom/region.h"

#include "pdcover/geom/errors.h"

#include <algorithm>
#include <string>

namespace pdc {

std::vector<PolyCurve> monotone_decompose(const Polygon& boundary,
                                          int region_id) {
    const std::size_t n = boundary.size();
    if (n < 3) throw Error(ErrorKind::InvalidInput, "polygon needs 3 vertices");
    for (std::size_t i = 0; i < n; ++i)
        if (boundary[i].x == boundary[(i + 1) % n].x)
            throw Error(ErrorKind::VerticalEdge,
                        "edge " + std::to_string(i) + " is vertical");
    if (auto bad = find_self_intersection(boundary))
        throw Error(ErrorKind::SelfIntersecting,
                    "edges " + std::to_string(bad->first) + " and " +
                        std::to_string(bad->second));

    auto dir = [&](std::size_t i) {
        return boundary[(i + 1) % n].x > boundary[i].x ? 1 : -1;
    };
    // Turning vertices: the sign of dx flips across them.
    std::vector<std::size_t> turns;
    for (std::size_t i = 0; i < n; ++i)
        if (dir((i + n - 1) % n) != dir(i)) turns.push_back(i);

    std::size_t start = 0;
    for (std::size_t k = 0; k < turns.size(); ++k)
        if (turns[k] == 0) start = k;
    std::rotate(turns.begin(), turns.begin() + static_cast<long>(start), turns.end());

    std::vector<PolyCurve> pieces;
    for (std::size_t k = 0; k < turns.size(); ++k) {
        std::size_t from = turns[k];
        std::size_t to = turns[(k + 1) % turns.size()];
        PolyCurve c;
        c.region_id = region_id;
        c.piece = static_cast<int>(k);
        for (std::size_t i = from;; i = (i + 1) % n) {
            c.vertices.push_back(boundary[i]);
            if (i == to) break;
        }
        c.forward = dir(from) > 0;
        if (!c.forward) std::reverse(c.vertices.begin(), c.vertices.end());
        pieces.push_back(std::move(c));
    }
    return pieces;
}

Region make_region(int id, const Scalar& weight, Polygon boundary) {
    if (weight < 0) throw Error(ErrorKind::InvalidInput, "negative weight");
    if (boundary.size() < 3)
        throw Error(ErrorKind::InvalidInput, "region needs 3 vertices");
    make_ccw(boundary);
    auto it = std::min_element(boundary.begin(), boundary.end());
    std::rotate(boundary.begin(), it, boundary.end());
    Region r;
    r.id = id;
    r.weight = weight;
    r.monotone_pieces = monotone_decompose(boundary, id);
    r.alpha = static_cast<int>(r.monotone_pieces.size());
    r.boundary = std::move(boundary);
    return r;
}

Polygon concatenate_pieces(const std::vector<PolyCurve>& pieces) {
    Polygon out;
    for (const auto& c : pieces) {
        std::vector<Point2> v = c.vertices;
        if (!c.forward) std::reverse(v.begin(), v.end());
        out.insert(out.end(), v.begin(), v.end() - 1);
    }
    return out;
}

Location locate(const Point2& p, const Region& r) { return locate(p, r.boundary); }

Point2 vertex_centroid(const Region& r) {
    Scalar sx = 0, sy = 0;
    for (const auto& p : r.boundary) {
        sx += p.x;
        sy += p.y;
    }
    Scalar n(static_cast<long>(r.boundary.size()));
    return {sx / n, sy / n};
}

Scalar total_weight(const std::vector<Region>& regions) {
    Scalar w = 0;
    for (const auto& r : regions) w += r.weight;
    return w;
}

Polygon thin_segment_polygon(const Point2& a, const Point2& b,
                             const Scalar& half_width) {
    Point2 lo = std::min(a, b), hi = std::max(a, b);
    Point2 mid{(lo.x + hi.x) / 2, (lo.y + hi.y) / 2};
    return {lo, {mid.x, mid.y - half_width}, hi, {mid.x, mid.y + half_width}};
}

}  // namespace pdc
