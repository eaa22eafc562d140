#include "pdcover/geom/arrangement.h"

#include "pdcover/geom/errors.h"

#include <algorithm>
#include <set>
#include <string>

namespace pdc {

std::vector<ArrangementVertex> boundary_intersections(const Region& a,
                                                      const Region& b) {
    std::vector<ArrangementVertex> out;
    if (!bbox_overlap(bbox_of(a.boundary), bbox_of(b.boundary))) return out;
    const auto& pa = a.boundary;
    const auto& pb = b.boundary;
    const std::size_t na = pa.size(), nb = pb.size();
    std::vector<BBox> eb(nb);
    for (std::size_t k = 0; k < nb; ++k)
        eb[k] = bbox_of(Polygon{pb[k], pb[(k + 1) % nb]});
    std::set<Point2> seen;
    for (std::size_t i = 0; i < na; ++i) {
        BBox ea = bbox_of(Polygon{pa[i], pa[(i + 1) % na]});
        for (std::size_t k = 0; k < nb; ++k) {
            if (!bbox_overlap(ea, eb[k])) continue;
            SegmentHit h = intersect_segments(pa[i], pa[(i + 1) % na], pb[k],
                                              pb[(k + 1) % nb]);
            if (h.kind == SegmentRelation::Disjoint) continue;
            if (h.kind != SegmentRelation::Cross)
                throw Error(ErrorKind::Degenerate,
                            "boundaries of regions " + std::to_string(a.id) +
                                " and " + std::to_string(b.id) +
                                " touch or overlap");
            if (!seen.insert(h.p).second) continue;
            ArrangementVertex v;
            v.location = h.p;
            v.i = std::min(a.id, b.id);
            v.j = std::max(a.id, b.id);
            out.push_back(std::move(v));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& u, const auto& w) {
        return u.location < w.location;
    });
    return out;
}

FamilyCheck is_pseudodisk_family(const std::vector<Region>& regions) {
    FamilyCheck res;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        for (std::size_t j = i + 1; j < regions.size(); ++j) {
            int c = static_cast<int>(
                boundary_intersections(regions[i], regions[j]).size());
            res.max_crossings = std::max(res.max_crossings, c);
            if (c > 2 && res.ok) {
                res.ok = false;
                res.first = regions[i].id;
                res.second = regions[j].id;
            }
        }
    }
    return res;
}

FamilyCheck is_cover_free(const std::vector<Region>& regions) {
    FamilyCheck res;
    std::vector<Polygon> polys;
    for (const auto& r : regions) polys.push_back(r.boundary);
    Overlay ov = Overlay::from_polygons(polys);
    std::vector<bool> exposed(regions.size(), false);
    for (const auto& f : ov.faces())
        if (f.label.size() == 1) exposed[f.label[0]] = true;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        if (!exposed[i]) {
            res.ok = false;
            res.first = regions[i].id;
            return res;
        }
    }
    return res;
}

Arrangement build_arrangement(const std::vector<Region>& regions) {
    Arrangement arr;
    arr.regions = regions;
    std::vector<BBox> boxes;
    for (const auto& r : regions) boxes.push_back(bbox_of(r.boundary));
    for (std::size_t a = 0; a < regions.size(); ++a) {
        for (std::size_t b = a + 1; b < regions.size(); ++b) {
            for (auto& v : boundary_intersections(regions[a], regions[b])) {
                for (std::size_t k = 0; k < regions.size(); ++k) {
                    if (k == a || k == b) continue;
                    const BBox& bx = boxes[k];
                    if (v.location.x < bx.xmin || v.location.x > bx.xmax ||
                        v.location.y < bx.ymin || v.location.y > bx.ymax)
                        continue;
                    Location loc = locate(v.location, regions[k]);
                    if (loc == Location::OnBoundary)
                        throw Error(ErrorKind::Degenerate,
                                    "three boundaries meet at one point (regions " +
                                        std::to_string(regions[a].id) + ", " +
                                        std::to_string(regions[b].id) + ", " +
                                        std::to_string(regions[k].id) + ")");
                    if (loc == Location::Inside) {
                        v.depth += regions[k].weight;
                        ++v.depth_count;
                    }
                }
                arr.vertices.push_back(std::move(v));
            }
        }
    }
    arr.m = static_cast<int>(arr.vertices.size());
    return arr;
}

UnionStats union_stats(const std::vector<Region>& regions) {
    UnionStats s;
    Arrangement arr = build_arrangement(regions);
    s.m = arr.m;
    for (const auto& v : arr.vertices) {
        ++s.depth_histogram[v.depth_count];
        if (v.depth_count == 0) ++s.union_vertices;
    }
    return s;
}

DifferenceResult region_difference(const Region& a, const Region& x) {
    Overlay ov = Overlay::from_polygons({a.boundary, x.boundary});
    const auto& faces = ov.faces();
    std::vector<bool> in(faces.size(), false);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        in[f] = ov.face_has(static_cast<int>(f), 0) && !ov.face_has(static_cast<int>(f), 1);
        any = any || in[f];
    }
    if (!any)
        throw Error(ErrorKind::Swallowed, "region " + std::to_string(a.id) +
                                              " lies inside " + std::to_string(x.id));
    auto cycles = face_set_boundary(ov, in);
    if (cycles.size() != 1)
        throw Error(ErrorKind::Disconnected, "difference has " +
                                                 std::to_string(cycles.size()) +
                                                 " boundary cycles");
    const auto& he = ov.half_edges();
    auto source = [&](int h) {
        const auto& e = he[h];
        int owner = !e.owners_left.empty() ? e.owners_left[0] : e.owners_right[0];
        return owner == 0 ? a.id : x.id;
    };
    // Keep only vertices where the direction or the source changes.
    const auto& cyc = cycles[0];
    const std::size_t n = cyc.size();
    std::vector<int> keep;
    for (std::size_t k = 0; k < n; ++k) {
        int hp = cyc[(k + n - 1) % n], h = cyc[k];
        const Point2& p0 = ov.vertices()[he[hp].origin].p;
        const Point2& p1 = ov.vertices()[he[h].origin].p;
        const Point2& p2 = ov.vertices()[ov.dest(h)].p;
        if (orient(p0, p1, p2) != 0 || source(hp) != source(h))
            keep.push_back(static_cast<int>(k));
    }
    DifferenceResult res;
    Polygon poly;
    std::vector<int> src;
    int switches = 0;
    for (std::size_t t = 0; t < keep.size(); ++t) {
        int h = cyc[keep[t]];
        poly.push_back(ov.vertices()[he[h].origin].p);
        src.push_back(source(h));
        int hp = cyc[(keep[t] + n - 1) % n];
        if (source(hp) != source(h)) ++switches;
    }
    res.new_vertices = switches;
    // make_region rotates to the lexicographic minimum; rotate sources to match.
    auto it = std::min_element(poly.begin(), poly.end());
    long shift = it - poly.begin();
    std::rotate(poly.begin(), it, poly.end());
    std::rotate(src.begin(), src.begin() + shift, src.end());
    res.region = make_region(a.id, a.weight, poly);
    res.edge_source = std::move(src);
    return res;
}

std::vector<Region> perturb_regions(const std::vector<Region>& regions) {
    std::vector<Scalar> ys;
    for (const auto& r : regions)
        for (const auto& p : r.boundary) ys.push_back(p.y);
    std::sort(ys.begin(), ys.end());
    Scalar gap = 1;
    for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
        Scalar d = ys[k + 1] - ys[k];
        if (d > 0 && d < gap) gap = d;
    }
    Scalar h = gap / (Scalar(static_cast<long>(4 * regions.size() * regions.size() + 4)));
    std::vector<Region> out;
    for (std::size_t k = 0; k < regions.size(); ++k) {
        Polygon poly = regions[k].boundary;
        for (auto& p : poly) p.y += h * Scalar(static_cast<long>(k));
        out.push_back(make_region(regions[k].id, regions[k].weight, poly));
    }
    return out;
}

}  // namespace pdc
