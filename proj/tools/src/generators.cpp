#include "pdcover_tools/generators.h"

#include "pdcover/geom/arrangement.h"
#include "pdcover/geom/errors.h"
#include "pdcover/geom/random.h"
#include "pdcover/separator/separator.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace pdc::tools {

namespace {

constexpr long kGrid = 1024;

Scalar draw_weight(WeightLaw law, Rng& rng) {
    if (law == WeightLaw::Unit) return 1;
    return Scalar(static_cast<long>(1 + rng.below(10)));
}

Polygon regular_polygon(double cx, double cy, double r, double theta, int k) {
    Polygon poly;
    for (int i = 0; i < k; ++i) {
        double a = theta + 2 * std::numbers::pi * i / k;
        poly.push_back({snap(cx + r * std::cos(a), kGrid), snap(cy + r * std::sin(a), kGrid)});
    }
    return poly;
}

bool try_region(int id, const Scalar& w, const Polygon& poly, Region& out) {
    try {
        out = make_region(id, w, poly);
        return true;
    } catch (const Error&) {
        return false;
    }
}

/// True when `r` meets every member of `family` in at most two transversal
/// crossings, with no tangencies and no containment either way.
bool compatible(const Region& r, const std::vector<Region>& family) {
    BBox br = bbox_of(r.boundary);
    for (const auto& o : family) {
        if (!bbox_overlap(br, bbox_of(o.boundary))) continue;
        try {
            auto hits = boundary_intersections(r, o);
            if (hits.size() > 2) return false;
            if (hits.empty()) {
                // Disjoint or nested; nesting violates cover-freeness.
                if (locate(r.boundary[0], o) != Location::Outside) return false;
                if (locate(o.boundary[0], r) != Location::Outside) return false;
            }
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

bool on_any_boundary(const Point2& p, const std::vector<Region>& regions, bool& inside) {
    inside = false;
    for (const auto& r : regions) {
        Location l = locate(p, r);
        if (l == Location::OnBoundary) return true;
        if (l == Location::Inside) inside = true;
    }
    return false;
}

}  // namespace

WeightLaw parse_weight_law(const std::string& name) {
    if (name == "unit") return WeightLaw::Unit;
    if (name == "uniform10") return WeightLaw::Uniform10;
    throw Error(ErrorKind::SpecInvalid, "unknown weight law: " + name);
}

std::vector<Region> disk_polygons(int n, int k, WeightLaw law, std::uint64_t seed) {
    if (n < 0 || k < 3) throw Error(ErrorKind::SpecInvalid, "disk-polygons needs n >= 0, k >= 3");
    Rng rng(seed);
    std::vector<Region> out;
    const double side = 100.0;
    // Radii shrink past 40 disks so rejection sampling stays cheap.
    const double scale = n > 40 ? std::sqrt(40.0 / n) : 1.0;
    const double rmin = 8.0 * scale, rmax = 20.0 * scale;
    int attempts = 0;
    while (static_cast<int>(out.size()) < n) {
        if (++attempts > 200000) throw Error(ErrorKind::SpecInvalid, "disk-polygons rejection cap");
        double cx = rng.uniform(0, side), cy = rng.uniform(0, side);
        double r = rng.uniform(rmin, rmax);
        double theta = rng.uniform(0, 2 * std::numbers::pi);
        Scalar w = draw_weight(law, rng);
        Region cand;
        if (!try_region(static_cast<int>(out.size()), w,
                        regular_polygon(cx, cy, r, theta, k), cand))
            continue;
        if (!compatible(cand, out)) continue;
        out.push_back(cand);
        if (static_cast<int>(out.size()) == n) {
            FamilyCheck cf = is_cover_free(out);
            if (!cf.ok) {
                out.erase(std::find_if(out.begin(), out.end(),
                                       [&](const Region& x) { return x.id == cf.first; }));
                for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
                for (auto& reg : out)
                    for (auto& piece : reg.monotone_pieces) piece.region_id = reg.id;
            }
        }
    }
    return out;
}

std::vector<Region> disjoint_polygons(int n, int k, WeightLaw law, std::uint64_t seed) {
    if (n < 0 || k < 3) throw Error(ErrorKind::SpecInvalid, "disjoint-polygons needs n >= 0, k >= 3");
    Rng rng(seed);
    int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(std::max(n, 1)))));
    double s = 100.0 / g;
    std::vector<int> cells(g * g);
    for (int i = 0; i < g * g; ++i) cells[i] = i;
    for (int i = g * g - 1; i > 0; --i)
        std::swap(cells[i], cells[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    std::vector<Region> out;
    for (int idx = 0; idx < n; ++idx) {
        int cx = cells[idx] % g, cy = cells[idx] / g;
        Region reg;
        do {
            double r = rng.uniform(0.15 * s, 0.4 * s);
            double slack = 0.5 * s - r - 0.01 * s;
            double x = (cx + 0.5) * s + rng.uniform(-slack, slack);
            double y = (cy + 0.5) * s + rng.uniform(-slack, slack);
            double theta = rng.uniform(0, 2 * std::numbers::pi);
            Scalar w = draw_weight(law, rng);
            if (try_region(idx, w, regular_polygon(x, y, r, theta, k), reg)) break;
        } while (true);
        out.push_back(reg);
    }
    Scalar total = total_weight(out);
    bool heavy = std::any_of(out.begin(), out.end(),
                             [&](const Region& r) { return 3 * r.weight > total; });
    if (heavy)
        for (auto& r : out) r.weight = 1;
    return out;
}

std::vector<Segment> random_segments(int n, double lmin, double lmax, bool disjoint,
                                     std::uint64_t seed) {
    if (n < 0 || lmin <= 0 || lmax < lmin)
        throw Error(ErrorKind::SpecInvalid, "random-segments needs 0 < lmin <= lmax");
    Rng rng(seed);
    std::vector<Segment> out;
    std::set<Scalar> xs;
    int attempts = 0;
    while (static_cast<int>(out.size()) < n) {
        if (++attempts > 1000000) throw Error(ErrorKind::SpecInvalid, "random-segments rejection cap");
        double ax = rng.uniform(0, 100), ay = rng.uniform(0, 100);
        double len = rng.uniform(lmin, lmax);
        double th = rng.uniform(0, 2 * std::numbers::pi);
        double bx = ax + len * std::cos(th), by = ay + len * std::sin(th);
        if (bx < 0 || bx > 100 || by < 0 || by > 100) continue;
        Segment s{{snap(ax, kGrid), snap(ay, kGrid)}, {snap(bx, kGrid), snap(by, kGrid)}};
        if (s.a.x == s.b.x || xs.count(s.a.x) || xs.count(s.b.x)) continue;
        if (s.b.x < s.a.x) std::swap(s.a, s.b);
        bool ok = true;
        for (const auto& o : out) {
            SegmentHit h = intersect_segments(s.a, s.b, o.a, o.b);
            if (h.kind == SegmentRelation::Disjoint) continue;
            if (h.kind != SegmentRelation::Cross || disjoint) { ok = false; break; }
            if (xs.count(h.p.x)) { ok = false; break; }
        }
        if (!ok) continue;
        xs.insert(s.a.x);
        xs.insert(s.b.x);
        out.push_back(s);
    }
    return out;
}

std::vector<Region> segment_regions(const std::vector<Segment>& segs, WeightLaw law,
                                    std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Region> out;
    const Scalar hw(1, 4 * kGrid);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        Scalar w = draw_weight(law, rng);
        out.push_back(make_region(static_cast<int>(i), w,
                                  thin_segment_polygon(segs[i].a, segs[i].b, hw)));
    }
    return out;
}

std::vector<PolyCurve> segment_curves(const std::vector<Segment>& segs) {
    std::vector<PolyCurve> out;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        PolyCurve c;
        c.vertices = {segs[i].a, segs[i].b};
        c.region_id = static_cast<int>(i);
        c.piece = 0;
        out.push_back(c);
    }
    return out;
}

std::vector<Region> lowerbound_rings(const Scalar& delta, int c, int copies) {
    return lower_bound_instance(delta, c, copies);
}

std::vector<Point2> grid_points(const std::vector<Region>& regions, int per_side) {
    std::vector<Point2> out;
    if (regions.empty() || per_side <= 0) return out;
    BBox box = bbox_of(regions[0].boundary);
    for (const auto& r : regions) {
        BBox b = bbox_of(r.boundary);
        box.xmin = std::min(box.xmin, b.xmin);
        box.ymin = std::min(box.ymin, b.ymin);
        box.xmax = std::max(box.xmax, b.xmax);
        box.ymax = std::max(box.ymax, b.ymax);
    }
    for (int i = 0; i < per_side; ++i)
        for (int j = 0; j < per_side; ++j) {
            Point2 p{box.xmin + (box.xmax - box.xmin) * Scalar(2 * i + 1, 2 * per_side),
                     box.ymin + (box.ymax - box.ymin) * Scalar(2 * j + 1, 2 * per_side)};
            bool inside;
            if (!on_any_boundary(p, regions, inside) && inside) out.push_back(p);
        }
    return out;
}

std::vector<Point2> clustered_points(const std::vector<Region>& regions, int count,
                                     std::uint64_t seed) {
    std::vector<Point2> out;
    if (regions.empty()) return out;
    Rng rng(seed);
    std::set<Point2> seen;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count && ++attempts < 100 * count + 100) {
        const Region& r = regions[rng.below(regions.size())];
        BBox b = bbox_of(r.boundary);
        double x = rng.uniform(to_double(b.xmin), to_double(b.xmax));
        double y = rng.uniform(to_double(b.ymin), to_double(b.ymax));
        Point2 p{snap(x, 4 * kGrid), snap(y, 4 * kGrid)};
        bool inside;
        if (on_any_boundary(p, regions, inside) || !inside) continue;
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

HalfspaceInstance random_halfspaces(int n, int points, double opposing, WeightLaw law,
                                    std::uint64_t seed) {
    if (n < 1 || points < 0 || opposing < 0 || opposing > 1)
        throw Error(ErrorKind::SpecInvalid, "random-halfspaces needs n >= 1, 0 <= opposing <= 1");
    Rng rng(seed);
    HalfspaceInstance inst;
    auto coord = [&] { return Scalar(static_cast<long>(rng.below(9)) - 4); };
    while (static_cast<int>(inst.halfspaces.size()) < n) {
        Point3 nrm{coord(), coord(), coord()};
        if (nrm == Point3{0, 0, 0}) continue;
        const double len = std::sqrt(to_double(dot(nrm, nrm)));
        const bool opp = rng.uniform(0, 1) < opposing;
        const double r = opp ? -rng.uniform(1, 4) : rng.uniform(5, 9);
        Scalar w = draw_weight(law, rng);
        inst.halfspaces.push_back(
            make_halfspace(static_cast<int>(inst.halfspaces.size()), nrm, snap(r * len, 16), w));
    }
    std::set<Point3> seen;
    int attempts = 0;
    while (static_cast<int>(inst.points.size()) < points && ++attempts < 200 * points + 200) {
        Point3 p{snap(rng.uniform(-10, 10), kGrid), snap(rng.uniform(-10, 10), kGrid),
                 snap(rng.uniform(-10, 10), kGrid)};
        bool covered = false, on_plane = false;
        for (const auto& h : inst.halfspaces) {
            Scalar s = h.side(p);
            if (s == 0) on_plane = true;
            if (s > 0) covered = true;
        }
        if (on_plane || !covered || !seen.insert(p).second) continue;
        inst.points.push_back(p);
    }
    return inst;
}

}  // namespace pdc::tools
