#include "pdcover/geom/overlay.h"

#include "pdcover/geom/errors.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

namespace pdc {

namespace {

struct DBox {
    double xmin, ymin, xmax, ymax;
};

DBox dbox(const Point2& a, const Point2& b) {
    double ax = to_double(a.x), ay = to_double(a.y);
    double bx = to_double(b.x), by = to_double(b.y);
    double ex = 1e-9 * (1.0 + std::fabs(ax) + std::fabs(bx));
    double ey = 1e-9 * (1.0 + std::fabs(ay) + std::fabs(by));
    return {std::min(ax, bx) - ex, std::min(ay, by) - ey,
            std::max(ax, bx) + ex, std::max(ay, by) + ey};
}

int half_plane(const Point2& d) {
    return (sgn(d.y) > 0 || (sgn(d.y) == 0 && sgn(d.x) > 0)) ? 0 : 1;
}

bool angle_less(const Point2& d1, const Point2& d2) {
    int h1 = half_plane(d1), h2 = half_plane(d2);
    if (h1 != h2) return h1 < h2;
    return sgn(d1.x * d2.y - d1.y * d2.x) > 0;
}

void insert_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

void erase_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

Overlay::Overlay(const std::vector<OverlaySegment>& segments) { build(segments); }

Overlay Overlay::from_polygons(const std::vector<Polygon>& polys) {
    std::vector<OverlaySegment> segs;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        Polygon p = polys[i];
        make_ccw(p);
        for (std::size_t k = 0; k < p.size(); ++k)
            segs.push_back({p[k], p[(k + 1) % p.size()], static_cast<int>(i)});
    }
    return Overlay(segs);
}

void Overlay::build(const std::vector<OverlaySegment>& segments) {
    const std::size_t ns = segments.size();
    std::vector<std::vector<Point2>> splits(ns);
    std::vector<DBox> boxes(ns);
    std::vector<std::size_t> order(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        if (segments[i].a == segments[i].b)
            throw Error(ErrorKind::Degenerate, "zero-length overlay segment");
        boxes[i] = dbox(segments[i].a, segments[i].b);
        splits[i] = {segments[i].a, segments[i].b};
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return boxes[a].xmin < boxes[b].xmin;
    });

    // ── Pairwise contacts, pruned by an x-sweep over double boxes ──
    for (std::size_t oi = 0; oi < ns; ++oi) {
        std::size_t i = order[oi];
        for (std::size_t oj = oi + 1; oj < ns; ++oj) {
            std::size_t j = order[oj];
            if (boxes[j].xmin > boxes[i].xmax) break;
            if (boxes[j].ymin > boxes[i].ymax || boxes[i].ymin > boxes[j].ymax)
                continue;
            SegmentHit h = intersect_segments(segments[i].a, segments[i].b,
                                              segments[j].a, segments[j].b);
            switch (h.kind) {
                case SegmentRelation::Disjoint: break;
                case SegmentRelation::Cross:
                case SegmentRelation::Touch:
                    splits[i].push_back(h.p);
                    splits[j].push_back(h.p);
                    break;
                case SegmentRelation::Overlap:
                    splits[i].push_back(h.p);
                    splits[i].push_back(h.q);
                    splits[j].push_back(h.p);
                    splits[j].push_back(h.q);
                    break;
            }
        }
    }

    // ── Sub-edges, merged by endpoints ──
    std::map<Point2, int> vid;
    auto vertex_of = [&](const Point2& p) {
        auto [it, fresh] = vid.emplace(p, static_cast<int>(vertices_.size()));
        if (fresh) vertices_.push_back({p, {}});
        return it->second;
    };
    struct EdgeInfo {
        std::vector<int> left;   // owners with interior left of lo -> hi
        std::vector<int> right;
        std::vector<int> tags;
        bool wall = false;
    };
    std::map<std::pair<int, int>, EdgeInfo> edges;
    for (std::size_t i = 0; i < ns; ++i) {
        auto& pts = splits[i];
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const auto& s = segments[i];
        bool lo_to_hi = s.a < s.b;  // input direction agrees with sorted order
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            int u = vertex_of(pts[k]);
            int v = vertex_of(pts[k + 1]);
            EdgeInfo& e = edges[{u, v}];
            if (s.tag >= 0) insert_sorted(e.tags, s.tag);
            if (s.owner < 0) {
                e.wall = true;
            } else if (lo_to_hi) {
                insert_sorted(e.left, s.owner);
            } else {
                insert_sorted(e.right, s.owner);
            }
        }
    }

    // ── Half-edges ──
    for (auto& [key, info] : edges) {
        int e = static_cast<int>(half_edges_.size() / 2);
        HalfEdge h1, h2;
        h1.origin = key.first;
        h2.origin = key.second;
        h1.twin = 2 * e + 1;
        h2.twin = 2 * e;
        h1.edge = h2.edge = e;
        // An owner listed on both sides cancels (the polygon folds back on
        // itself); general-position inputs never do this.
        h1.owners_left = info.left;
        h1.owners_right = info.right;
        h2.owners_left = info.right;
        h2.owners_right = info.left;
        h1.has_wall = h2.has_wall = info.wall;
        h1.tags = info.tags;
        h2.tags = info.tags;
        half_edges_.push_back(std::move(h1));
        half_edges_.push_back(std::move(h2));
    }
    for (int h = 0; h < static_cast<int>(half_edges_.size()); ++h)
        vertices_[half_edges_[h].origin].out.push_back(h);
    for (auto& v : vertices_) {
        std::vector<std::pair<Point2, int>> dirs;
        for (int h : v.out) {
            const Point2& q = vertices_[dest(h)].p;
            dirs.push_back({{q.x - v.p.x, q.y - v.p.y}, h});
        }
        std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) {
            return angle_less(a.first, b.first);
        });
        for (std::size_t k = 0; k < dirs.size(); ++k) v.out[k] = dirs[k].second;
    }
    std::vector<int> pos_in_vertex(half_edges_.size());
    for (auto& v : vertices_)
        for (std::size_t k = 0; k < v.out.size(); ++k)
            pos_in_vertex[v.out[k]] = static_cast<int>(k);
    for (int h = 0; h < static_cast<int>(half_edges_.size()); ++h) {
        int t = half_edges_[h].twin;
        const auto& out = vertices_[half_edges_[t].origin].out;
        int deg = static_cast<int>(out.size());
        half_edges_[h].next = out[(pos_in_vertex[t] + deg - 1) % deg];
    }

    // ── Cycles and faces ──
    std::vector<int> cycle_of(half_edges_.size(), -1);
    std::vector<int> cycle_start;
    std::vector<Scalar> cycle_area2;
    for (int h = 0; h < static_cast<int>(half_edges_.size()); ++h) {
        if (cycle_of[h] >= 0) continue;
        int c = static_cast<int>(cycle_start.size());
        cycle_start.push_back(h);
        Scalar a2 = 0;
        int g = h;
        do {
            cycle_of[g] = c;
            const Point2& p = vertices_[half_edges_[g].origin].p;
            const Point2& q = vertices_[dest(g)].p;
            a2 += p.x * q.y - p.y * q.x;
            g = half_edges_[g].next;
        } while (g != h);
        cycle_area2.push_back(a2);
    }

    faces_.push_back({});
    faces_[0].unbounded = true;
    unbounded_ = 0;
    std::vector<int> face_of_cycle(cycle_start.size(), -1);
    std::vector<int> positive;
    std::vector<Polygon> positive_poly;
    std::vector<BBox> positive_box;
    for (std::size_t c = 0; c < cycle_start.size(); ++c) {
        if (sgn(cycle_area2[c]) <= 0) continue;
        Face f;
        f.outer = cycle_start[c];
        f.area = cycle_area2[c] / 2;
        face_of_cycle[c] = static_cast<int>(faces_.size());
        faces_.push_back(std::move(f));
        positive.push_back(static_cast<int>(c));
        positive_poly.push_back(cycle_polygon(cycle_start[c]));
        positive_box.push_back(bbox_of(positive_poly.back()));
    }
    for (std::size_t c = 0; c < cycle_start.size(); ++c) {
        if (sgn(cycle_area2[c]) > 0) continue;
        const Point2& p = vertices_[half_edges_[cycle_start[c]].origin].p;
        int best = -1;
        for (std::size_t k = 0; k < positive.size(); ++k) {
            const BBox& b = positive_box[k];
            if (p.x <= b.xmin || p.x >= b.xmax || p.y <= b.ymin || p.y >= b.ymax)
                continue;
            if (locate(p, positive_poly[k]) != Location::Inside) continue;
            if (best < 0 || cycle_area2[positive[k]] < cycle_area2[positive[best]])
                best = static_cast<int>(k);
        }
        int f = best < 0 ? 0 : face_of_cycle[positive[best]];
        face_of_cycle[c] = f;
        if (f == 0) {
            if (faces_[0].outer < 0) faces_[0].outer = cycle_start[c];
            else faces_[0].holes.push_back(cycle_start[c]);
        } else {
            faces_[f].holes.push_back(cycle_start[c]);
            faces_[f].area += cycle_area2[c] / 2;
        }
    }
    for (int h = 0; h < static_cast<int>(half_edges_.size()); ++h)
        half_edges_[h].face = face_of_cycle[cycle_of[h]];

    // ── Labels by crossing edges outward from the unbounded face ──
    std::vector<std::vector<int>> face_edges(faces_.size());
    for (int h = 0; h < static_cast<int>(half_edges_.size()); ++h)
        face_edges[half_edges_[h].face].push_back(h);
    std::vector<bool> seen(faces_.size(), false);
    std::queue<int> q;
    seen[0] = true;
    q.push(0);
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int h : face_edges[f]) {
            const HalfEdge& he = half_edges_[h];
            int g = half_edges_[he.twin].face;
            if (seen[g]) continue;
            std::vector<int> label = faces_[f].label;
            for (int o : he.owners_left) erase_sorted(label, o);
            for (int o : he.owners_right) insert_sorted(label, o);
            faces_[g].label = std::move(label);
            seen[g] = true;
            q.push(g);
        }
    }
}

std::vector<int> Overlay::cycle(int h) const {
    std::vector<int> out;
    int g = h;
    do {
        out.push_back(half_edges_[g].origin);
        g = half_edges_[g].next;
    } while (g != h);
    return out;
}

std::vector<int> Overlay::edge_cycle(int h) const {
    std::vector<int> out;
    int g = h;
    do {
        out.push_back(g);
        g = half_edges_[g].next;
    } while (g != h);
    return out;
}

Polygon Overlay::cycle_polygon(int h) const {
    Polygon poly;
    for (int v : cycle(h)) poly.push_back(vertices_[v].p);
    return poly;
}

int Overlay::find_vertex(const Point2& p) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].p == p) return static_cast<int>(i);
    return -1;
}

bool Overlay::face_has(int f, int owner) const {
    const auto& l = faces_[f].label;
    return std::binary_search(l.begin(), l.end(), owner);
}

}  // namespace pdc

namespace pdc {

std::vector<std::vector<int>> face_set_boundary(const Overlay& ov,
                                                const std::vector<bool>& in_set) {
    const auto& he = ov.half_edges();
    auto inside = [&](int h) { return in_set[he[h].face]; };
    std::vector<bool> used(he.size(), false);
    std::vector<std::vector<int>> cycles;
    for (int h = 0; h < static_cast<int>(he.size()); ++h) {
        if (used[h] || !inside(h) || inside(he[h].twin)) continue;
        std::vector<int> cyc;
        int g = h;
        do {
            used[g] = true;
            cyc.push_back(g);
            int n = he[g].next;
            while (inside(he[n].twin)) n = he[he[n].twin].next;
            g = n;
        } while (g != h);
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

}  // namespace pdc

namespace pdc {

Point2 face_interior_point(const Overlay& ov, int face) {
    const auto& f = ov.faces()[face];
    std::vector<int> starts;
    if (f.outer >= 0) starts.push_back(f.outer);
    starts.insert(starts.end(), f.holes.begin(), f.holes.end());
    std::vector<std::pair<Point2, Point2>> edges;
    std::vector<Scalar> ys;
    for (int s : starts) {
        Polygon poly = ov.cycle_polygon(s);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            edges.push_back({poly[k], poly[(k + 1) % poly.size()]});
            ys.push_back(poly[k].y);
        }
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    Polygon outer = ov.cycle_polygon(f.outer);
    Scalar ymin = outer[0].y;
    for (const auto& p : outer) ymin = std::min(ymin, p.y);
    auto it = std::upper_bound(ys.begin(), ys.end(), ymin);
    Scalar y0 = (ymin + *it) / 2;
    std::vector<Scalar> xs;
    for (const auto& [a, b] : edges) {
        if ((a.y < y0) == (b.y < y0)) continue;
        xs.push_back(a.x + (b.x - a.x) * (y0 - a.y) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    return {(xs[0] + xs[1]) / 2, y0};
}

Location locate_in_cycles(const Point2& p, const std::vector<Polygon>& cycles) {
    bool inside = false;
    for (const auto& c : cycles) {
        Location l = locate(p, c);
        if (l == Location::OnBoundary) return l;
        if (l == Location::Inside) inside = !inside;
    }
    return inside ? Location::Inside : Location::Outside;
}

}  // namespace pdc
