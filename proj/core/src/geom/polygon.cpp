#include "pdcover/geom/polygon.h"

#include <algorithm>

namespace pdc {

namespace {

Scalar cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
Point2 sub(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
Scalar dot(const Point2& u, const Point2& v) { return u.x * v.x + u.y * v.y; }

Point2 midpoint(const Point2& a, const Point2& b) {
    return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

/// Split [a, b] at every contact with the polygon's edges, ordered from a to b.
std::vector<Point2> split_points(const Point2& a, const Point2& b,
                                 const Polygon& poly, bool& touched) {
    std::vector<Point2> pts{a, b};
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& c = poly[i];
        const Point2& d = poly[(i + 1) % n];
        SegmentHit h = intersect_segments(a, b, c, d);
        switch (h.kind) {
            case SegmentRelation::Disjoint: break;
            case SegmentRelation::Cross:
            case SegmentRelation::Touch:
                touched = true;
                pts.push_back(h.p);
                break;
            case SegmentRelation::Overlap:
                touched = true;
                pts.push_back(h.p);
                pts.push_back(h.q);
                break;
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (b < a) std::reverse(pts.begin(), pts.end());
    return pts;
}

/// Index of a polygon edge containing the segment [u, v] (collinear overlap).
std::optional<std::size_t> carrier_edge(const Point2& u, const Point2& v,
                                        const Polygon& poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& c = poly[i];
        const Point2& d = poly[(i + 1) % n];
        if (on_segment(u, c, d) && on_segment(v, c, d)) return i;
    }
    return std::nullopt;
}

/// One direction of relate(): walk a's edges against b.
/// a_int_b_ext / b_int_a_ext name the flags from a's point of view.
void relate_half(const Polygon& a, const Polygon& b, bool& int_int,
                 bool& a_int_b_ext, bool& b_int_a_ext, bool& touched) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = a[i];
        const Point2& q = a[(i + 1) % n];
        std::vector<Point2> pts = split_points(p, q, b, touched);
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            Point2 m = midpoint(pts[k], pts[k + 1]);
            switch (locate(m, b)) {
                case Location::Inside:
                    int_int = true;
                    b_int_a_ext = true;
                    break;
                case Location::Outside:
                    a_int_b_ext = true;
                    break;
                case Location::OnBoundary: {
                    auto e = carrier_edge(pts[k], pts[k + 1], b);
                    if (!e) break;
                    const Point2& c = b[*e];
                    const Point2& d = b[(*e + 1) % b.size()];
                    if (sign(dot(sub(q, p), sub(d, c))) > 0) {
                        int_int = true;
                    } else {
                        a_int_b_ext = true;
                        b_int_a_ext = true;
                    }
                    break;
                }
            }
        }
    }
}

}  // namespace

int orient(const Point2& a, const Point2& b, const Point2& c) {
    return sgn((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

SegmentHit intersect_segments(const Point2& a, const Point2& b,
                              const Point2& c, const Point2& d) {
    SegmentHit hit;
    int d1 = orient(c, d, a);
    int d2 = orient(c, d, b);
    int d3 = orient(a, b, c);
    int d4 = orient(a, b, d);
    if (d1 == 0 && d2 == 0) {
        Point2 lo1 = std::min(a, b), hi1 = std::max(a, b);
        Point2 lo2 = std::min(c, d), hi2 = std::max(c, d);
        Point2 lo = std::max(lo1, lo2);
        Point2 hi = std::min(hi1, hi2);
        if (lo < hi) {
            hit.kind = SegmentRelation::Overlap;
            hit.p = lo;
            hit.q = hi;
        } else if (lo == hi) {
            hit.kind = SegmentRelation::Touch;
            hit.p = lo;
        }
        return hit;
    }
    if (d1 * d2 > 0 || d3 * d4 > 0) return hit;
    if (d1 == 0) { hit.kind = SegmentRelation::Touch; hit.p = a; return hit; }
    if (d2 == 0) { hit.kind = SegmentRelation::Touch; hit.p = b; return hit; }
    if (d3 == 0) { hit.kind = SegmentRelation::Touch; hit.p = c; return hit; }
    if (d4 == 0) { hit.kind = SegmentRelation::Touch; hit.p = d; return hit; }
    Point2 r = sub(b, a);
    Point2 s = sub(d, c);
    Scalar t = cross(sub(c, a), s) / cross(r, s);
    hit.kind = SegmentRelation::Cross;
    hit.p = {a.x + t * r.x, a.y + t * r.y};
    return hit;
}

Scalar signed_area2(const Polygon& poly) {
    Scalar s = 0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        s += p.x * q.y - p.y * q.x;
    }
    return s;
}

Scalar area(const Polygon& poly) {
    Scalar a = signed_area2(poly) / 2;
    return a < 0 ? Scalar(-a) : a;
}

BBox bbox_of(const Polygon& poly) {
    BBox b{poly[0].x, poly[0].y, poly[0].x, poly[0].y};
    for (const auto& p : poly) {
        if (p.x < b.xmin) b.xmin = p.x;
        if (p.x > b.xmax) b.xmax = p.x;
        if (p.y < b.ymin) b.ymin = p.y;
        if (p.y > b.ymax) b.ymax = p.y;
    }
    return b;
}

bool bbox_overlap(const BBox& a, const BBox& b) {
    return a.xmin <= b.xmax && b.xmin <= a.xmax && a.ymin <= b.ymax &&
           b.ymin <= a.ymax;
}

void make_ccw(Polygon& poly) {
    if (signed_area2(poly) < 0) std::reverse(poly.begin(), poly.end());
}

Polygon simplify(const Polygon& poly) {
    Polygon cur;
    for (const auto& p : poly)
        if (cur.empty() || cur.back() != p) cur.push_back(p);
    while (cur.size() > 1 && cur.front() == cur.back()) cur.pop_back();
    bool changed = true;
    while (changed && cur.size() > 3) {
        changed = false;
        Polygon next;
        const std::size_t n = cur.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2& prev = cur[(i + n - 1) % n];
            const Point2& v = cur[i];
            const Point2& nx = cur[(i + 1) % n];
            if (orient(prev, v, nx) == 0 && on_segment(v, prev, nx) && prev != nx) {
                changed = true;
                continue;
            }
            next.push_back(v);
        }
        cur.swap(next);
    }
    return cur;
}

std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(
    const Polygon& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return std::make_pair(std::size_t{0}, std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % n];
        if (a == b) return std::make_pair(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point2& c = poly[j];
            const Point2& d = poly[(j + 1) % n];
            SegmentHit h = intersect_segments(a, b, c, d);
            if (h.kind == SegmentRelation::Disjoint) continue;
            bool adjacent_next = (j == i + 1);
            bool adjacent_prev = (i == 0 && j == n - 1);
            if (h.kind == SegmentRelation::Touch) {
                if (adjacent_next && h.p == b) continue;
                if (adjacent_prev && h.p == a) continue;
            }
            return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

Location locate(const Point2& p, const Polygon& poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % n];
        if (on_segment(p, a, b)) return Location::OnBoundary;
        bool above_a = a.y > p.y;
        bool above_b = b.y > p.y;
        if (above_a == above_b) continue;
        int o = orient(a, b, p);
        if ((b.y > a.y && o > 0) || (b.y < a.y && o < 0)) inside = !inside;
    }
    return inside ? Location::Inside : Location::Outside;
}

Scalar y_at(const Point2& a, const Point2& b, const Scalar& x) {
    if (x == a.x) return a.y;
    if (x == b.x) return b.y;
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

PolyRelation relate(const Polygon& a, const Polygon& b) {
    Polygon ca = a, cb = b;
    make_ccw(ca);
    make_ccw(cb);
    PolyRelation r;
    relate_half(ca, cb, r.int_int, r.a_in_b_ext, r.b_in_a_ext, r.boundaries_meet);
    relate_half(cb, ca, r.int_int, r.b_in_a_ext, r.a_in_b_ext, r.boundaries_meet);
    return r;
}

bool segment_meets_interior(const Point2& a, const Point2& b,
                            const Polygon& poly) {
    if (a == b) return locate(a, poly) == Location::Inside;
    bool touched = false;
    std::vector<Point2> pts = split_points(a, b, poly, touched);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        if (locate(midpoint(pts[k], pts[k + 1]), poly) == Location::Inside)
            return true;
    return false;
}

bool direction_enters(const Point2& p, const Point2& d, const Polygon& poly) {
    Location loc = locate(p, poly);
    if (loc != Location::OnBoundary) return loc == Location::Inside;
    int s = sgn(signed_area2(poly));
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (poly[i] != p) continue;
        // Vertex case: interior cone runs from the outgoing edge
        // counter-clockwise to the incoming edge (for ccw orientation).
        Point2 e1 = sub(poly[(i + 1) % n], p);
        Point2 e2 = sub(poly[(i + n - 1) % n], p);
        if (s < 0) std::swap(e1, e2);
        int turn = sgn(cross(e1, e2));
        if (turn > 0) return sgn(cross(e1, d)) > 0 && sgn(cross(d, e2)) > 0;
        if (turn == 0 && sgn(dot(e1, e2)) < 0) return sgn(cross(e1, d)) > 0;
        return !(sgn(cross(e2, d)) >= 0 && sgn(cross(d, e1)) >= 0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % n];
        if (on_segment(p, a, b)) return sgn(cross(sub(b, a), d)) * s > 0;
    }
    return false;
}

}  // namespace pdc
