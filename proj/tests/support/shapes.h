#pragma once

#include "pdcover/geom/region.h"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace pdc::test {

inline Polygon poly(std::initializer_list<std::pair<double, double>> pts) {
    Polygon out;
    for (auto [x, y] : pts) out.push_back({snap(x, 1024), snap(y, 1024)});
    return out;
}

/// Regular k-gon snapped to a 1/1024 grid; theta keeps edges off vertical.
inline Polygon regular(double cx, double cy, double r, int k = 16, double theta = 0.1) {
    Polygon out;
    for (int i = 0; i < k; ++i) {
        double a = theta + 2 * std::numbers::pi * i / k;
        out.push_back({snap(cx + r * std::cos(a), 1024), snap(cy + r * std::sin(a), 1024)});
    }
    return out;
}

inline Region disk(int id, double cx, double cy, double r, Scalar w = 1, int k = 16) {
    return make_region(id, w, regular(cx, cy, r, k));
}

/// Square rotated by 45 degrees (no vertical edges).
inline Region diamond(int id, double cx, double cy, double r, Scalar w = 1) {
    return make_region(id, w, poly({{cx - r, cy}, {cx, cy - r}, {cx + r, cy}, {cx, cy + r}}));
}

/// Thin rectangle along direction (dx, dy) with half-length len and half-width wid.
inline Region bar(int id, double cx, double cy, double dx, double dy, double len, double wid) {
    double n = std::hypot(dx, dy);
    dx /= n;
    dy /= n;
    double px = -dy, py = dx;
    return make_region(id, 1,
                       poly({{cx - dx * len - px * wid, cy - dy * len - py * wid},
                             {cx + dx * len - px * wid, cy + dy * len - py * wid},
                             {cx + dx * len + px * wid, cy + dy * len + py * wid},
                             {cx - dx * len + px * wid, cy - dy * len + py * wid}}));
}

/// Independent orientation sign, written out from the determinant.
inline int orient_sign(const Point2& a, const Point2& b, const Point2& c) {
    Scalar d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

/// Proper crossings between two closed polylines, by brute force over edge pairs.
inline int brute_crossings(const Polygon& a, const Polygon& b) {
    int count = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Point2 &p = a[i], &q = a[(i + 1) % a.size()];
            const Point2 &r = b[j], &s = b[(j + 1) % b.size()];
            if (orient_sign(p, q, r) * orient_sign(p, q, s) < 0 &&
                orient_sign(r, s, p) * orient_sign(r, s, q) < 0)
                ++count;
        }
    return count;
}

/// Shoelace area, absolute.
inline Scalar shoelace(const Polygon& p) {
    Scalar s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Point2 &a = p[i], &b = p[(i + 1) % p.size()];
        s += a.x * b.y - a.y * b.x;
    }
    s /= 2;
    return s < 0 ? Scalar(-s) : s;
}

/// Convex clipping of `subject` by the convex ccw polygon `clip`.
inline Polygon clip_convex(const Polygon& subject, const Polygon& clip) {
    Polygon out = subject;
    for (std::size_t i = 0; i < clip.size() && !out.empty(); ++i) {
        const Point2 &a = clip[i], &b = clip[(i + 1) % clip.size()];
        Polygon in = out;
        out.clear();
        for (std::size_t k = 0; k < in.size(); ++k) {
            const Point2 &p = in[k], &q = in[(k + 1) % in.size()];
            int sp = orient_sign(a, b, p), sq = orient_sign(a, b, q);
            if (sp >= 0) out.push_back(p);
            if (sp * sq < 0) {
                Scalar t = ((b.x - a.x) * (a.y - p.y) - (b.y - a.y) * (a.x - p.x)) /
                           ((b.x - a.x) * (q.y - p.y) - (b.y - a.y) * (q.x - p.x));
                out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
            }
        }
    }
    return out;
}

}  // namespace pdc::test
