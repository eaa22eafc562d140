#include "pdcover/halfspace3d/polytope.h"

#include "pdcover/geom/errors.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace pdc {

namespace {

/// Half-plane index for the angular sort: 0 for angles in [0, pi), 1 otherwise.
int half_of(const Scalar& u, const Scalar& w) { return (w > 0 || (w == 0 && u > 0)) ? 0 : 1; }

std::vector<int> order_ccw(const std::vector<Point3>& pts, std::vector<int> ids, const Point3& normal) {
    Point3 g{0, 0, 0};
    for (int i : ids) g = g + pts[i];
    g = Scalar(1, static_cast<long>(ids.size())) * g;
    Point3 u = pts[ids[0]] - g;
    Point3 w = cross(normal, u);
    auto coords = [&](int i) {
        Point3 d = pts[i] - g;
        return std::make_pair(dot(d, u), dot(d, w));
    };
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        auto [au, aw] = coords(a);
        auto [bu, bw] = coords(b);
        int ha = half_of(au, aw), hb = half_of(bu, bw);
        if (ha != hb) return ha < hb;
        return au * bw - aw * bu > 0;
    });
    return ids;
}

bool holds(const Halfspace3& h, const Point3& p) { return dot(h.normal, p) <= h.offset; }

}  // namespace

Polytope3 complement_polytope(const std::vector<Halfspace3>& planes) {
    Polytope3 poly;
    poly.planes = planes;
    const std::size_t m = planes.size();
    std::set<Point3> seen;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Point3 cij = cross(planes[i].normal, planes[j].normal);
            if (cij == Point3{0, 0, 0}) continue;
            for (std::size_t k = j + 1; k < m; ++k) {
                Scalar d = dot(planes[k].normal, cij);
                if (d == 0) continue;
                Point3 v = Scalar(1 / d) * (planes[i].offset * cross(planes[j].normal, planes[k].normal) +
                                            (planes[j].offset * cross(planes[k].normal, planes[i].normal) +
                                             planes[k].offset * cij));
                if (seen.count(v)) continue;
                bool inside = std::all_of(planes.begin(), planes.end(),
                                          [&](const Halfspace3& h) { return holds(h, v); });
                if (!inside) continue;
                seen.insert(v);
                poly.vertices.push_back(v);
            }
        }
    if (poly.vertices.size() < 4) throw Error(ErrorKind::Degenerate, "polytope has no interior");

    std::set<std::vector<int>> facet_sets;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<int> on;
        for (std::size_t v = 0; v < poly.vertices.size(); ++v)
            if (dot(planes[i].normal, poly.vertices[v]) == planes[i].offset) on.push_back(static_cast<int>(v));
        if (on.size() < 3) continue;
        if (!facet_sets.insert(on).second) continue;  // coincident plane
        Facet f;
        f.source = planes[i].id;
        f.plane = planes[i];
        f.vertices = order_ccw(poly.vertices, on, planes[i].normal);
        poly.facet_of[planes[i].id] = static_cast<int>(poly.facets.size());
        poly.facets.push_back(std::move(f));
    }

    // Half-edges straight from the facet cycles: each facet on the left.
    std::map<std::pair<int, int>, int> half;
    PlanarGraph& g = poly.skeleton;
    g.vertex_count = static_cast<int>(poly.vertices.size());
    for (const auto& f : poly.facets)
        for (std::size_t k = 0; k < f.vertices.size(); ++k) {
            int a = f.vertices[k], b = f.vertices[(k + 1) % f.vertices.size()];
            auto key = std::minmax(a, b);
            if (half.count({key.first, key.second})) continue;
            int e = static_cast<int>(poly.edges.size());
            poly.edges.push_back({key.first, key.second});
            half[{key.first, key.second}] = 2 * e;
            half[{key.second, key.first}] = 2 * e + 1;
            g.origin.push_back(key.first);
            g.origin.push_back(key.second);
        }
    g.next.assign(g.origin.size(), -1);
    g.face.assign(g.origin.size(), -1);
    for (std::size_t fi = 0; fi < poly.facets.size(); ++fi) {
        const auto& vs = poly.facets[fi].vertices;
        const std::size_t k = vs.size();
        for (std::size_t t = 0; t < k; ++t) {
            int h = half.at({vs[t], vs[(t + 1) % k]});
            int nh = half.at({vs[(t + 1) % k], vs[(t + 2) % k]});
            if (g.face[h] >= 0) throw Error(ErrorKind::Degenerate, "edge used twice by the facets");
            g.next[h] = nh;
            g.face[h] = static_cast<int>(fi);
        }
    }
    if (std::find(g.face.begin(), g.face.end(), -1) != g.face.end())
        throw Error(ErrorKind::Degenerate, "edge with a single facet");
    g.face_count = static_cast<int>(poly.facets.size());
    g.edge_tag.assign(g.edge_count(), -1);
    if (poly.euler_characteristic() != 2) throw Error(ErrorKind::Degenerate, "Euler check failed");

    Point3 c{0, 0, 0};
    for (const auto& v : poly.vertices) c = c + v;
    poly.interior = Scalar(1, static_cast<long>(poly.vertices.size())) * c;
    return poly;
}

ConeCores cone_cores_and_weights(const std::vector<Halfspace3>& hs, const std::vector<int>& q,
                                 const std::vector<int>& net, const Polytope3& poly, const Point3& o) {
    for (int i : q)
        if (hs[i].side(o) >= 0) throw Error(ErrorKind::ApexInside, "apex inside a reference halfspace");
    ConeCores out;
    out.facet_weights.assign(poly.facets.size(), 0);
    std::set<int> in_net(net.begin(), net.end());
    for (int i : q) {
        const Halfspace3& h = hs[i];
        out.total += h.weight;
        ConeCore3 core;
        core.source = i;
        auto it = poly.facet_of.find(h.id);
        if (in_net.count(i) && it != poly.facet_of.end()) {
            core.kind = ConeCore3::Kind::FacetCone;
            core.facet = it->second;
            core.facets = {it->second};
            out.facet_weights[it->second] += h.weight;
            out.cores.push_back(std::move(core));
            continue;
        }
        // The pyramid conv(o, f) meets the closed halfspace iff a vertex of f does.
        for (std::size_t f = 0; f < poly.facets.size(); ++f)
            for (int v : poly.facets[f].vertices)
                if (h.contains(poly.vertices[v])) {
                    core.facets.push_back(static_cast<int>(f));
                    break;
                }
        if (core.facets.empty()) {
            core.empty = true;
            for (std::size_t f = 0; f < poly.facets.size(); ++f)
                for (int v : poly.facets[f].vertices)
                    if (dot(h.normal, poly.vertices[v] - o) > 0) {
                        core.facets.push_back(static_cast<int>(f));
                        break;
                    }
        }
        Scalar share = h.weight / Scalar(static_cast<long>(core.facets.size()));
        for (int f : core.facets) out.facet_weights[f] += share;
        out.cores.push_back(std::move(core));
    }
    return out;
}

SkeletonSeparator skeleton_separator(const Polytope3& poly, const std::vector<Scalar>& facet_weights,
                                     const Scalar& delta, const CycleSeparatorConfig& cfg) {
    CycleSeparator cs = cycle_separator(poly.skeleton, facet_weights, cfg);
    SkeletonSeparator sep;
    sep.cycle = cs.vertices;
    sep.facet_inside = cs.inside;
    sep.inside_weight = cs.inside_weight;
    sep.outside_weight = cs.outside_weight;
    sep.total = cs.total;
    sep.c_sep = cs.c_sep;
    const Scalar cap = (Scalar(2, 3) + delta) * sep.total;
    sep.balanced = sep.inside_weight <= cap && sep.outside_weight <= cap;
    return sep;
}

int cone_side(const Polytope3& poly, const SkeletonSeparator& sep, const Point3& o, const Point3& x) {
    Point3 d = x - o;
    if (d == Point3{0, 0, 0}) return 0;
    std::optional<Scalar> best;
    bool in = false, out = false;
    for (std::size_t f = 0; f < poly.facets.size(); ++f) {
        const Halfspace3& h = poly.facets[f].plane;
        Scalar rate = dot(h.normal, d);
        if (rate <= 0) continue;
        Scalar t = (h.offset - dot(h.normal, o)) / rate;
        if (!best || t < *best) {
            best = t;
            in = out = false;
        }
        if (t == *best) (sep.facet_inside[f] ? in : out) = true;
    }
    if (in && out) return 0;
    return in ? 1 : -1;
}

ConeSplit evaluate_cone_split(const std::vector<Halfspace3>& hs, const ConeCores& cores,
                              const Polytope3& poly, const SkeletonSeparator& sep, const Point3& o) {
    ConeSplit out;
    std::set<std::pair<int, int>> cycle_edges;
    for (std::size_t k = 0; k < sep.cycle.size(); ++k) {
        int a = sep.cycle[k], b = sep.cycle[(k + 1) % sep.cycle.size()];
        cycle_edges.insert(std::minmax(a, b));
    }
    for (const auto& core : cores.cores) {
        const Halfspace3& h = hs[core.source];
        bool in = false, ext = false;
        for (int f : core.facets) (sep.facet_inside[f] ? in : ext) = true;
        if (core.kind == ConeCore3::Kind::FacetCone) {
            // The cone may not cut through the facet: no cycle edge is a chord
            // of it, and a ray through its centroid lands on its own side.
            const auto& vs = poly.facets[core.facet].vertices;
            std::set<int> on(vs.begin(), vs.end());
            std::set<std::pair<int, int>> boundary;
            for (std::size_t k = 0; k < vs.size(); ++k)
                boundary.insert(std::minmax(vs[k], vs[(k + 1) % vs.size()]));
            bool bad = false;
            for (const auto& e : cycle_edges)
                if (on.count(e.first) && on.count(e.second) && !boundary.count(e)) bad = true;
            Point3 g{0, 0, 0};
            for (int v : vs) g = g + poly.vertices[v];
            g = Scalar(1, static_cast<long>(vs.size())) * g;
            int side = cone_side(poly, sep, o, g);
            if (side != (sep.facet_inside[core.facet] ? 1 : -1)) bad = true;
            if (bad) ++out.net_core_violations;
        }
        if (in && ext) {
            out.core_crossing += h.weight;
            out.crossing.push_back(core.source);
            bool holds_vertex = std::any_of(sep.cycle.begin(), sep.cycle.end(),
                                            [&](int v) { return h.contains(poly.vertices[v]); });
            if (!holds_vertex) ++out.crossing_without_vertex;
        } else if (in) {
            out.core_inside += h.weight;
        } else {
            out.core_outside += h.weight;
        }
    }
    for (int v : sep.cycle) {
        Scalar closed = 0, open = 0;
        for (const auto& core : cores.cores) {
            const Halfspace3& h = hs[core.source];
            Scalar s = h.side(poly.vertices[v]);
            if (s >= 0) closed += h.weight;
            if (s > 0) open += h.weight;
        }
        out.stab_budget += closed;
        out.max_vertex_stab = std::max(out.max_vertex_stab, open);
    }
    return out;
}

}  // namespace pdc
