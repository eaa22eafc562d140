#include "pdcover/partition/subdivision.h"

#include "pdcover/geom/errors.h"
#include "pdcover/geom/overlay.h"

#include <algorithm>
#include <map>

namespace pdc {

std::vector<int> PlanarGraph::face_walk(int h) const {
    std::vector<int> out;
    int g = h;
    do {
        out.push_back(g);
        g = next[g];
    } while (g != h);
    return out;
}

std::vector<int> PlanarGraph::face_starts() const {
    std::vector<int> start(face_count, -1);
    for (int h = 0; h < static_cast<int>(origin.size()); ++h)
        if (start[face[h]] < 0) start[face[h]] = h;
    return start;
}

PlanarGraph planar_graph_from_rotation(const std::vector<std::vector<int>>& rotation) {
    PlanarGraph g;
    g.vertex_count = static_cast<int>(rotation.size());
    std::map<std::pair<int, int>, int> half;
    for (int u = 0; u < g.vertex_count; ++u)
        for (int v : rotation[u]) {
            if (u == v) throw Error(ErrorKind::InvalidInput, "loop in rotation system");
            if (half.count({u, v})) continue;
            if (std::find(rotation[v].begin(), rotation[v].end(), u) == rotation[v].end())
                throw Error(ErrorKind::InvalidInput, "rotation system is not symmetric");
            int e = g.edge_count();
            g.origin.push_back(u);
            g.origin.push_back(v);
            half[{u, v}] = 2 * e;
            half[{v, u}] = 2 * e + 1;
        }
    g.next.assign(g.origin.size(), -1);
    for (int h = 0; h < static_cast<int>(g.origin.size()); ++h) {
        int u = g.origin[h], v = g.dest(h);
        const auto& rot = rotation[v];
        auto it = std::find(rot.begin(), rot.end(), u);
        std::size_t pos = static_cast<std::size_t>(it - rot.begin());
        int w = rot[(pos + rot.size() - 1) % rot.size()];
        g.next[h] = half.at({v, w});
    }
    g.face.assign(g.origin.size(), -1);
    for (int h = 0; h < static_cast<int>(g.origin.size()); ++h) {
        if (g.face[h] >= 0) continue;
        for (int x : g.face_walk(h)) g.face[x] = g.face_count;
        ++g.face_count;
    }
    g.edge_tag.assign(g.edge_count(), -1);
    return g;
}

SubdivisionGraph subdivision_graph(const Partition& part, const std::vector<Region>& regions,
                                   bool weighted) {
    std::vector<OverlaySegment> segs;
    for (std::size_t c = 0; c < part.cells.size(); ++c) {
        const auto& poly = part.cells[c].boundary;
        for (std::size_t k = 0; k < poly.size(); ++k)
            segs.push_back({poly[k], poly[(k + 1) % poly.size()], static_cast<int>(c),
                            part.cells[c].edge_tags[k]});
    }
    Overlay ov(segs);
    SubdivisionGraph out;
    PlanarGraph& g = out.graph;
    g.vertex_count = static_cast<int>(ov.vertices().size());
    for (const auto& v : ov.vertices()) g.points.push_back(v.p);
    for (const auto& h : ov.half_edges()) {
        g.origin.push_back(h.origin);
        g.next.push_back(h.next);
        g.face.push_back(h.face);
    }
    g.edge_tag.assign(ov.num_edges(), -1);
    for (const auto& h : ov.half_edges())
        if (!h.tags.empty()) g.edge_tag[h.edge] = h.tags.front();
    g.face_count = static_cast<int>(ov.faces().size());
    g.outer_face = ov.unbounded_face();

    out.face_cell.assign(g.face_count, -1);
    std::vector<int> cell_face(part.cells.size(), -1);
    for (int f = 0; f < g.face_count; ++f) {
        const auto& label = ov.faces()[f].label;
        if (ov.faces()[f].unbounded) continue;
        if (label.size() != 1) throw Error(ErrorKind::Degenerate, "cells overlap or leave gaps");
        out.face_cell[f] = label[0];
        cell_face[label[0]] = f;
    }

    // A region meets a cell iff its boundary enters the open cell (a
    // conflict) or the cell lies inside it.
    out.face_weights.assign(g.face_count, 0);
    std::vector<std::vector<int>> meets(regions.size());
    std::vector<BBox> region_box;
    for (const auto& r : regions) region_box.push_back(bbox_of(r.boundary));
    for (std::size_t c = 0; c < part.cells.size(); ++c) {
        std::vector<char> hit(regions.size(), 0);
        for (int k : part.cells[c].conflicts)
            if (k >= 0 && k < static_cast<int>(regions.size())) hit[k] = 1;
        Point2 probe = face_interior_point(ov, cell_face[c]);
        BBox cb = bbox_of(part.cells[c].boundary);
        for (std::size_t r = 0; r < regions.size(); ++r) {
            if (!hit[r] && bbox_overlap(region_box[r], cb) &&
                locate(probe, regions[r]) == Location::Inside)
                hit[r] = 1;
            if (hit[r]) meets[r].push_back(cell_face[c]);
        }
    }
    for (std::size_t r = 0; r < regions.size(); ++r) {
        std::vector<int> faces = std::move(meets[r]);
        if (faces.empty()) throw Error(ErrorKind::InvalidInput, "region outside the partition frame");
        Scalar share = (weighted ? regions[r].weight : Scalar(1)) / Scalar(static_cast<long>(faces.size()));
        for (int f : faces) out.face_weights[f] += share;
        out.region_faces.push_back(std::move(faces));
    }
    return out;
}

}  // namespace pdc
