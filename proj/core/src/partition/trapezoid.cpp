#include "pdcover/partition/trapezoid.h"

#include "pdcover/geom/errors.h"
#include "pdcover/geom/overlay.h"
#include "pdcover/geom/random.h"

#include <algorithm>
#include <map>
#include <set>

namespace pdc {

namespace {

struct DBox {
    double xmin, ymin, xmax, ymax;
    bool meets(const DBox& o) const {
        return !(o.xmin > xmax || xmin > o.xmax || o.ymin > ymax || ymin > o.ymax);
    }
};

DBox dbox_of(const Point2& a, const Point2& b) {
    double ax = to_double(a.x), ay = to_double(a.y), bx = to_double(b.x), by = to_double(b.y);
    const double eps = 1e-9 * (1 + std::max({std::abs(ax), std::abs(ay), std::abs(bx), std::abs(by)}));
    return {std::min(ax, bx) - eps, std::min(ay, by) - eps, std::max(ax, bx) + eps,
            std::max(ay, by) + eps};
}

DBox dbox_of(const Polygon& poly) {
    DBox b = dbox_of(poly[0], poly[0]);
    for (const auto& p : poly) {
        DBox q = dbox_of(p, p);
        b.xmin = std::min(b.xmin, q.xmin);
        b.ymin = std::min(b.ymin, q.ymin);
        b.xmax = std::max(b.xmax, q.xmax);
        b.ymax = std::max(b.ymax, q.ymax);
    }
    return b;
}

/// Flattened segments of a curve set with double boxes for pruning.
struct SegmentIndex {
    struct Seg {
        int curve;
        Point2 a, b;
        DBox box;
    };
    std::vector<Seg> segs;
    std::vector<std::vector<int>> by_group;
    std::vector<DBox> group_box;

    explicit SegmentIndex(const CurveSet& set) {
        by_group.resize(set.groups());
        group_box.assign(set.groups(), DBox{1e300, 1e300, -1e300, -1e300});
        for (std::size_t c = 0; c < set.curves.size(); ++c) {
            const auto& v = set.curves[c].vertices;
            int g = set.curves[c].region_id;
            for (std::size_t k = 0; k + 1 < v.size(); ++k) {
                Seg s{static_cast<int>(c), v[k], v[k + 1], dbox_of(v[k], v[k + 1])};
                by_group[g].push_back(static_cast<int>(segs.size()));
                DBox& gb = group_box[g];
                gb.xmin = std::min(gb.xmin, s.box.xmin);
                gb.ymin = std::min(gb.ymin, s.box.ymin);
                gb.xmax = std::max(gb.xmax, s.box.xmax);
                gb.ymax = std::max(gb.ymax, s.box.ymax);
                segs.push_back(std::move(s));
            }
        }
    }

    bool group_meets(int g, const Polygon& cell, const DBox& cb) const {
        if (!group_box[g].meets(cb)) return false;
        for (int s : by_group[g])
            if (segs[s].box.meets(cb) && segment_meets_interior(segs[s].a, segs[s].b, cell))
                return true;
        return false;
    }
};

void fill_conflicts(const SegmentIndex& idx, const CurveSet& set, Trapezoid& cell,
                    const std::vector<int>& candidates) {
    DBox cb = dbox_of(cell.boundary);
    cell.conflicts.clear();
    cell.conflict_weight = 0;
    for (int g : candidates)
        if (idx.group_meets(g, cell.boundary, cb)) {
            cell.conflicts.push_back(g);
            cell.conflict_weight += set.weights[g];
        }
}

Trapezoid make_cell(const Overlay& ov, int face, const Partition& part) {
    const auto& he = ov.half_edges();
    const auto& f = ov.faces()[face];
    if (!f.holes.empty()) throw Error(ErrorKind::Degenerate, "decomposition cell with a hole");
    Trapezoid t;
    std::set<int> det;
    for (int h : ov.edge_cycle(f.outer)) {
        const Point2& a = ov.vertices()[he[h].origin].p;
        const Point2& b = ov.vertices()[ov.dest(h)].p;
        t.boundary.push_back(a);
        int tag = he[h].tags.empty() ? -1 : he[h].tags.front();
        t.edge_tags.push_back(tag);
        if (tag < 0) continue;
        if (part.is_wall_tag(tag)) {
            for (int c : part.wall_of(tag).curves) det.insert(c);
            continue;
        }
        for (int c : he[h].tags)
            if (!part.is_wall_tag(c)) det.insert(c);
        if (a.x > b.x) {
            if (t.top < 0) t.top = tag;
        } else if (t.bottom < 0) {
            t.bottom = tag;
        }
    }
    t.determining.assign(det.begin(), det.end());
    return t;
}

std::vector<OverlaySegment> frame_segments(const BBox& b) {
    Point2 p0{b.xmin, b.ymin}, p1{b.xmax, b.ymin}, p2{b.xmax, b.ymax}, p3{b.xmin, b.ymax};
    return {{p0, p1, -1, -1}, {p1, p2, -1, -1}, {p2, p3, -1, -1}, {p3, p0, -1, -1}};
}

bool enters_solid(const CurveSet& set, int g, const Point2& p, const Point2& d) {
    if (g >= static_cast<int>(set.solids.size()) || set.solids[g].empty()) return false;
    return direction_enters(p, d, set.solids[g]);
}

/// Nearest hit of the vertical ray from p in direction dir (+1 up, -1 down)
/// against the given segments; nullopt when nothing is hit.
std::optional<Scalar> shoot(const Point2& p, int dir,
                            const std::vector<std::pair<Point2, Point2>>& segs) {
    std::optional<Scalar> best;
    for (const auto& [u, v] : segs) {
        Scalar y;
        if (u.x == v.x) {
            if (u.x != p.x) continue;
            Scalar lo = std::min(u.y, v.y), hi = std::max(u.y, v.y);
            if (dir > 0 && lo > p.y) y = lo;
            else if (dir < 0 && hi < p.y) y = hi;
            else continue;
        } else {
            const Point2& l = u.x < v.x ? u : v;
            const Point2& r = u.x < v.x ? v : u;
            if (p.x < l.x || p.x > r.x) continue;
            y = y_at(l, r, p.x);
            if (sgn(y - p.y) != dir) continue;
        }
        if (!best || (dir > 0 ? y < *best : y > *best)) best = y;
    }
    return best;
}

/// Insert the pieces of group g lying inside the cell, with walls confined
/// to the cell. New walls are appended to part.walls.
std::vector<Trapezoid> insert_group(const SegmentIndex& idx, const CurveSet& set,
                                    Partition& part, const Trapezoid& cell, int g) {
    const Polygon& poly = cell.boundary;
    const std::size_t n = poly.size();
    DBox cb = dbox_of(poly);
    struct Kept {
        Point2 a, b;
        int curve;
    };
    std::vector<Kept> kept;
    for (int s : idx.by_group[g]) {
        const auto& seg = idx.segs[s];
        if (!seg.box.meets(cb)) continue;
        std::vector<Point2> pts{seg.a, seg.b};
        for (std::size_t k = 0; k < n; ++k) {
            SegmentHit h = intersect_segments(seg.a, seg.b, poly[k], poly[(k + 1) % n]);
            if (h.kind == SegmentRelation::Cross || h.kind == SegmentRelation::Touch) {
                pts.push_back(h.p);
            } else if (h.kind == SegmentRelation::Overlap) {
                pts.push_back(h.p);
                pts.push_back(h.q);
            }
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            Point2 mid{(pts[k].x + pts[k + 1].x) / 2, (pts[k].y + pts[k + 1].y) / 2};
            if (locate(mid, poly) == Location::Inside) kept.push_back({pts[k], pts[k + 1], seg.curve});
        }
    }
    std::map<Point2, std::set<int>> events;
    for (const auto& k : kept) {
        for (const Point2* p : {&k.a, &k.b}) {
            const auto& cv = set.curves[k.curve].vertices;
            if (*p == cv.front() || *p == cv.back() || locate(*p, poly) == Location::OnBoundary)
                events[*p].insert(k.curve);
        }
    }
    std::vector<std::pair<Point2, Point2>> targets;
    for (std::size_t k = 0; k < n; ++k) targets.push_back({poly[k], poly[(k + 1) % n]});
    for (const auto& k : kept) targets.push_back({k.a, k.b});

    std::vector<OverlaySegment> segs;
    for (std::size_t k = 0; k < n; ++k) segs.push_back({poly[k], poly[(k + 1) % n], -1, cell.edge_tags[k]});
    for (const auto& k : kept) segs.push_back({k.a, k.b, -1, k.curve});
    for (const auto& [p, curves] : events) {
        bool on_boundary = locate(p, poly) == Location::OnBoundary;
        for (int dir : {1, -1}) {
            Point2 d{0, dir};
            if (on_boundary && !direction_enters(p, d, poly)) continue;
            if (enters_solid(set, g, p, d)) continue;
            auto y = shoot(p, dir, targets);
            if (!y) throw Error(ErrorKind::Degenerate, "wall escapes its cell");
            Wall w{p, {p.x, *y}, std::vector<int>(curves.begin(), curves.end()), dir > 0};
            int tag = part.curve_count + static_cast<int>(part.walls.size());
            part.walls.push_back(w);
            segs.push_back({w.anchor, w.end, -1, tag});
        }
    }
    Overlay ov(segs);
    std::vector<Trapezoid> out;
    for (int f = 0; f < static_cast<int>(ov.faces().size()); ++f) {
        if (ov.faces()[f].unbounded) continue;
        out.push_back(make_cell(ov, f, part));
        out.back().level = cell.level + 1;
    }
    return out;
}

/// Split a heavy cell until every piece is within budget, inserting at each
/// step the conflict group that leaves the least estimated work.
void refine(const SegmentIndex& idx, const CurveSet& set, Partition& part,
            Trapezoid cell, std::vector<Trapezoid>& out) {
    std::vector<Trapezoid> stack{std::move(cell)};
    while (!stack.empty()) {
        Trapezoid t = std::move(stack.back());
        stack.pop_back();
        if (t.conflict_weight <= part.budget) {
            out.push_back(std::move(t));
            continue;
        }
        int best = -1;
        Scalar best_score;
        std::size_t best_cells = 0;
        const std::size_t wall_mark = part.walls.size();
        for (int g : t.conflicts) {
            std::vector<int> rest;
            for (int o : t.conflicts)
                if (o != g) rest.push_back(o);
            auto subs = insert_group(idx, set, part, t, g);
            part.walls.resize(wall_mark);
            Scalar score = 0;
            for (auto& s : subs) {
                fill_conflicts(idx, set, s, rest);
                Scalar load = part.budget > 0 ? Scalar(s.conflict_weight / part.budget) : Scalar(0);
                score += load > 1 ? load : Scalar(1);
            }
            if (best < 0 || score < best_score ||
                (score == best_score && subs.size() < best_cells)) {
                best = g;
                best_score = score;
                best_cells = subs.size();
            }
        }
        std::vector<int> rest;
        for (int o : t.conflicts)
            if (o != best) rest.push_back(o);
        auto subs = insert_group(idx, set, part, t, best);
        ++part.insertions;
        for (auto& s : subs) {
            fill_conflicts(idx, set, s, rest);
            stack.push_back(std::move(s));
        }
    }
}

}  // namespace

Scalar CurveSet::total_weight() const {
    Scalar w = 0;
    for (const auto& x : weights) w += x;
    return w;
}

CurveSet curves_of_regions(const std::vector<Region>& regions, bool protect) {
    CurveSet set;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        for (auto piece : regions[i].monotone_pieces) {
            piece.region_id = static_cast<int>(i);
            set.curves.push_back(std::move(piece));
        }
        set.weights.push_back(regions[i].weight);
        set.solids.push_back(protect ? regions[i].boundary : Polygon{});
    }
    return set;
}

BBox frame_of(const CurveSet& set) {
    bool first = true;
    BBox b{0, 0, 1, 1};
    auto add = [&](const Point2& p) {
        if (first) {
            b = {p.x, p.y, p.x, p.y};
            first = false;
            return;
        }
        b.xmin = std::min(b.xmin, p.x);
        b.ymin = std::min(b.ymin, p.y);
        b.xmax = std::max(b.xmax, p.x);
        b.ymax = std::max(b.ymax, p.y);
    };
    for (const auto& c : set.curves)
        for (const auto& p : c.vertices) add(p);
    for (const auto& s : set.solids)
        for (const auto& p : s) add(p);
    Scalar margin = std::max(b.xmax - b.xmin, b.ymax - b.ymin) / 8 + 1;
    return {b.xmin - margin, b.ymin - margin, b.xmax + margin, b.ymax + margin};
}

Partition decompose(const CurveSet& set, const std::vector<int>& groups, const BBox& bbox) {
    Partition part;
    part.bbox = bbox;
    part.curve_count = static_cast<int>(set.curves.size());
    part.sample = groups;
    std::sort(part.sample.begin(), part.sample.end());
    part.total_weight = set.total_weight();
    std::vector<char> selected(set.groups(), 0);
    for (int g : groups) selected[g] = 1;

    SegmentIndex idx(set);
    std::vector<int> sel_segs;
    for (int g : part.sample)
        for (int s : idx.by_group[g]) sel_segs.push_back(s);

    // Events: curve endpoints and contacts between distinct curves.
    std::map<Point2, std::set<int>> events;
    for (int g : part.sample)
        for (std::size_t c = 0; c < set.curves.size(); ++c)
            if (set.curves[c].region_id == g) {
                events[set.curves[c].vertices.front()].insert(static_cast<int>(c));
                events[set.curves[c].vertices.back()].insert(static_cast<int>(c));
            }
    std::sort(sel_segs.begin(), sel_segs.end(), [&](int a, int b) {
        return idx.segs[a].box.xmin < idx.segs[b].box.xmin;
    });
    for (std::size_t i = 0; i < sel_segs.size(); ++i) {
        const auto& s = idx.segs[sel_segs[i]];
        for (std::size_t j = i + 1; j < sel_segs.size(); ++j) {
            const auto& t = idx.segs[sel_segs[j]];
            if (t.box.xmin > s.box.xmax) break;
            if (s.curve == t.curve || !s.box.meets(t.box)) continue;
            SegmentHit h = intersect_segments(s.a, s.b, t.a, t.b);
            if (h.kind == SegmentRelation::Disjoint) continue;
            events[h.p].insert({s.curve, t.curve});
            if (h.kind == SegmentRelation::Overlap) events[h.q].insert({s.curve, t.curve});
        }
    }

    std::vector<std::pair<Point2, Point2>> targets;
    for (int s : sel_segs) targets.push_back({idx.segs[s].a, idx.segs[s].b});
    std::vector<OverlaySegment> segs = frame_segments(bbox);
    for (int s : sel_segs) segs.push_back({idx.segs[s].a, idx.segs[s].b, -1, idx.segs[s].curve});
    for (const auto& [p, curves] : events) {
        for (int dir : {1, -1}) {
            Point2 d{0, dir};
            bool blocked = false;
            for (int g : part.sample)
                if (enters_solid(set, g, p, d)) { blocked = true; break; }
            if (blocked) continue;
            Scalar y = dir > 0 ? bbox.ymax : bbox.ymin;
            if (auto hit = shoot(p, dir, targets)) y = *hit;
            Wall w{p, {p.x, y}, std::vector<int>(curves.begin(), curves.end()), dir > 0};
            int tag = part.curve_count + static_cast<int>(part.walls.size());
            part.walls.push_back(w);
            segs.push_back({w.anchor, w.end, -1, tag});
        }
    }
    Overlay ov(segs);
    std::vector<int> others;
    for (int g = 0; g < set.groups(); ++g)
        if (!selected[g]) others.push_back(g);
    for (int f = 0; f < static_cast<int>(ov.faces().size()); ++f) {
        if (ov.faces()[f].unbounded) continue;
        Trapezoid t = make_cell(ov, f, part);
        fill_conflicts(idx, set, t, others);
        part.cells.push_back(std::move(t));
    }
    part.first_level_cells = static_cast<int>(part.cells.size());
    return part;
}

Partition trapezoidal_decomposition(const std::vector<PolyCurve>& curves, const BBox& bbox) {
    CurveSet set;
    std::vector<int> all;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        PolyCurve pc = curves[c];
        pc.region_id = static_cast<int>(c);
        set.curves.push_back(std::move(pc));
        set.weights.push_back(1);
        all.push_back(static_cast<int>(c));
    }
    set.solids.resize(curves.size());
    return decompose(set, all, bbox);
}

Partition sample_partition(const CurveSet& set, long r, std::uint64_t seed,
                           const SampleConfig& cfg, std::optional<BBox> bbox) {
    if (r < 1) throw Error(ErrorKind::InvalidInput, "r must be at least 1");
    const BBox frame = bbox ? *bbox : frame_of(set);
    const Scalar total = set.total_weight();
    const double rate = to_double(cfg.c) * static_cast<double>(r) /
                        std::max(to_double(total), 1e-300);
    SegmentIndex idx(set);
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<int> sample;
        for (int g = 0; g < set.groups(); ++g) {
            double p = std::min(1.0, rate * to_double(set.weights[g]));
            if (rng.uniform() < p) sample.push_back(g);
        }
        Partition part = decompose(set, sample, frame);
        part.budget = total / Scalar(r);
        std::vector<Trapezoid> cells;
        for (auto& t : part.cells) {
            if (t.conflict_weight <= part.budget) cells.push_back(std::move(t));
            else refine(idx, set, part, std::move(t), cells);
        }
        part.cells = std::move(cells);
        part.retries = attempt;
        if (verify_partition(set, part).ok()) return part;
    }
    throw Error(ErrorKind::SamplingFailed, "no compliant partition after retries");
}

std::vector<int> cell_conflicts(const CurveSet& set, const Polygon& cell,
                                const std::vector<int>& candidates) {
    SegmentIndex idx(set);
    Trapezoid t;
    t.boundary = cell;
    fill_conflicts(idx, set, t, candidates);
    return t.conflicts;
}

PartitionCheck verify_partition(const CurveSet& set, const Partition& part) {
    PartitionCheck out;
    SegmentIndex idx(set);
    std::vector<int> all(set.groups());
    for (int g = 0; g < set.groups(); ++g) all[g] = g;
    out.within_budget = true;
    for (const auto& cell : part.cells) {
        out.area_sum += area(cell.boundary);
        Trapezoid t;
        t.boundary = cell.boundary;
        fill_conflicts(idx, set, t, all);
        out.max_conflict_weight = std::max(out.max_conflict_weight, t.conflict_weight);
        if (t.conflict_weight > part.budget) out.within_budget = false;
    }
    const BBox& b = part.bbox;
    out.tiles = out.area_sum == (b.xmax - b.xmin) * (b.ymax - b.ymin);
    return out;
}

}  // namespace pdc
