#include "pdcover/geom/errors.h"
#include "pdcover/partition/subdivision.h"
#include "pdcover/separator/separator.h"

#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace pdc {

struct SeparatorStream::State {
    std::vector<Region> regions;
    int budget = 0;
    long cap = 0;
    long expanded = 0;
    CurveSet set;
    PlanarGraph g;
    std::vector<std::vector<int>> out;  ///< outgoing half-edges per vertex
    std::vector<int> key;               ///< per edge: -1 vertical, else piece id
    std::set<std::string> seen;
    std::vector<std::vector<int>> region_faces;
    std::vector<std::vector<int>> face_edges;     ///< half-edges per face
    std::vector<std::vector<int>> point_faces;    ///< faces whose closure holds the point
    std::vector<Polygon> face_polygons;
    SideClassification sides;

    // Depth-first search state.
    int start = -1;
    std::vector<int> path;       ///< half-edges
    std::vector<int> cursor;     ///< next adjacency index per path vertex
    std::vector<int> runs;       ///< runs after each prefix
    std::vector<char> on_path;
    std::vector<int> to_start;   ///< per half-edge: fewest extra pieces back to start

    int step_cost(int h, int next) const {
        int k = key[next / 2];
        return k >= 0 && k != key[h / 2] ? 1 : 0;
    }

    /// Backward 0-1 BFS from the start over half-edges, ignoring simplicity.
    void compute_to_start() {
        const int H = static_cast<int>(g.origin.size());
        to_start.assign(H, INT32_MAX);
        std::deque<int> dq;
        for (int h = 0; h < H; ++h)
            if (g.dest(h) == start && g.origin[h] >= start) {
                to_start[h] = 0;
                dq.push_back(h);
            }
        while (!dq.empty()) {
            int h2 = dq.front();
            dq.pop_front();
            int u = g.origin[h2];
            if (u == start) continue;
            for (int out_h : out[u]) {
                int h = out_h ^ 1;  // arrives at u
                if (g.origin[h] < start) continue;
                int nd = to_start[h2] + step_cost(h, h2);
                if (nd < to_start[h]) {
                    to_start[h] = nd;
                    if (step_cost(h, h2) == 0)
                        dq.push_front(h);
                    else
                        dq.push_back(h);
                }
            }
        }
    }

    int current() const { return path.empty() ? start : g.dest(path.back()); }

    int runs_after(int h) const {
        int prev = runs.empty() ? 0 : runs.back();
        int k = key[h / 2];
        if (k < 0) return prev;
        if (path.empty() || key[path.back() / 2] != k) return prev + 1;
        return prev;
    }

    std::optional<SeparatorCurve> close(int h) {
        std::vector<int> cyc = path;
        cyc.push_back(h);
        if (cyc.size() < 3) return std::nullopt;
        int total = runs_after(h);
        int k0 = key[cyc.front() / 2];
        if (k0 >= 0 && k0 == key[cyc.back() / 2] && total > 1) --total;
        if (total > budget) return std::nullopt;
        Scalar a2 = 0;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const Point2& p = g.points[g.origin[cyc[i]]];
            const Point2& q = g.points[g.dest(cyc[i])];
            a2 += p.x * q.y - q.x * p.y;
        }
        if (a2 <= 0) return std::nullopt;  // each cycle is met once per direction
        SeparatorCurve c = curve_from_cycle(regions, set, g, cyc, false);
        if (c.complexity() > budget) return std::nullopt;
        if (!seen.insert(encoding_key(encode(c))).second) return std::nullopt;
        if (static_cast<long>(seen.size()) > cap)
            throw Error(ErrorKind::BudgetTooLarge, "more separators than the cap");
        classify_faces(cyc);
        return c;
    }

    void classify_faces(const std::vector<int>& cyc) {
        std::vector<char> cut(g.edge_count(), 0), in(g.face_count, 0);
        for (int h : cyc) cut[h / 2] = 1;
        std::vector<int> stack;
        for (int h : cyc)
            if (!in[g.face[h]]) {
                in[g.face[h]] = 1;
                stack.push_back(g.face[h]);
            }
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (int h : face_edges[f]) {
                int o = g.face[h ^ 1];
                if (!cut[h / 2] && !in[o]) {
                    in[o] = 1;
                    stack.push_back(o);
                }
            }
        }
        sides = {};
        for (int i = 0; i < static_cast<int>(region_faces.size()); ++i) {
            int k = 0;
            for (int f : region_faces[i]) k += in[f];
            if (k == static_cast<int>(region_faces[i].size()))
                sides.inside.push_back(i);
            else if (k == 0)
                sides.outside.push_back(i);
            else
                sides.crossing.push_back(i);
        }
        for (int i = 0; i < static_cast<int>(point_faces.size()); ++i) {
            bool any_in = false, any_out = point_faces[i].empty();
            for (int f : point_faces[i]) (in[f] ? any_in : any_out) = true;
            if (any_in) sides.inside_points.push_back(i);
            if (any_out) sides.outside_points.push_back(i);
        }
    }

    std::optional<SeparatorCurve> advance() {
        while (true) {
            if (start < 0 || (path.empty() && cursor.empty())) {
                if (++start >= g.vertex_count) return std::nullopt;
                cursor.assign(1, 0);
                on_path.assign(g.vertex_count, 0);
                on_path[start] = 1;
                compute_to_start();
            }
            int u = current();
            int& idx = cursor.back();
            if (idx >= static_cast<int>(out[u].size())) {
                cursor.pop_back();
                if (!path.empty()) {
                    on_path[g.dest(path.back())] = 0;
                    path.pop_back();
                    runs.pop_back();
                }
                continue;
            }
            int h = out[u][idx++];
            int v = g.dest(h);
            if (v == start) {
                if (auto c = close(h)) return c;
                continue;
            }
            if (v < start || on_path[v]) continue;
            int r = runs_after(h);
            // The closing merge with the first piece saves at most one.
            if (to_start[h] == INT32_MAX || r + to_start[h] > budget + 1) continue;
            ++expanded;
            path.push_back(h);
            runs.push_back(r);
            cursor.push_back(0);
            on_path[v] = 1;
        }
    }
};

SeparatorStream::SeparatorStream(const std::vector<Region>& regions, int budget, long cap)
    : state_(std::make_unique<State>()) {
    State& s = *state_;
    s.regions = regions;
    s.budget = budget;
    s.cap = cap;
    if (budget < 2 || regions.empty()) {
        s.start = 0;  // empty graph: the stream ends at once
        return;
    }
    s.set = curves_of_regions(regions, true);
    std::vector<int> all(regions.size());
    std::iota(all.begin(), all.end(), 0);
    Partition part = decompose(s.set, all, frame_of(s.set));
    SubdivisionGraph sg = subdivision_graph(part, regions, false);
    s.g = std::move(sg.graph);
    s.region_faces = std::move(sg.region_faces);
    s.face_edges.assign(s.g.face_count, {});
    for (int h = 0; h < static_cast<int>(s.g.origin.size()); ++h) s.face_edges[s.g.face[h]].push_back(h);
    s.face_polygons.assign(s.g.face_count, {});
    for (int f = 0; f < s.g.face_count; ++f)
        if (sg.face_cell[f] >= 0) s.face_polygons[f] = part.cells[sg.face_cell[f]].boundary;
    s.out.assign(s.g.vertex_count, {});
    for (int h = 0; h < static_cast<int>(s.g.origin.size()); ++h) s.out[s.g.origin[h]].push_back(h);
    std::map<std::pair<int, int>, int> ids;
    const BBox frame = frame_of(s.set);
    const int curves = static_cast<int>(s.set.curves.size());
    for (int e = 0; e < s.g.edge_count(); ++e) {
        const Point2& p = s.g.points[s.g.origin[2 * e]];
        const Point2& q = s.g.points[s.g.origin[2 * e + 1]];
        int tag = s.g.edge_tag[e];
        std::pair<int, int> k;
        if (p.x == q.x) {
            s.key.push_back(-1);
            continue;
        }
        if (tag >= 0 && tag < curves)
            k = {s.set.curves[tag].region_id, s.set.curves[tag].piece};
        else
            k = {kFrameRegion, p.y == frame.ymin ? 0 : 1};
        auto [it, fresh] = ids.emplace(k, static_cast<int>(ids.size()));
        s.key.push_back(it->second);
    }
}

SeparatorStream::~SeparatorStream() = default;
SeparatorStream::SeparatorStream(SeparatorStream&&) noexcept = default;
SeparatorStream& SeparatorStream::operator=(SeparatorStream&&) noexcept = default;

std::optional<SeparatorCurve> SeparatorStream::next() {
    if (state_->g.vertex_count == 0) return std::nullopt;
    return state_->advance();
}

const SideClassification& SeparatorStream::sides() const { return state_->sides; }

void SeparatorStream::set_points(const std::vector<Point2>& points) {
    State& s = *state_;
    s.point_faces.assign(points.size(), {});
    for (std::size_t i = 0; i < points.size(); ++i)
        for (int f = 0; f < static_cast<int>(s.face_polygons.size()); ++f) {
            if (s.face_polygons[f].empty()) continue;
            if (locate(points[i], s.face_polygons[f]) != Location::Outside) s.point_faces[i].push_back(f);
        }
}

long SeparatorStream::expanded() const { return state_->expanded; }

SeparatorStream enumerate_separators(const std::vector<Region>& regions, int budget, long cap) {
    return SeparatorStream(regions, budget, cap);
}

}  // namespace pdc
