#include "pdcover/partition/cycle_separator.h"

#include "pdcover/geom/errors.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace pdc {

namespace {

/// Faces left of the cycle, reached without crossing a cycle edge.
/// Returns false when both sides of some cycle edge are reached.
bool flood_sides(const PlanarGraph& g, const std::vector<int>& cyc, std::vector<char>& side) {
    std::vector<char> cut(g.edge_count(), 0);
    for (int h : cyc) cut[h / 2] = 1;
    std::vector<std::vector<int>> face_edges(g.face_count);
    for (int h = 0; h < static_cast<int>(g.origin.size()); ++h) face_edges[g.face[h]].push_back(h);
    side.assign(g.face_count, 0);
    std::queue<int> q;
    for (int h : cyc)
        if (!side[g.face[h]]) {
            side[g.face[h]] = 1;
            q.push(g.face[h]);
        }
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int h : face_edges[f]) {
            if (cut[h / 2]) continue;
            int o = g.face[g.twin(h)];
            if (!side[o]) {
                side[o] = 1;
                q.push(o);
            }
        }
    }
    for (int h : cyc)
        if (side[g.face[g.twin(h)]]) return false;
    return true;
}

bool simple_cycle(const PlanarGraph& g, const std::vector<int>& cyc) {
    if (cyc.size() < 3) return false;
    std::set<int> seen;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
        if (g.dest(cyc[k]) != g.origin[cyc[(k + 1) % cyc.size()]]) return false;
        if (!seen.insert(g.origin[cyc[k]]).second) return false;
    }
    return true;
}

/// Cycle half-edges (S on the left) extracted from a face set whose
/// boundary is one simple cycle.
std::vector<int> boundary_of(const PlanarGraph& g, const std::vector<char>& S) {
    std::map<int, int> out_of;
    int start = -1;
    for (int h = 0; h < static_cast<int>(g.origin.size()); ++h)
        if (S[g.face[h]] && !S[g.face[g.twin(h)]]) {
            out_of[g.origin[h]] = h;
            if (start < 0) start = h;
        }
    std::vector<int> cyc;
    if (start < 0) return cyc;
    int h = start;
    do {
        cyc.push_back(h);
        auto it = out_of.find(g.dest(h));
        if (it == out_of.end()) return {};
        h = it->second;
    } while (h != start && cyc.size() <= out_of.size());
    return cyc;
}

struct Repairer {
    const PlanarGraph& g;
    const std::vector<Scalar>& w;
    Scalar total;
    std::vector<std::vector<int>> walks;
    std::vector<char> walk_simple;

    Repairer(const PlanarGraph& graph, const std::vector<Scalar>& weights, const Scalar& t)
        : g(graph), w(weights), total(t), walks(graph.face_count), walk_simple(graph.face_count, 1) {
        for (int h : g.face_starts()) {
            int f = g.face[h];
            walks[f] = g.face_walk(h);
            std::set<int> seen;
            for (int x : walks[f])
                if (!seen.insert(g.origin[x]).second) walk_simple[f] = 0;
        }
    }

    /// Move single faces from the heavy side until both sides are within
    /// 2/3 of the total. Returns false when stuck.
    bool run(std::vector<char>& S, int& moves) const {
        const Scalar limit = total * 2 / 3;
        const int E = g.edge_count();
        auto on = [&](int e) { return S[g.face[2 * e]] != S[g.face[2 * e + 1]]; };
        std::vector<int> deg(g.vertex_count, 0);
        for (int e = 0; e < E; ++e)
            if (on(e)) {
                ++deg[g.origin[2 * e]];
                ++deg[g.origin[2 * e + 1]];
            }
        Scalar ws = 0;
        for (int f = 0; f < g.face_count; ++f)
            if (S[f]) ws += w[f];
        std::vector<int> stamp(g.face_count, -1);
        for (int iter = 0;; ++iter) {
            Scalar wt = total - ws;
            if (ws <= limit && wt <= limit) return true;
            const char heavy = ws > limit ? 1 : 0;
            int best = -1, best_gain = 0;
            for (int e = 0; e < E; ++e) {
                if (!on(e)) continue;
                for (int h : {2 * e, 2 * e + 1}) {
                    int f = g.face[h];
                    if (S[f] != heavy || stamp[f] == iter || !walk_simple[f]) continue;
                    stamp[f] = iter;
                    const auto& wk = walks[f];
                    const int k = static_cast<int>(wk.size());
                    int count = 0, starts = 0, i0 = -1;
                    for (int i = 0; i < k; ++i) {
                        bool a = on(wk[i] / 2), b = on(wk[(i + k - 1) % k] / 2);
                        count += a;
                        if (a && !b) {
                            ++starts;
                            i0 = i;
                        }
                    }
                    if (count == 0 || count == k || starts != 1) continue;
                    // Vertices strictly off the arc must be off the cycle.
                    bool ok = true;
                    for (int i = (i0 + count + 1) % k, c = 0; c < k - count - 1; ++c, i = (i + 1) % k)
                        if (deg[g.origin[wk[i]]] != 0) { ok = false; break; }
                    if (!ok) continue;
                    int gain = count - (k - count);
                    if (best < 0 || gain > best_gain ||
                        (gain == best_gain && w[f] > w[best])) {
                        best = f;
                        best_gain = gain;
                    }
                }
            }
            if (best < 0) return false;
            for (int h : walks[best]) {
                if (on(h / 2)) {
                    --deg[g.origin[h]];
                    --deg[g.dest(h)];
                } else {
                    ++deg[g.origin[h]];
                    ++deg[g.dest(h)];
                }
            }
            S[best] = !S[best];
            ws += S[best] ? w[best] : -w[best];
            ++moves;
        }
    }
};

/// BFS spanning tree over an edge list; returns parent edge per vertex.
struct Tree {
    std::vector<int> parent_vertex, parent_edge, depth;
};

Tree bfs_tree(int n, const std::vector<std::pair<int, int>>& edges,
              const std::vector<std::vector<int>>& adj, int root) {
    Tree t{std::vector<int>(n, -1), std::vector<int>(n, -1), std::vector<int>(n, -1)};
    std::queue<int> q;
    t.depth[root] = 0;
    q.push(root);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int e : adj[u]) {
            int v = edges[e].first == u ? edges[e].second : edges[e].first;
            if (t.depth[v] >= 0) continue;
            t.depth[v] = t.depth[u] + 1;
            t.parent_vertex[v] = u;
            t.parent_edge[v] = e;
            q.push(v);
        }
    }
    return t;
}

/// Vertex sequence of the fundamental cycle of non-tree edge (u, v).
std::vector<int> fundamental_cycle(const Tree& t, int u, int v) {
    std::vector<int> a{u}, b{v};
    while (t.depth[a.back()] > t.depth[b.back()]) a.push_back(t.parent_vertex[a.back()]);
    while (t.depth[b.back()] > t.depth[a.back()]) b.push_back(t.parent_vertex[b.back()]);
    while (a.back() != b.back()) {
        a.push_back(t.parent_vertex[a.back()]);
        b.push_back(t.parent_vertex[b.back()]);
    }
    b.pop_back();
    std::reverse(b.begin(), b.end());
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// Plane graph with tree/cotree bookkeeping: edges with the two faces
/// they separate, and face weights.
struct Weighted {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> faces_of;  ///< faces on the two sides
    std::vector<std::vector<int>> adj;
    std::vector<Scalar> face_weight;
};

struct Scored {
    Scalar worst;
    std::size_t length;
    std::vector<int> cycle;  ///< vertex sequence
};

/// Fundamental cycles of the BFS tree from root, scored by balance.
std::vector<Scored> fundamental_candidates(const Weighted& W, int root, const Scalar& total,
                                           int keep) {
    Tree t = bfs_tree(W.n, W.edges, W.adj, root);
    const int F = static_cast<int>(W.face_weight.size());
    std::vector<char> tree_edge(W.edges.size(), 0);
    for (int v = 0; v < W.n; ++v)
        if (t.parent_edge[v] >= 0) tree_edge[t.parent_edge[v]] = 1;
    std::vector<std::vector<int>> dual(F);
    for (std::size_t e = 0; e < W.edges.size(); ++e)
        if (!tree_edge[e]) {
            dual[W.faces_of[e].first].push_back(static_cast<int>(e));
            dual[W.faces_of[e].second].push_back(static_cast<int>(e));
        }
    std::vector<int> parent(F, -2), order;
    std::queue<int> q;
    parent[0] = -1;
    q.push(0);
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        order.push_back(f);
        for (int e : dual[f]) {
            int o = W.faces_of[e].first == f ? W.faces_of[e].second : W.faces_of[e].first;
            if (parent[o] != -2) continue;
            parent[o] = f;
            q.push(o);
        }
    }
    std::vector<Scalar> sub(F, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        sub[*it] += W.face_weight[*it];
        if (parent[*it] >= 0) sub[parent[*it]] += sub[*it];
    }
    std::vector<Scored> out;
    for (std::size_t e = 0; e < W.edges.size(); ++e) {
        if (tree_edge[e]) continue;
        auto [a, b] = W.faces_of[e];
        if (a == b) continue;
        int child = parent[a] == b ? a : (parent[b] == a ? b : -1);
        if (child < 0) continue;
        Scalar side = sub[child];
        Scalar rest = total - side;
        Scalar worst = std::max(side, rest);
        auto [u, v] = W.edges[e];
        if (u == v || t.depth[u] < 0 || t.depth[v] < 0) continue;
        std::size_t len = static_cast<std::size_t>(t.depth[u] + t.depth[v]) + 1;
        out.push_back({worst, len, {u, v}});
    }
    // Balanced and short first.
    const Scalar limit = total * 2 / 3;
    std::sort(out.begin(), out.end(), [&](const Scored& x, const Scored& y) {
        bool bx = x.worst <= limit, by = y.worst <= limit;
        if (bx != by) return bx;
        if (bx) return x.length < y.length;
        return x.worst < y.worst;
    });
    if (static_cast<int>(out.size()) > keep) out.resize(keep);
    for (auto& s : out) {
        s.cycle = fundamental_cycle(t, s.cycle[0], s.cycle[1]);
        s.length = s.cycle.size();
    }
    return out;
}

std::vector<int> pick_roots(const PlanarGraph& g, int count) {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj(g.vertex_count);
    for (int e = 0; e < g.edge_count(); ++e) {
        edges.push_back({g.origin[2 * e], g.origin[2 * e + 1]});
        adj[edges.back().first].push_back(e);
        adj[edges.back().second].push_back(e);
    }
    std::vector<int> roots{0};
    std::vector<int> best_dist(g.vertex_count, INT32_MAX);
    while (static_cast<int>(roots.size()) < std::min(count, g.vertex_count)) {
        Tree t = bfs_tree(g.vertex_count, edges, adj, roots.back());
        for (int v = 0; v < g.vertex_count; ++v)
            if (t.depth[v] >= 0) best_dist[v] = std::min(best_dist[v], t.depth[v]);
        int far = static_cast<int>(std::max_element(best_dist.begin(), best_dist.end()) - best_dist.begin());
        if (best_dist[far] == 0) break;
        roots.push_back(far);
    }
    return roots;
}

}  // namespace

CycleCheck check_cycle(const PlanarGraph& g, const std::vector<Scalar>& face_weights,
                       const std::vector<int>& half_edges) {
    CycleCheck c;
    c.simple = simple_cycle(g, half_edges);
    if (!c.simple) return c;
    std::vector<char> side;
    c.separates = flood_sides(g, half_edges, side);
    Scalar total = 0;
    for (int f = 0; f < g.face_count; ++f) {
        total += face_weights[f];
        if (side[f]) c.inside += face_weights[f];
    }
    c.outside = total - c.inside;
    c.balanced = c.separates && 3 * c.inside <= 2 * total && 3 * c.outside <= 2 * total;
    return c;
}

CycleSeparator cycle_separator(const PlanarGraph& g, const std::vector<Scalar>& face_weights,
                               const CycleSeparatorConfig& cfg) {
    if (static_cast<int>(face_weights.size()) != g.face_count)
        throw Error(ErrorKind::InvalidInput, "face weight count mismatch");
    Scalar total = 0;
    for (const auto& w : face_weights) {
        if (w < 0) throw Error(ErrorKind::InvalidInput, "negative face weight");
        total += w;
    }
    for (const auto& w : face_weights)
        if (3 * w > total) throw Error(ErrorKind::Unbalanced, "a face outweighs a third of the total");

    std::map<std::pair<int, int>, int> half_of;
    for (int h = 0; h < static_cast<int>(g.origin.size()); ++h) half_of[{g.origin[h], g.dest(h)}] = h;
    Repairer repairer(g, face_weights, total);

    // Star-triangulated copy: faces of length > 3 get a star vertex, each
    // sub-triangle inheriting w(f) / deg(f).
    Weighted T;
    T.n = g.vertex_count;
    std::vector<int> star_of(g.face_count, -1);
    std::vector<int> tface(g.origin.size(), -1);
    for (int f = 0; f < g.face_count; ++f) {
        const auto& wk = repairer.walks[f];
        if (wk.size() <= 3) {
            int id = static_cast<int>(T.face_weight.size());
            T.face_weight.push_back(face_weights[f]);
            for (int h : wk) tface[h] = id;
            continue;
        }
        star_of[f] = T.n++;
        const int base = static_cast<int>(T.face_weight.size());
        const int k = static_cast<int>(wk.size());
        for (int i = 0; i < k; ++i) {
            T.face_weight.push_back(face_weights[f] / Scalar(k));
            tface[wk[i]] = base + i;
        }
        for (int i = 0; i < k; ++i) {
            T.edges.push_back({star_of[f], g.origin[wk[i]]});
            T.faces_of.push_back({base + i, base + (i + k - 1) % k});
        }
    }
    // The dual tree is rooted at T face 0; make it the outer face's piece.
    for (int e = 0; e < g.edge_count(); ++e) {
        T.edges.push_back({g.origin[2 * e], g.origin[2 * e + 1]});
        T.faces_of.push_back({tface[2 * e], tface[2 * e + 1]});
    }
    T.adj.assign(T.n, {});
    for (std::size_t e = 0; e < T.edges.size(); ++e) {
        T.adj[T.edges[e].first].push_back(static_cast<int>(e));
        T.adj[T.edges[e].second].push_back(static_cast<int>(e));
    }
    Weighted G;
    G.n = g.vertex_count;
    G.face_weight = face_weights;
    for (int e = 0; e < g.edge_count(); ++e) {
        G.edges.push_back({g.origin[2 * e], g.origin[2 * e + 1]});
        G.faces_of.push_back({g.face[2 * e], g.face[2 * e + 1]});
    }
    G.adj.assign(G.n, {});
    for (std::size_t e = 0; e < G.edges.size(); ++e) {
        G.adj[G.edges[e].first].push_back(static_cast<int>(e));
        G.adj[G.edges[e].second].push_back(static_cast<int>(e));
    }

    // Lift a vertex cycle (possibly through star vertices) to half-edges of g.
    auto lift = [&](const std::vector<int>& vc) -> std::vector<int> {
        const std::size_t L = vc.size();
        if (L < 3) return {};
        std::vector<int> seq;
        for (std::size_t i = 0; i < L; ++i) {
            int v = vc[i];
            if (v < g.vertex_count) {
                seq.push_back(v);
                continue;
            }
            int f = static_cast<int>(std::find(star_of.begin(), star_of.end(), v) - star_of.begin());
            if (!repairer.walk_simple[f]) return {};
            int a = vc[(i + L - 1) % L], b = vc[(i + 1) % L];
            if (a >= g.vertex_count || b >= g.vertex_count || a == b) return {};
            const auto& wk = repairer.walks[f];
            const int k = static_cast<int>(wk.size());
            int pa = -1, pb = -1;
            for (int j = 0; j < k; ++j) {
                if (g.origin[wk[j]] == a) pa = j;
                if (g.origin[wk[j]] == b) pb = j;
            }
            int fwd = (pb - pa + k) % k;
            // Interior vertices of the shorter arc between a and b.
            if (fwd <= k - fwd) {
                for (int j = 1; j < fwd; ++j) seq.push_back(g.origin[wk[(pa + j) % k]]);
            } else {
                for (int j = 1; j < k - fwd; ++j) seq.push_back(g.origin[wk[(pa - j + k) % k]]);
            }
        }
        std::set<int> seen(seq.begin(), seq.end());
        if (seen.size() != seq.size() || seq.size() < 3) return {};
        std::vector<int> cyc;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            auto it = half_of.find({seq[i], seq[(i + 1) % seq.size()]});
            if (it == half_of.end()) return {};
            cyc.push_back(it->second);
        }
        return cyc;
    };

    std::vector<std::vector<int>> starts;
    for (int root : pick_roots(g, cfg.roots)) {
        for (auto& s : fundamental_candidates(T, root, total, cfg.candidates_per_tree))
            if (auto c = lift(s.cycle); !c.empty()) starts.push_back(std::move(c));
        for (auto& s : fundamental_candidates(G, root, total, cfg.candidates_per_tree))
            if (auto c = lift(s.cycle); !c.empty()) starts.push_back(std::move(c));
    }

    CycleSeparator best;
    bool found = false;
    auto consider = [&](std::vector<char> S) {
        int moves = 0;
        if (!repairer.run(S, moves)) return;
        if (g.outer_face >= 0 && S[g.outer_face])
            for (auto& x : S) x = !x;
        std::vector<int> cyc = boundary_of(g, S);
        if (!simple_cycle(g, cyc)) return;
        if (found && cyc.size() >= best.half_edges.size()) return;
        found = true;
        best.half_edges = cyc;
        best.inside = S;
        best.repair_moves = moves;
    };
    for (const auto& c : starts) {
        ++best.candidates;
        std::vector<char> S;
        if (!flood_sides(g, c, S)) continue;
        consider(std::move(S));
    }
    if (!found) {
        // Grow from a single face.
        for (int f = 0; f < g.face_count && !found; ++f) {
            if (!repairer.walk_simple[f] || f == g.outer_face) continue;
            std::vector<char> S(g.face_count, 0);
            S[f] = 1;
            ++best.candidates;
            consider(std::move(S));
        }
    }
    if (!found) throw Error(ErrorKind::Unbalanced, "no balanced simple cycle found");

    best.total = total;
    for (int h : best.half_edges) best.vertices.push_back(g.origin[h]);
    for (int f = 0; f < g.face_count; ++f)
        if (best.inside[f]) best.inside_weight += face_weights[f];
    best.outside_weight = total - best.inside_weight;
    best.c_sep = static_cast<double>(best.vertices.size()) /
                 std::sqrt(static_cast<double>(std::max(g.vertex_count, 1)));
    return best;
}

}  // namespace pdc
