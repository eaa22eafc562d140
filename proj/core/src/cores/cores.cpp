#include "pdcover/cores/cores.h"

#include "pdcover/geom/errors.h"
#include "pdcover/geom/random.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace pdc {

namespace {

std::vector<char> region_faces(const CoreContext& ctx, int r) {
    const auto& faces = ctx.overlay.faces();
    std::vector<char> in(faces.size(), 0);
    for (std::size_t f = 0; f < faces.size(); ++f)
        in[f] = ctx.overlay.face_has(static_cast<int>(f), r) ? 1 : 0;
    return in;
}

std::vector<CoreRegion> initial_cores(const CoreContext& ctx) {
    std::vector<CoreRegion> cores(ctx.regions.size());
    for (std::size_t r = 0; r < cores.size(); ++r) {
        cores[r].source = static_cast<int>(r);
        cores[r].faces = region_faces(ctx, static_cast<int>(r));
    }
    return cores;
}

void validate_family(const std::vector<Region>& regions) {
    FamilyCheck pd = is_pseudodisk_family(regions);
    if (!pd.ok)
        throw Error(ErrorKind::NotPseudodisks,
                    "regions " + std::to_string(pd.first) + " and " +
                        std::to_string(pd.second) + " cross more than twice");
    FamilyCheck cf = is_cover_free(regions);
    if (!cf.ok)
        throw Error(ErrorKind::NotCoverFree,
                    "region " + std::to_string(cf.first) + " is covered");
}

/// Boundary half-edges of a face set (set on the left), in cycle order.
std::vector<int> boundary_walk(const CoreContext& ctx, const std::vector<char>& in) {
    std::vector<bool> b(in.begin(), in.end());
    std::vector<int> all;
    for (auto& c : face_set_boundary(ctx.overlay, b)) all.insert(all.end(), c.begin(), c.end());
    return all;
}

/// Remove the pusher's faces from every other core and tag new edges.
void apply_push(const CoreContext& ctx, std::vector<CoreRegion>& cores, int pusher,
                int step, const std::vector<int>& ranks) {
    const auto& he = ctx.overlay.half_edges();
    const CoreRegion& x = cores[pusher];
    for (std::size_t r = 0; r < cores.size(); ++r) {
        if (static_cast<int>(r) == pusher) continue;
        CoreRegion& c = cores[r];
        bool meets = false;
        for (std::size_t f = 0; f < c.faces.size(); ++f)
            if (c.faces[f] && x.faces[f]) { meets = true; break; }
        if (!meets) continue;
        // New boundary: edges with (core minus pusher) on one side and the
        // removed part on the other.
        for (int h = 0; h < static_cast<int>(he.size()); ++h) {
            int f = he[h].face, g = he[he[h].twin].face;
            if (c.faces[f] && !x.faces[f] && c.faces[g] && x.faces[g]) {
                GapTag tag;
                if (auto it = x.gaps.find(he[h].edge); it != x.gaps.end()) tag = it->second;
                tag.push_back({step, ranks[r]});
                c.gaps[he[h].edge] = std::move(tag);
            }
        }
        for (std::size_t f = 0; f < c.faces.size(); ++f)
            if (x.faces[f]) c.faces[f] = 0;
    }
}

bool family_cover_free(const std::vector<CoreRegion>& cores) {
    if (cores.empty()) return true;
    const std::size_t nf = cores[0].faces.size();
    std::vector<int> count(nf, 0);
    for (const auto& c : cores)
        for (std::size_t f = 0; f < nf; ++f) count[f] += c.faces[f];
    for (const auto& c : cores) {
        bool exposed = false;
        for (std::size_t f = 0; f < nf && !exposed; ++f)
            exposed = c.faces[f] && count[f] == 1;
        if (!exposed) return false;
    }
    return true;
}

void refresh_all(const CoreContext& ctx, std::vector<CoreRegion>& cores) {
    for (auto& c : cores) refresh_core(ctx, c);
}

}  // namespace

std::shared_ptr<const CoreContext> make_core_context(const std::vector<Region>& regions) {
    auto ctx = std::make_shared<CoreContext>();
    ctx->regions = regions;
    ctx->arrangement = build_arrangement(regions);
    std::vector<Polygon> polys;
    for (const auto& r : regions) polys.push_back(r.boundary);
    ctx->overlay = Overlay::from_polygons(polys);
    for (std::size_t k = 0; k < ctx->arrangement.vertices.size(); ++k)
        ctx->vertex_index[ctx->arrangement.vertices[k].location] = static_cast<int>(k);
    const auto& he = ctx->overlay.half_edges();
    ctx->edge_owner.assign(ctx->overlay.num_edges(), -1);
    for (const auto& h : he) {
        std::size_t owners = h.owners_left.size() + h.owners_right.size();
        if (owners != 1)
            throw Error(ErrorKind::Degenerate, "region boundaries overlap");
        ctx->edge_owner[h.edge] = !h.owners_left.empty() ? h.owners_left[0] : h.owners_right[0];
    }
    return ctx;
}

int compare_gaps(const GapTag& a, const GapTag& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int sa = i < a.size() ? a[i].first : INT32_MAX;
        int sb = j < b.size() ? b[j].first : INT32_MAX;
        int step = std::min(sa, sb);
        int ra = sa == step ? a[i].second : 0;
        int rb = sb == step ? b[j].second : 0;
        if (ra != rb) return ra < rb ? -1 : 1;
        if (sa == step) ++i;
        if (sb == step) ++j;
    }
    return 0;
}

const char* core_mode_name(CoreMode mode) {
    switch (mode) {
        case CoreMode::Pusher: return "pusher";
        case CoreMode::Disjoint: return "disjoint";
        case CoreMode::Uniform: return "uniform";
    }
    return "?";
}

bool CoreRegion::empty() const {
    return std::none_of(faces.begin(), faces.end(), [](char c) { return c != 0; });
}

void refresh_core(const CoreContext& ctx, CoreRegion& core) {
    const auto& he = ctx.overlay.half_edges();
    const auto& vs = ctx.overlay.vertices();
    std::vector<bool> in(core.faces.begin(), core.faces.end());
    core.cycles = face_set_boundary(ctx.overlay, in);
    core.boundary_cycles = static_cast<int>(core.cycles.size());
    core.cycle_polygons.clear();
    core.boundary.clear();
    core.edge_source.clear();
    core.edge_gap.clear();
    core.vertex_list.clear();
    core.pinched = false;
    for (std::size_t c = 0; c < core.cycles.size(); ++c) {
        const auto& cyc = core.cycles[c];
        Polygon poly;
        std::set<int> seen;
        for (int h : cyc) {
            poly.push_back(vs[he[h].origin].p);
            if (!seen.insert(he[h].origin).second) core.pinched = true;
        }
        const std::size_t n = cyc.size();
        for (std::size_t k = 0; k < n; ++k) {
            int prev = ctx.edge_owner[he[cyc[(k + n - 1) % n]].edge];
            int cur = ctx.edge_owner[he[cyc[k]].edge];
            if (prev == cur) continue;
            CoreVertex v;
            v.location = vs[he[cyc[k]].origin].p;
            v.i = std::min(prev, cur);
            v.j = std::max(prev, cur);
            auto it = ctx.vertex_index.find(v.location);
            v.arrangement_index = it == ctx.vertex_index.end() ? -1 : it->second;
            core.vertex_list.push_back(v);
        }
        if (c == 0) {
            core.boundary = poly;
            for (int h : cyc) {
                core.edge_source.push_back(ctx.edge_owner[he[h].edge]);
                auto it = core.gaps.find(he[h].edge);
                core.edge_gap.push_back(it == core.gaps.end() ? GapTag{} : it->second);
            }
        }
        core.cycle_polygons.push_back(std::move(poly));
    }
}

std::vector<int> interval_ranks(const CoreContext& ctx,
                                const std::vector<CoreRegion>& cores, int pusher) {
    const auto& he = ctx.overlay.half_edges();
    const CoreRegion& x = cores[pusher];
    std::vector<int> walk = boundary_walk(ctx, x.faces);
    struct Item {
        int region;
        int length;
        int start;
    };
    std::vector<Item> meeting, rest;
    for (std::size_t r = 0; r < cores.size(); ++r) {
        if (static_cast<int>(r) == pusher) continue;
        const CoreRegion& c = cores[r];
        if (c.empty()) continue;
        bool outside = false, overlap = false;
        for (std::size_t f = 0; f < c.faces.size(); ++f) {
            if (!c.faces[f]) continue;
            if (x.faces[f]) overlap = true;
            else outside = true;
        }
        if (overlap && !outside)
            throw Error(ErrorKind::IntervalUndefined,
                        "core of region " + std::to_string(ctx.regions[r].id) +
                            " lies inside the pusher");
        int length = 0, start = -1;
        for (std::size_t k = 0; k < walk.size(); ++k) {
            int h = walk[k];
            if (c.faces[he[h].face] && c.faces[he[he[h].twin].face]) {
                if (start < 0) start = static_cast<int>(k);
                ++length;
            }
        }
        // Normalize the start of an interval that wraps around the walk.
        if (length > 0 && length < static_cast<int>(walk.size())) {
            int h0 = walk[0], hl = walk.back();
            bool first_in = c.faces[he[h0].face] && c.faces[he[he[h0].twin].face];
            bool last_in = c.faces[he[hl].face] && c.faces[he[he[hl].twin].face];
            if (first_in && last_in) {
                for (int k = static_cast<int>(walk.size()) - 1; k >= 0; --k) {
                    int h = walk[k];
                    if (!(c.faces[he[h].face] && c.faces[he[he[h].twin].face])) break;
                    start = k;
                }
            }
        }
        if (length > 0) meeting.push_back({static_cast<int>(r), length, start});
        else rest.push_back({static_cast<int>(r), 0, 0});
    }
    std::stable_sort(meeting.begin(), meeting.end(), [](const Item& a, const Item& b) {
        if (a.length != b.length) return a.length > b.length;
        return a.start < b.start;
    });
    std::vector<int> ranks(cores.size(), 0);
    int next = 1;
    for (const auto& it : meeting) ranks[it.region] = next++;
    for (const auto& it : rest) ranks[it.region] = next++;
    return ranks;
}

CoreDecomposition push(std::shared_ptr<const CoreContext> ctx, int pusher) {
    CoreDecomposition dec;
    dec.mode = CoreMode::Pusher;
    dec.context = ctx;
    dec.cores = initial_cores(*ctx);
    dec.order = {pusher};
    auto ranks = interval_ranks(*ctx, dec.cores, pusher);
    apply_push(*ctx, dec.cores, pusher, 0, ranks);
    dec.ranks.push_back(std::move(ranks));
    dec.cover_free_between_pushes = family_cover_free(dec.cores);
    refresh_all(*ctx, dec.cores);
    return dec;
}

CoreDecomposition push(const std::vector<Region>& regions, int pusher) {
    validate_family(regions);
    return push(make_core_context(regions), pusher);
}

std::vector<int> weighted_permutation(const std::vector<Scalar>& weights,
                                      std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> positive, zero;
    std::vector<double> w;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0) positive.push_back(static_cast<int>(i));
        else zero.push_back(static_cast<int>(i));
        w.push_back(to_double(weights[i]));
    }
    std::vector<int> order;
    while (!positive.empty()) {
        double total = 0;
        for (int i : positive) total += w[i];
        double u = rng.uniform() * total;
        std::size_t pick = positive.size() - 1;
        for (std::size_t k = 0; k < positive.size(); ++k) {
            if (u < w[positive[k]]) { pick = k; break; }
            u -= w[positive[k]];
        }
        order.push_back(positive[pick]);
        positive.erase(positive.begin() + static_cast<long>(pick));
    }
    while (!zero.empty()) {
        std::size_t pick = rng.below(zero.size());
        order.push_back(zero[pick]);
        zero.erase(zero.begin() + static_cast<long>(pick));
    }
    return order;
}

CoreDecomposition disjoint_core_decomposition(std::shared_ptr<const CoreContext> ctx,
                                              const std::vector<int>& order) {
    CoreDecomposition dec;
    dec.mode = CoreMode::Disjoint;
    dec.context = ctx;
    dec.cores = initial_cores(*ctx);
    dec.order = order;
    dec.position.assign(ctx->regions.size(), 0);
    for (std::size_t t = 0; t < order.size(); ++t) {
        dec.position[order[t]] = static_cast<int>(t);
        auto ranks = interval_ranks(*ctx, dec.cores, order[t]);
        apply_push(*ctx, dec.cores, order[t], static_cast<int>(t), ranks);
        dec.ranks.push_back(std::move(ranks));
        if (!family_cover_free(dec.cores)) dec.cover_free_between_pushes = false;
    }
    refresh_all(*ctx, dec.cores);
    return dec;
}

CoreDecomposition disjoint_core_decomposition(const std::vector<Region>& regions,
                                              std::uint64_t seed) {
    validate_family(regions);
    auto ctx = make_core_context(regions);
    std::vector<Scalar> w;
    for (const auto& r : regions) w.push_back(r.weight);
    return disjoint_core_decomposition(ctx, weighted_permutation(w, seed));
}

CoreDecomposition uniform_core_decomposition(const std::vector<Region>& regions,
                                             const UniformConfig& cfg,
                                             std::uint64_t seed) {
    validate_family(regions);
    if (cfg.eta <= 0 || cfg.eta >= 1)
        throw Error(ErrorKind::InvalidInput, "eta must lie in (0, 1)");
    auto ctx = make_core_context(regions);
    const int n = static_cast<int>(regions.size());
    double eta = to_double(cfg.eta);
    int size = static_cast<int>(std::ceil(cfg.c_net / eta * std::log(1.0 / eta)));
    size = std::clamp(size, 1, std::max(n, 1));
    const auto& faces = ctx->overlay.faces();
    Scalar limit = cfg.eta * Scalar(n);

    CoreDecomposition dec;
    dec.mode = CoreMode::Uniform;
    dec.context = ctx;
    std::vector<int> net;
    bool valid = false;
    for (int attempt = 0; attempt < cfg.max_attempts && !valid; ++attempt) {
        dec.net_attempts = attempt + 1;
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        net.clear();
        for (int k = 0; k < size; ++k) {
            std::size_t pick = rng.below(pool.size());
            net.push_back(pool[pick]);
            pool.erase(pool.begin() + static_cast<long>(pick));
        }
        std::vector<char> member(n, 0);
        for (int q : net) member[q] = 1;
        valid = true;
        for (const auto& f : faces) {
            bool covered = std::any_of(f.label.begin(), f.label.end(),
                                       [&](int r) { return member[r] != 0; });
            if (!covered && Scalar(static_cast<long>(f.label.size())) > limit) {
                valid = false;
                break;
            }
        }
    }
    if (!valid)
        throw Error(ErrorKind::NetValidationFailed,
                    "no eta-net after " + std::to_string(cfg.max_attempts) + " samples");
    dec.net = net;
    dec.order = net;
    dec.cores = initial_cores(*ctx);
    for (std::size_t t = 0; t < net.size(); ++t) {
        auto ranks = interval_ranks(*ctx, dec.cores, net[t]);
        apply_push(*ctx, dec.cores, net[t], static_cast<int>(t), ranks);
        dec.ranks.push_back(std::move(ranks));
    }
    for (int q : net) {
        dec.cores[q].faces = region_faces(*ctx, q);
        dec.cores[q].gaps.clear();
    }
    refresh_all(*ctx, dec.cores);
    return dec;
}

CoreCost core_vertex_cost(const CoreDecomposition& dec) {
    const CoreContext& ctx = *dec.context;
    CoreCost out;
    for (const auto& c : dec.cores)
        out.cost += Scalar(static_cast<long>(c.vertex_list.size())) * ctx.regions[c.source].weight;
    // Strict containers per vertex for the refined expectation.
    for (const auto& v : ctx.arrangement.vertices) {
        int ii = -1, jj = -1;
        for (std::size_t r = 0; r < ctx.regions.size(); ++r) {
            if (ctx.regions[r].id == v.i) ii = static_cast<int>(r);
            if (ctx.regions[r].id == v.j) jj = static_cast<int>(r);
        }
        const Scalar& wi = ctx.regions[ii].weight;
        const Scalar& wj = ctx.regions[jj].weight;
        Scalar d = v.depth;
        Scalar denom = wi + wj + d;
        if (denom == 0) continue;
        out.closed_form += 2 * wi * wj / denom;
        Scalar sq = 0;
        for (std::size_t r = 0; r < ctx.regions.size(); ++r) {
            if (static_cast<int>(r) == ii || static_cast<int>(r) == jj) continue;
            if (locate(v.location, ctx.regions[r]) == Location::Inside)
                sq += ctx.regions[r].weight * ctx.regions[r].weight;
        }
        Scalar x = d > 0 ? Scalar(sq / d) : Scalar(0);
        Scalar p_ji = (wi + d) > 0 ? Scalar(wj / denom * wi / (wi + d)) : Scalar(0);
        Scalar p_ij = (wj + d) > 0 ? Scalar(wi / denom * wj / (wj + d)) : Scalar(0);
        out.refined_expectation += p_ji * (wi + x) + p_ij * (wj + x);
    }
    return out;
}

Scalar cs_sum(const Arrangement& arr, const Scalar& k) {
    std::map<int, Scalar> w;
    for (const auto& r : arr.regions) w[r.id] = r.weight;
    Scalar sum = 0;
    for (const auto& v : arr.vertices) {
        if (v.depth < k || v.depth >= 2 * k) continue;
        const Scalar& wi = w[v.i];
        const Scalar& wj = w[v.j];
        sum += wi * wj / (wi + wj + k);
    }
    return sum;
}

Scalar cs_sum(const std::vector<Region>& regions, const Scalar& k) {
    return cs_sum(build_arrangement(regions), k);
}

int core_crossings(const CoreContext& ctx, const CoreRegion& a, const CoreRegion& b) {
    const auto& he = ctx.overlay.half_edges();
    int crossings = 0;
    for (const auto& cyc : a.cycles) {
        std::vector<char> state;
        for (int h : cyc) {
            bool left = b.faces[he[h].face] != 0;
            bool right = b.faces[he[he[h].twin].face] != 0;
            bool inside;
            if (left == right) {
                inside = left;
            } else if (right) {
                inside = false;  // interiors on opposite sides: pushed apart
            } else {
                GapTag ga, gb;
                if (auto it = a.gaps.find(he[h].edge); it != a.gaps.end()) ga = it->second;
                if (auto it = b.gaps.find(he[h].edge); it != b.gaps.end()) gb = it->second;
                inside = compare_gaps(ga, gb) > 0;
            }
            state.push_back(inside ? 1 : 0);
        }
        for (std::size_t k = 0; k < state.size(); ++k)
            if (state[k] != state[(k + 1) % state.size()]) ++crossings;
    }
    return crossings;
}

CoreReport verify_core_decomposition(const std::vector<Region>& original,
                                     const CoreDecomposition& dec,
                                     const std::vector<Point2>& points) {
    const CoreContext& ctx = *dec.context;
    const auto& cores = dec.cores;
    const std::size_t n = cores.size();
    CoreReport rep;
    auto fail = [&](const std::string& msg) {
        ++rep.violations;
        if (rep.messages.size() < 50) rep.messages.push_back(msg);
    };
    auto name = [&](std::size_t r) { return std::to_string(original[r].id); };
    std::vector<BBox> boxes;
    for (const auto& r : original) boxes.push_back(bbox_of(r.boundary));

    // Containment.
    for (std::size_t r = 0; r < n; ++r) {
        const auto& c = cores[r];
        rep.vertex_counts.push_back(static_cast<int>(c.vertex_list.size()));
        if (c.empty()) {
            fail("core " + name(r) + " is empty");
            continue;
        }
        for (const auto& poly : c.cycle_polygons) {
            if (sgn(signed_area2(poly)) <= 0) continue;
            if (relate(poly, original[r].boundary).a_in_b_ext)
                fail("core " + name(r) + " leaves its region");
        }
        // One boundary cycle, no pinch.
        if (c.boundary_cycles != 1 || c.pinched) {
            if (dec.mode == CoreMode::Pusher)
                fail("core " + name(r) + " is not simply connected");
        }
    }

    // Probes strictly inside the union stay covered.
    std::vector<Point2> probes = points;
    const auto& faces = ctx.overlay.faces();
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (!faces[f].unbounded && !faces[f].label.empty())
            probes.push_back(face_interior_point(ctx.overlay, static_cast<int>(f)));
    for (const auto& p : probes) {
        bool in_union = false, on_boundary = false;
        for (std::size_t r = 0; r < n; ++r) {
            const BBox& b = boxes[r];
            if (p.x < b.xmin || p.x > b.xmax || p.y < b.ymin || p.y > b.ymax) continue;
            Location l = locate(p, original[r].boundary);
            if (l == Location::OnBoundary) on_boundary = true;
            if (l == Location::Inside) in_union = true;
        }
        if (!in_union || on_boundary) continue;
        ++rep.probes;
        bool covered = false;
        for (std::size_t r = 0; r < n && !covered; ++r)
            covered = !cores[r].empty() &&
                      locate_in_cycles(p, cores[r].cycle_polygons) == Location::Inside;
        if (!covered)
            fail("probe (" + format_scalar(p.x) + ", " + format_scalar(p.y) + ") uncovered");
    }

    auto simple = [&](const CoreRegion& c) { return c.boundary_cycles == 1 && !c.pinched; };
    auto faces_meet = [&](const CoreRegion& a, const CoreRegion& b) {
        for (std::size_t f = 0; f < a.faces.size(); ++f)
            if (a.faces[f] && b.faces[f]) return true;
        return false;
    };
    auto disjoint_pair = [&](std::size_t a, std::size_t b) {
        if (faces_meet(cores[a], cores[b])) return false;
        if (simple(cores[a]) && simple(cores[b]) &&
            bbox_overlap(bbox_of(cores[a].boundary), bbox_of(cores[b].boundary)) &&
            relate(cores[a].boundary, cores[b].boundary).int_int)
            return false;
        return true;
    };

    if (dec.mode == CoreMode::Disjoint) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (!disjoint_pair(a, b)) fail("cores " + name(a) + " and " + name(b) + " overlap");
        // Every core vertex obeys the push-order rule.
        std::map<int, std::size_t> index_of;
        for (std::size_t r = 0; r < n; ++r) index_of[original[r].id] = r;
        const auto& pi = dec.position;
        for (std::size_t l = 0; l < n; ++l) {
            for (const auto& v : cores[l].vertex_list) {
                ++rep.vertices_checked;
                std::size_t i = static_cast<std::size_t>(v.i);
                std::size_t j = static_cast<std::size_t>(v.j);
                std::vector<std::size_t> containers;
                for (std::size_t m = 0; m < n; ++m) {
                    if (m == i || m == j) continue;
                    const BBox& b = boxes[m];
                    if (v.location.x < b.xmin || v.location.x > b.xmax ||
                        v.location.y < b.ymin || v.location.y > b.ymax)
                        continue;
                    if (locate(v.location, original[m].boundary) == Location::Inside)
                        containers.push_back(m);
                }
                bool ok;
                if (l != i && l != j) {
                    bool in_l = std::find(containers.begin(), containers.end(), l) != containers.end();
                    int lo = INT32_MAX;
                    for (auto m : containers) lo = std::min(lo, pi[m]);
                    ok = in_l && std::max(pi[i], pi[j]) < lo;
                } else if (l == i) {
                    ok = pi[j] < pi[i];
                } else {
                    ok = pi[i] < pi[j];
                }
                if (!ok)
                    fail("vertex of core " + name(l) + " defined by " + name(i) + "," +
                         name(j) + " violates the push-order rule");
            }
        }
    } else if (dec.mode == CoreMode::Pusher) {
        int x = dec.order.at(0);
        if (cores[x].faces != region_faces(ctx, x)) fail("pusher core differs from the pusher");
        for (std::size_t r = 0; r < n; ++r)
            if (static_cast<int>(r) != x && !disjoint_pair(r, static_cast<std::size_t>(x)))
                fail("core " + name(r) + " meets the pusher");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                int c = core_crossings(ctx, cores[a], cores[b]);
                if (c > 2)
                    fail("cores " + name(a) + " and " + name(b) + " cross " +
                         std::to_string(c) + " times");
            }
        if (!family_cover_free(cores)) fail("pushed family is not cover-free");
    } else {
        std::vector<char> member(n, 0);
        for (int q : dec.net) member[q] = 1;
        for (std::size_t r = 0; r < n; ++r) {
            if (member[r]) {
                if (cores[r].faces != region_faces(ctx, static_cast<int>(r)))
                    fail("net member " + name(r) + " not restored");
                continue;
            }
            for (int q : dec.net)
                if (faces_meet(cores[r], cores[q]))
                    fail("core " + name(r) + " meets net member " + name(q));
        }
    }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!cores[a].empty() && !cores[b].empty())
                rep.total_intersections += core_crossings(ctx, cores[a], cores[b]);
    return rep;
}

}  // namespace pdc
