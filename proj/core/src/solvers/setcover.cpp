#include "pdcover/solvers/setcover.h"

#include "pdcover/cores/cores.h"
#include "pdcover/geom/arrangement.h"
#include "pdcover/geom/errors.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace pdc {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }

/// Simple loops of a closed vertex walk, split at repeated vertices.
std::vector<Polygon> split_pinches(const Polygon& walk) {
    std::vector<Polygon> loops;
    Polygon stack;
    for (const auto& p : walk) {
        auto it = std::find(stack.begin(), stack.end(), p);
        if (it != stack.end()) {
            Polygon loop(it, stack.end());
            stack.erase(it + 1, stack.end());
            if (loop.size() >= 3) loops.push_back(loop);
            continue;
        }
        stack.push_back(p);
    }
    if (stack.size() >= 3) loops.push_back(stack);
    return loops;
}

}  // namespace

std::vector<std::vector<int>> coverage(const SetCoverInstance& inst) {
    std::vector<BBox> boxes;
    for (const auto& r : inst.regions) boxes.push_back(bbox_of(r.boundary));
    std::vector<std::vector<int>> cov(inst.points.size());
    for (std::size_t p = 0; p < inst.points.size(); ++p) {
        const Point2& q = inst.points[p];
        for (std::size_t r = 0; r < inst.regions.size(); ++r) {
            const BBox& b = boxes[r];
            if (q.x < b.xmin || q.x > b.xmax || q.y < b.ymin || q.y > b.ymax) continue;
            Location l = locate(q, inst.regions[r]);
            if (l == Location::OnBoundary) throw Error(ErrorKind::InvalidInput, "point on a region boundary");
            if (l == Location::Inside) cov[p].push_back(static_cast<int>(r));
        }
        if (cov[p].empty()) throw Error(ErrorKind::Infeasible, "uncovered point");
    }
    return cov;
}

SetCoverInstance perturb_points(const SetCoverInstance& inst) {
    SetCoverInstance out = inst;
    const Scalar step(1, 1 << 20);
    for (auto& p : out.points) {
        auto on_boundary = [&](const Point2& q) {
            for (const auto& r : out.regions)
                if (locate(q, r) == Location::OnBoundary) return true;
            return false;
        };
        if (!on_boundary(p)) continue;
        bool moved = false;
        for (int k = 1; k <= 8 && !moved; ++k)
            for (int dx = -1; dx <= 1 && !moved; ++dx)
                for (int dy = -1; dy <= 1 && !moved; ++dy) {
                    if (dx == 0 && dy == 0) continue;
                    Point2 q{p.x + step * dx / k, p.y + step * dy / k};
                    if (!on_boundary(q)) {
                        p = q;
                        moved = true;
                    }
                }
        if (!moved) throw Error(ErrorKind::Degenerate, "could not move a point off the boundaries");
    }
    return out;
}

bool is_cover(const SetCoverInstance& inst, const std::vector<int>& selected) {
    for (const auto& p : inst.points) {
        bool ok = false;
        for (int r : selected)
            if (r >= 0 && r < static_cast<int>(inst.regions.size()) &&
                locate(p, inst.regions[r]) == Location::Inside) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

Scalar weight_of(const std::vector<Region>& regions, const std::vector<int>& ids) {
    Scalar w = 0;
    for (int i : ids) w += regions[i].weight;
    return w;
}

Solution exact_cover_sets(const std::vector<Scalar>& weights,
                          const std::vector<std::vector<int>>& by_point_in, int cap) {
    const int n = static_cast<int>(weights.size());
    if (n > cap) throw Error(ErrorKind::TooLarge, "exact set cover above the set cap");
    const std::size_t P = by_point_in.size();
    std::vector<Bits> bits(n, make_bits(P));
    for (std::size_t p = 0; p < P; ++p) {
        if (by_point_in[p].empty()) throw Error(ErrorKind::Infeasible, "uncovered point");
        for (int r : by_point_in[p]) set_bit(bits[r], p);
    }
    std::vector<std::vector<int>> by_point = by_point_in;
    for (auto& c : by_point)
        std::sort(c.begin(), c.end(), [&](int a, int b) { return weights[a] < weights[b]; });

    Solution greedy = greedy_cover_sets(weights, by_point_in);
    Scalar best = greedy.weight;
    std::vector<int> best_set = greedy.selected;
    std::vector<int> chosen;
    Bits covered = make_bits(P);
    auto rec = [&](auto&& self, const Scalar& w) -> void {
        int pick = -1;
        std::size_t fewest = SIZE_MAX;
        for (std::size_t p = 0; p < P; ++p)
            if (!test_bit(covered, p) && by_point[p].size() < fewest) {
                fewest = by_point[p].size();
                pick = static_cast<int>(p);
            }
        if (pick < 0) {
            if (w < best) {
                best = w;
                best_set = chosen;
            }
            return;
        }
        // Some set through the pick is still needed.
        if (w + weights[by_point[pick].front()] >= best) return;
        for (int r : by_point[pick]) {
            Scalar nw = w + weights[r];
            if (nw >= best) break;
            Bits saved = covered;
            for (std::size_t k = 0; k < covered.size(); ++k) covered[k] |= bits[r][k];
            chosen.push_back(r);
            self(self, nw);
            chosen.pop_back();
            covered = std::move(saved);
        }
    };
    rec(rec, Scalar(0));
    Solution s;
    s.selected = best_set;
    std::sort(s.selected.begin(), s.selected.end());
    s.weight = best;
    s.provenance.push_back("exact branch and bound");
    return s;
}

Solution greedy_cover_sets(const std::vector<Scalar>& weights,
                           const std::vector<std::vector<int>>& by_point) {
    const std::size_t P = by_point.size();
    std::vector<Bits> bits(weights.size(), make_bits(P));
    for (std::size_t p = 0; p < P; ++p) {
        if (by_point[p].empty()) throw Error(ErrorKind::Infeasible, "uncovered point");
        for (int r : by_point[p]) set_bit(bits[r], p);
    }
    Bits covered = make_bits(P);
    std::size_t left = P;
    Solution s;
    std::vector<char> used(weights.size(), 0);
    while (left > 0) {
        int best = -1;
        Scalar best_ratio;
        std::size_t best_gain = 0;
        for (std::size_t r = 0; r < weights.size(); ++r) {
            if (used[r]) continue;
            std::size_t gain = 0;
            for (std::size_t k = 0; k < covered.size(); ++k)
                gain += static_cast<std::size_t>(std::popcount(bits[r][k] & ~covered[k]));
            if (gain == 0) continue;
            Scalar ratio = weights[r] / Scalar(static_cast<long>(gain));
            if (best < 0 || ratio < best_ratio) {
                best = static_cast<int>(r);
                best_ratio = ratio;
                best_gain = gain;
            }
        }
        used[best] = 1;
        for (std::size_t k = 0; k < covered.size(); ++k) covered[k] |= bits[best][k];
        left -= best_gain;
        s.selected.push_back(best);
        s.weight += weights[best];
    }
    std::sort(s.selected.begin(), s.selected.end());
    s.provenance.push_back("greedy");
    return s;
}

namespace {

std::vector<Scalar> weights_of(const std::vector<Region>& regions) {
    std::vector<Scalar> w;
    for (const auto& r : regions) w.push_back(r.weight);
    return w;
}

}  // namespace

Solution exact_set_cover(const SetCoverInstance& inst, int cap) {
    if (static_cast<int>(inst.regions.size()) > cap)
        throw Error(ErrorKind::TooLarge, "exact set cover above the region cap");
    return exact_cover_sets(weights_of(inst.regions), coverage(inst), cap);
}

Solution greedy_set_cover(const SetCoverInstance& inst) {
    return greedy_cover_sets(weights_of(inst.regions), coverage(inst));
}

std::vector<NormalizedGuess> normalize_instance(const SetCoverInstance& inst, const Scalar& eps) {
    if (eps <= 0 || eps >= 1) throw Error(ErrorKind::InvalidInput, "eps must lie in (0, 1)");
    const auto cov = coverage(inst);
    const int n = static_cast<int>(inst.regions.size());
    std::set<Scalar> maxima;
    for (const auto& r : inst.regions)
        if (r.weight > 0) maxima.insert(r.weight);
    std::vector<NormalizedGuess> out;
    const Scalar ratio = 1 + eps / 3;
    for (const Scalar& w_max : maxima) {
        // Exponential search over [w_max, n w_max]; the last level passes
        // n w_max so every total in the interval is within a factor.
        Scalar w_aprx = w_max;
        while (true) {
            NormalizedGuess g;
            g.w_max = w_max;
            g.w_aprx = w_aprx;
            g.scale = Scalar(n) / (eps * w_aprx);
            const Scalar cut = eps * w_aprx / Scalar(n);
            std::vector<int> index(n, -1);
            for (int r = 0; r < n; ++r) {
                if (inst.regions[r].weight >= cut) {
                    index[r] = static_cast<int>(g.kept.size());
                    g.kept.push_back(r);
                    Region copy = inst.regions[r];
                    copy.weight *= g.scale;
                    copy.id = index[r];
                    for (auto& piece : copy.monotone_pieces) piece.region_id = index[r];
                    g.reduced.regions.push_back(std::move(copy));
                } else {
                    g.light.push_back(r);
                }
            }
            for (std::size_t p = 0; p < inst.points.size(); ++p) {
                bool light_hit = false, kept_hit = false;
                for (int r : cov[p]) (index[r] < 0 ? light_hit : kept_hit) = true;
                if (light_hit) continue;
                g.reduced.points.push_back(inst.points[p]);
                if (!kept_hit) g.feasible = false;
            }
            out.push_back(std::move(g));
            if (w_aprx >= Scalar(n) * w_max) break;
            w_aprx *= ratio;
        }
    }
    return out;
}

Solution complete_solution(const SetCoverInstance& inst, const NormalizedGuess& guess,
                           const Solution& reduced) {
    Solution s;
    for (int r : reduced.selected) s.selected.push_back(guess.kept[r]);
    s.selected.insert(s.selected.end(), guess.light.begin(), guess.light.end());
    std::sort(s.selected.begin(), s.selected.end());
    s.selected.erase(std::unique(s.selected.begin(), s.selected.end()), s.selected.end());
    s.weight = weight_of(inst.regions, s.selected);
    s.provenance = reduced.provenance;
    return s;
}

std::vector<int> prune_cover(const SetCoverInstance& inst, std::vector<int> cover) {
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
    // Points first: drop members whose points are covered by the rest,
    // heaviest first.
    std::vector<int> order = cover;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return inst.regions[a].weight > inst.regions[b].weight;
    });
    for (int r : order) {
        std::vector<int> rest;
        for (int x : cover)
            if (x != r) rest.push_back(x);
        if (!rest.empty() && is_cover(inst, rest)) cover = rest;
    }
    // Then geometry: the core construction needs a cover-free family.
    while (cover.size() > 1) {
        std::vector<Region> family;
        for (int i = 0; i < static_cast<int>(cover.size()); ++i) {
            family.push_back(inst.regions[cover[i]]);
            family.back().id = i;
        }
        FamilyCheck cf = is_cover_free(family);
        if (cf.ok || cf.first < 0) break;
        cover.erase(cover.begin() + cf.first);
    }
    return cover;
}

SetCoverSeparatorReport setcover_separator(const SetCoverInstance& inst,
                                           const std::vector<int>& cover, const Scalar& delta,
                                           const SetCoverSeparatorConfig& cfg) {
    if (cover.empty() || !is_cover(inst, cover))
        throw Error(ErrorKind::InvalidInput, "reference set is not a cover");
    for (int r : cover)
        if (inst.regions[r].weight < 1) throw Error(ErrorKind::InvalidInput, "cover weights must be at least 1");
    SetCoverSeparatorReport rep;
    rep.cover = prune_cover(inst, cover);
    rep.cover_weight = weight_of(inst.regions, rep.cover);
    for (int r : rep.cover)
        if (3 * inst.regions[r].weight > rep.cover_weight)
            throw Error(ErrorKind::HeavyMember, "a cover member outweighs w(Q)/3");

    std::vector<Region> family;
    for (int i = 0; i < static_cast<int>(rep.cover.size()); ++i) {
        family.push_back(inst.regions[rep.cover[i]]);
        family.back().id = i;
        for (auto& piece : family.back().monotone_pieces) piece.region_id = i;
    }
    CoreDecomposition dec = disjoint_core_decomposition(family, cfg.seed);
    rep.tau = cfg.c_tau / delta.get_d() * std::log2(std::max(rep.cover_weight.get_d(), 2.0));
    for (const auto& core : dec.cores) rep.vertex_counts.push_back(static_cast<int>(core.vertex_list.size()));

    // Low-complexity cores, split into simple outer loops sharing the
    // member's weight. Holes are filled; a loop inside another's filled
    // hole merges into it.
    std::vector<int> piece_owner;
    for (int i = 0; i < static_cast<int>(dec.cores.size()); ++i) {
        if (rep.vertex_counts[i] > rep.tau || dec.cores[i].empty()) continue;
        rep.low_complexity.push_back(rep.cover[i]);
        std::vector<Polygon> loops;
        for (const auto& cyc : dec.cores[i].cycle_polygons)
            for (auto& loop : split_pinches(cyc)) {
                Polygon s = simplify(loop);
                if (s.size() >= 3 && signed_area2(s) > 0) loops.push_back(std::move(s));
            }
        for (auto& loop : loops) {
            rep.core_pieces.push_back(make_region(static_cast<int>(rep.core_pieces.size()),
                                                  family[i].weight / Scalar(static_cast<long>(loops.size())),
                                                  std::move(loop)));
            piece_owner.push_back(rep.cover[i]);
        }
    }
    for (std::size_t a = 0; a < rep.core_pieces.size(); ++a) {
        if (rep.core_pieces[a].weight == 0) continue;
        for (std::size_t b = 0; b < rep.core_pieces.size(); ++b) {
            if (a == b || rep.core_pieces[b].weight == 0) continue;
            PolyRelation rel = relate(rep.core_pieces[a].boundary, rep.core_pieces[b].boundary);
            if (rel.int_int && !rel.a_in_b_ext) {
                rep.core_pieces[b].weight += rep.core_pieces[a].weight;
                rep.core_pieces[a].weight = 0;
                break;
            }
        }
    }
    {
        std::vector<Region> kept;
        for (auto& p : rep.core_pieces)
            if (p.weight > 0) {
                p.id = static_cast<int>(kept.size());
                for (auto& piece : p.monotone_pieces) piece.region_id = p.id;
                kept.push_back(std::move(p));
            }
        rep.core_pieces = std::move(kept);
    }
    if (rep.core_pieces.empty()) throw Error(ErrorKind::Unbalanced, "no low-complexity cores");

    SeparatorConfig sc = cfg.separator;
    sc.seed = cfg.seed;
    rep.separator = weighted_region_separator(rep.core_pieces, delta, sc);
    rep.core_inside = rep.separator.inside_weight;
    rep.core_outside = rep.separator.outside_weight;
    rep.core_crossing = rep.separator.crossing_weight;
    SideClassification pts = classify(rep.separator.curve, {}, inst.points);
    rep.points_in = pts.inside_points;
    rep.points_ext = pts.outside_points;

    if (cfg.evaluate_bounds) {
        auto sub = [&](const std::vector<int>& ids) {
            SetCoverInstance s{inst.regions, {}};
            for (int p : ids) s.points.push_back(inst.points[p]);
            return s.points.empty() ? Scalar(0) : exact_set_cover(s, cfg.exact_cap).weight;
        };
        rep.opt = exact_set_cover(inst, cfg.exact_cap).weight;
        rep.opt_in = sub(rep.points_in);
        rep.opt_ext = sub(rep.points_ext);
        const Scalar side = (Scalar(2, 3) + 3 * delta) * *rep.opt;
        rep.inside_bound = *rep.opt_in <= side;
        rep.outside_bound = *rep.opt_ext <= side;
        rep.sum_bound = *rep.opt_in + *rep.opt_ext <= (1 + 2 * delta) * *rep.opt;
    }
    return rep;
}

}  // namespace pdc
