#include "pdcover/halfspace3d/driver.h"

#include "pdcover/geom/errors.h"
#include "pdcover/geom/random.h"
#include "../solvers/point_mask.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace pdc {

namespace {

using namespace detail;

std::vector<Scalar> weights_of(const std::vector<Halfspace3>& hs) {
    std::vector<Scalar> w;
    for (const auto& h : hs) w.push_back(h.weight);
    return w;
}

std::string point_text(const Point3& p) {
    return "(" + format_scalar(p.x) + "," + format_scalar(p.y) + "," + format_scalar(p.z) + ")";
}

class HalfspaceDriver {
public:
    HalfspaceDriver(const HalfspaceInstance& inst, const DriverConfig& cfg, HalfspaceStats& stats,
                    std::optional<HellyCover> helly, double t0)
        : inst_(inst), cfg_(cfg), stats_(stats), helly_(std::move(helly)), t0_(t0) {
        const auto cov = halfspace_coverage(inst);
        covers_.assign(inst.halfspaces.size(), Mask((inst.points.size() + 63) / 64, 0));
        for (std::size_t p = 0; p < cov.size(); ++p)
            for (int h : cov[p]) covers_[h][p / 64] |= std::uint64_t{1} << (p % 64);
        weights_ = weights_of(inst.halfspaces);
        if (cfg.mode == DriverMode::Enumerate) apexes_ = cell_representatives(inst.halfspaces);
    }

    Solution solve(const Mask& m, int depth) {
        if (mask_empty(m)) return Solution{};
        auto key = std::make_pair(m, depth);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        ++stats_.nodes;
        std::optional<Solution> best;
        auto offer = [&](Solution s) {
            if (!best || s.weight < best->weight) best = std::move(s);
        };
        if (auto s = single(m)) offer(*s);
        if (helly_) offer(make(helly_->selected, {"space-covering tuple"}));
        const double estimate = t0_ * std::pow(5.0 / 6.0, depth);
        if (estimate < 2 || depth >= stats_.depth_cap) {
            ++stats_.base_cases;
            Solution g = greedy(m);
            g.provenance = {"base d" + std::to_string(depth) + " greedy"};
            offer(std::move(g));
        } else {
            node(m, depth, offer);
        }
        if (!best) offer(greedy(m));
        memo_[key] = *best;
        return *best;
    }

private:
    Solution make(std::vector<int> sel, std::vector<std::string> prov) const {
        std::sort(sel.begin(), sel.end());
        sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
        Solution s;
        for (int h : sel) s.weight += weights_[h];
        s.selected = std::move(sel);
        s.provenance = std::move(prov);
        return s;
    }

    std::vector<std::vector<int>> by_point(const Mask& m) const {
        std::vector<std::vector<int>> out;
        for (int p : mask_ids(m)) {
            std::vector<int> hs;
            for (std::size_t h = 0; h < covers_.size(); ++h)
                if (covers_[h][p / 64] >> (p % 64) & 1) hs.push_back(static_cast<int>(h));
            out.push_back(std::move(hs));
        }
        return out;
    }

    std::optional<Solution> single(const Mask& m) const {
        int pick = -1;
        for (std::size_t h = 0; h < covers_.size(); ++h)
            if (mask_subset(m, covers_[h]) && (pick < 0 || weights_[h] < weights_[pick]))
                pick = static_cast<int>(h);
        if (pick < 0) return std::nullopt;
        return make({pick}, {"single halfspace"});
    }

    Solution greedy(const Mask& m) const {
        Solution s = greedy_cover_sets(weights_, by_point(m));
        return make(s.selected, {});
    }

    Mask covered_by(const std::vector<int>& sel) const {
        Mask c(covers_.empty() ? 0 : covers_[0].size(), 0);
        for (int h : sel)
            for (std::size_t i = 0; i < c.size(); ++i) c[i] |= covers_[h][i];
        return c;
    }

    /// Iteratively take members heavier than a third of the rest.
    void preselect(std::vector<int>& rest, std::vector<int>& pre, Mask& rem) const {
        while (!rest.empty()) {
            Scalar w = 0;
            for (int h : rest) w += weights_[h];
            std::vector<int> heavy, light;
            for (int h : rest) (3 * weights_[h] > w ? heavy : light).push_back(h);
            if (heavy.empty()) break;
            pre.insert(pre.end(), heavy.begin(), heavy.end());
            rest = std::move(light);
            rem = mask_minus(rem, covered_by(heavy));
            if (mask_empty(rem)) break;
        }
        std::vector<int> needed;
        for (int h : rest)
            if (!mask_empty(mask_and(covers_[h], rem))) needed.push_back(h);
        rest = std::move(needed);
    }

    template <class Offer>
    bool split_with(const Mask& rem, const std::vector<int>& q, const std::vector<int>& pre,
                    const Point3& o, std::uint64_t seed, int depth, Offer& offer) {
        ++stats_.separator_calls;
        std::vector<int> ids = mask_ids(rem);
        HalfspaceInstance sub{inst_.halfspaces, {}};
        for (int p : ids) sub.points.push_back(inst_.points[p]);
        NetConfig nc;
        nc.c_net = cfg_.c_net;
        HalfspaceSeparatorReport rep;
        try {
            rep = halfspace_separator(sub, q, o, stats_.delta, stats_.eps_net, seed, nc);
        } catch (const Error&) {
            ++stats_.separator_failures;
            return false;
        }
        if (!rep.conserved) ++stats_.conservation_failures;
        if (!rep.separator.balanced) ++stats_.unbalanced;
        stats_.net_core_violations += rep.split.net_core_violations;
        stats_.crossing_without_vertex += rep.split.crossing_without_vertex;
        std::vector<int> in, ext;
        for (int p : rep.points_in) in.push_back(ids[p]);
        for (int p : rep.points_ext) ext.push_back(ids[p]);
        Mask mi = mask_of(inst_.points.size(), in), me = mask_of(inst_.points.size(), ext);
        if (mi == rem || me == rem) return false;
        Solution a = solve(mi, depth + 1);
        Solution b = solve(me, depth + 1);
        std::vector<int> sel = pre;
        sel.insert(sel.end(), a.selected.begin(), a.selected.end());
        sel.insert(sel.end(), b.selected.begin(), b.selected.end());
        std::string label = "d" + std::to_string(depth) + " cone apex " + point_text(o) + " cycle";
        for (int v : rep.separator.cycle) label += " " + point_text(rep.polytope.vertices[v]);
        std::vector<std::string> prov{label};
        prov.insert(prov.end(), a.provenance.begin(), a.provenance.end());
        prov.insert(prov.end(), b.provenance.begin(), b.provenance.end());
        offer(make(std::move(sel), std::move(prov)));
        return true;
    }

    template <class Offer>
    void node(const Mask& m, int depth, Offer& offer) {
        std::vector<int> pre;
        Mask rem = m;
        bool any = false;
        if (cfg_.mode == DriverMode::Enumerate) {
            int tried = 0;
            for (const Point3& o : apexes_) {
                if (tried >= cfg_.apex_cap) break;
                // Candidate members: halfspaces avoiding the apex that cover a point here.
                std::vector<int> q;
                for (std::size_t h = 0; h < covers_.size(); ++h)
                    if (inst_.halfspaces[h].side(o) < 0 && !mask_empty(mask_and(covers_[h], m)))
                        q.push_back(static_cast<int>(h));
                if (q.empty()) continue;
                // The apex must leave every point coverable.
                if (!mask_subset(m, covered_by(q))) continue;
                ++tried;
                ++stats_.apex_candidates;
                std::vector<int> p2;
                Mask r2 = m;
                preselect(q, p2, r2);
                if (mask_empty(r2)) {
                    offer(make(p2, {"d" + std::to_string(depth) + " heavy members"}));
                    continue;
                }
                if (q.empty()) continue;
                any = split_with(r2, q, p2, o, mix_seed(cfg_.seed, tried), depth, offer) || any;
            }
        } else {
            Solution ref = cfg_.mode == DriverMode::Oracle
                               ? exact_cover_sets(weights_, by_point(m), cfg_.exact_cap)
                               : greedy_cover_sets(weights_, by_point(m));
            std::vector<int> q = ref.selected;
            preselect(q, pre, rem);
            if (mask_empty(rem)) {
                offer(make(pre, {"d" + std::to_string(depth) + " heavy members"}));
                return;
            }
            if (auto o = point_outside(inst_.halfspaces, q)) {
                ++stats_.apex_candidates;
                const int seeds = cfg_.mode == DriverMode::Oracle ? 1 : std::max(1, cfg_.heuristic_seeds);
                for (int k = 0; k < seeds; ++k)
                    any = split_with(rem, q, pre, *o, mix_seed(cfg_.seed, static_cast<std::uint64_t>(k + 1)),
                                     depth, offer) || any;
            } else {
                // The members cover space; keep them as they are.
                std::vector<int> sel = pre;
                sel.insert(sel.end(), q.begin(), q.end());
                offer(make(std::move(sel), {"d" + std::to_string(depth) + " reference covers space"}));
                any = true;
            }
        }
        if (!any) {
            Solution g = greedy(rem);
            std::vector<int> sel = pre;
            sel.insert(sel.end(), g.selected.begin(), g.selected.end());
            offer(make(std::move(sel), {"d" + std::to_string(depth) + " no separator, greedy"}));
        }
    }

    const HalfspaceInstance& inst_;
    const DriverConfig& cfg_;
    HalfspaceStats& stats_;
    std::optional<HellyCover> helly_;
    double t0_;
    std::vector<Mask> covers_;
    std::vector<Scalar> weights_;
    std::vector<Point3> apexes_;
    std::map<std::pair<Mask, int>, Solution> memo_;
};

}  // namespace

bool is_halfspace_cover(const HalfspaceInstance& inst, const std::vector<int>& selected) {
    for (const auto& p : inst.points) {
        bool ok = false;
        for (int h : selected)
            if (h >= 0 && h < static_cast<int>(inst.halfspaces.size()) && inst.halfspaces[h].contains(p)) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

Solution exact_halfspace_cover(const HalfspaceInstance& inst, int cap) {
    if (static_cast<int>(inst.halfspaces.size()) > cap)
        throw Error(ErrorKind::TooLarge, "exact halfspace cover above the cap");
    return exact_cover_sets(weights_of(inst.halfspaces), halfspace_coverage(inst), cap);
}

Solution greedy_halfspace_cover(const HalfspaceInstance& inst) {
    return greedy_cover_sets(weights_of(inst.halfspaces), halfspace_coverage(inst));
}

Scalar net_eps(const Scalar& delta, double a) {
    const double d = to_double(delta);
    const double e = a * d * d / std::log(1 / (d * d));
    Scalar s = snap(std::min(1.0, e), 1L << 30);
    if (s <= 0) s = Scalar(1, 1L << 30);
    return s;
}

HalfspaceSeparatorReport halfspace_separator(const HalfspaceInstance& inst, const std::vector<int>& q,
                                             const Point3& o, const Scalar& delta, const Scalar& eps,
                                             std::uint64_t seed, const NetConfig& net_cfg) {
    HalfspaceSeparatorReport rep;
    rep.apex = o;
    std::vector<Halfspace3> members;
    for (int i : q) members.push_back(inst.halfspaces[i]);
    rep.net = epsilon_net_stab(members, o, eps, seed, net_cfg, inst.points);
    std::vector<Halfspace3> planes;
    for (int k : rep.net.members) {
        rep.net_ids.push_back(q[k]);
        planes.push_back(inst.halfspaces[q[k]]);
        planes.back().id = q[k];
    }
    const int n = static_cast<int>(inst.halfspaces.size());
    for (std::size_t k = 0; k < rep.net.dummies.size(); ++k) {
        Halfspace3 d = rep.net.dummies[k];
        d.id = n + static_cast<int>(k);
        planes.push_back(d);
    }
    rep.polytope = complement_polytope(planes);
    std::vector<Halfspace3> ided = inst.halfspaces;
    for (int i = 0; i < n; ++i) ided[i].id = i;
    rep.cores = cone_cores_and_weights(ided, q, rep.net_ids, rep.polytope, o);
    Scalar sum = 0;
    for (const auto& w : rep.cores.facet_weights) sum += w;
    rep.conserved = sum == rep.cores.total;
    rep.separator = skeleton_separator(rep.polytope, rep.cores.facet_weights, delta);
    rep.split = evaluate_cone_split(ided, rep.cores, rep.polytope, rep.separator, o);
    for (std::size_t p = 0; p < inst.points.size(); ++p) {
        int side = cone_side(rep.polytope, rep.separator, o, inst.points[p]);
        if (side >= 0) rep.points_in.push_back(static_cast<int>(p));
        if (side <= 0) rep.points_ext.push_back(static_cast<int>(p));
    }
    return rep;
}

Solution qptas_halfspace_cover(const HalfspaceInstance& inst, const DriverConfig& cfg, HalfspaceStats* stats) {
    if (cfg.eps <= 0 || cfg.eps >= 1) throw Error(ErrorKind::InvalidInput, "eps must lie in (0, 1)");
    HalfspaceStats local;
    HalfspaceStats& st = stats ? *stats : local;
    st = HalfspaceStats{};
    halfspace_coverage(inst);
    if (inst.points.empty()) return Solution{};
    const int n = static_cast<int>(inst.halfspaces.size());
    st.delta = driver_delta(n, cfg);
    st.eps_net = net_eps(st.delta, cfg.net_a);
    const double t0 = n / to_double(cfg.eps);
    st.depth_cap = cfg.depth_cap > 0 ? cfg.depth_cap
                                     : static_cast<int>(std::ceil(cfg.c_l * std::log2(std::max(2.0, t0))));

    // Free halfspaces are always taken; only their uncovered points remain.
    HalfspaceInstance rest{inst.halfspaces, {}};
    std::vector<int> free;
    for (int h = 0; h < n; ++h)
        if (inst.halfspaces[h].weight == 0) free.push_back(h);
    for (const auto& p : inst.points)
        if (std::none_of(free.begin(), free.end(), [&](int h) { return inst.halfspaces[h].contains(p); }))
            rest.points.push_back(p);

    auto helly = helly_small_cover(inst.halfspaces);
    st.helly_available = helly.has_value();
    if (helly) st.helly_weight = helly->weight;
    Solution sol;
    if (!rest.points.empty()) {
        HalfspaceDriver driver(rest, cfg, st, helly, t0);
        sol = driver.solve(mask_full(rest.points.size()), 0);
    }
    sol.selected.insert(sol.selected.end(), free.begin(), free.end());
    std::sort(sol.selected.begin(), sol.selected.end());
    sol.selected.erase(std::unique(sol.selected.begin(), sol.selected.end()), sol.selected.end());
    sol.weight = 0;
    for (int h : sol.selected) sol.weight += inst.halfspaces[h].weight;
    if (!is_halfspace_cover(inst, sol.selected))
        throw Error(ErrorKind::Infeasible, "driver output does not cover the points");
    return sol;
}

}  // namespace pdc
