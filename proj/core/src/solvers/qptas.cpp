#include "pdcover/solvers/qptas.h"

#include "pdcover/geom/errors.h"
#include "pdcover/geom/random.h"
#include "pdcover/separator/encoding.h"
#include "point_mask.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace pdc {

namespace {

using namespace detail;

struct Split {
    Mask in, ext;
    std::string key;
};

/// Recursion over point subsets of one reduced instance.
class Driver {
public:
    Driver(const SetCoverInstance& inst, const DriverConfig& cfg, const Scalar& delta,
           int depth_cap, double t0, DriverStats& stats)
        : inst_(inst), cfg_(cfg), delta_(delta), depth_cap_(depth_cap), t0_(t0), stats_(stats) {
        const auto cov = coverage(inst);
        covers_.assign(inst.regions.size(), Mask((inst.points.size() + 63) / 64, 0));
        for (std::size_t p = 0; p < cov.size(); ++p)
            for (int r : cov[p]) covers_[r][p / 64] |= std::uint64_t{1} << (p % 64);
    }

    void set_splits(std::vector<Split> splits) { splits_ = std::move(splits); }

    Mask all_points() const { return mask_full(inst_.points.size()); }

    Solution solve(const Mask& m, int depth) {
        Solution empty;
        if (mask_empty(m)) return empty;
        auto key = std::make_pair(m, depth);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        ++stats_.nodes;

        std::optional<Solution> best = single(m);
        auto offer = [&](Solution s) {
            if (!best || s.weight < best->weight) best = std::move(s);
        };
        const double estimate = t0_ * std::pow(5.0 / 6.0, depth);
        if (estimate < 2 || depth >= depth_cap_) {
            ++stats_.base_cases;
            Solution g = greedy(m);
            g.provenance = {"base d" + std::to_string(depth) + " greedy"};
            offer(std::move(g));
            memo_[key] = *best;
            return *best;
        }
        if (cfg_.mode == DriverMode::Enumerate)
            enumerate_node(m, depth, offer);
        else
            reference_node(m, depth, offer);
        if (!best) {
            Solution g = greedy(m);
            g.provenance = {"fallback d" + std::to_string(depth) + " greedy"};
            offer(std::move(g));
        }
        memo_[key] = *best;
        return *best;
    }

private:
    SetCoverInstance sub(const Mask& m, std::vector<int>* ids = nullptr) const {
        SetCoverInstance s{inst_.regions, {}};
        std::vector<int> keep = mask_ids(m);
        for (int p : keep) s.points.push_back(inst_.points[p]);
        if (ids) *ids = std::move(keep);
        return s;
    }

    Solution make(std::vector<int> sel, std::vector<std::string> prov) const {
        std::sort(sel.begin(), sel.end());
        sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
        Solution s;
        s.weight = weight_of(inst_.regions, sel);
        s.selected = std::move(sel);
        s.provenance = std::move(prov);
        return s;
    }

    std::optional<Solution> single(const Mask& m) const {
        int pick = -1;
        for (std::size_t r = 0; r < covers_.size(); ++r)
            if (mask_subset(m, covers_[r]) &&
                (pick < 0 || inst_.regions[r].weight < inst_.regions[pick].weight))
                pick = static_cast<int>(r);
        if (pick < 0) return std::nullopt;
        return make({pick}, {"single region"});
    }

    Solution greedy(const Mask& m) const {
        Mask left = m;
        std::vector<int> sel;
        while (!mask_empty(left)) {
            int pick = -1;
            Scalar best_ratio;
            for (std::size_t r = 0; r < covers_.size(); ++r) {
                std::size_t gain = mask_count(mask_and(covers_[r], left));
                if (gain == 0) continue;
                Scalar ratio = inst_.regions[r].weight / Scalar(static_cast<long>(gain));
                if (pick < 0 || ratio < best_ratio) {
                    pick = static_cast<int>(r);
                    best_ratio = ratio;
                }
            }
            if (pick < 0) throw Error(ErrorKind::Infeasible, "uncovered point");
            sel.push_back(pick);
            left = mask_minus(left, covers_[pick]);
        }
        return make(std::move(sel), {});
    }

    Mask covered_by(const std::vector<int>& sel) const {
        Mask c(covers_.empty() ? 0 : covers_[0].size(), 0);
        for (int r : sel)
            for (std::size_t i = 0; i < c.size(); ++i) c[i] |= covers_[r][i];
        return c;
    }

    template <class Offer>
    void try_split(const Mask& rem, const Mask& in, const Mask& ext, const std::vector<int>& pre,
                   const std::string& label, int depth, Offer& offer) {
        if (in == rem || ext == rem) return;  // no progress
        Solution a = solve(in, depth + 1);
        Solution b = solve(ext, depth + 1);
        std::vector<int> sel = pre;
        sel.insert(sel.end(), a.selected.begin(), a.selected.end());
        sel.insert(sel.end(), b.selected.begin(), b.selected.end());
        std::vector<std::string> prov{"d" + std::to_string(depth) + " " + label};
        prov.insert(prov.end(), a.provenance.begin(), a.provenance.end());
        prov.insert(prov.end(), b.provenance.begin(), b.provenance.end());
        offer(make(std::move(sel), std::move(prov)));
    }

    template <class Offer>
    void reference_node(const Mask& m, int depth, Offer& offer) {
        Solution q = cfg_.mode == DriverMode::Oracle ? exact_set_cover(sub(m), cfg_.exact_cap)
                                                     : greedy(m);
        // Select heavy members until none outweighs a third of the rest.
        std::vector<int> pre, rest = q.selected;
        Mask rem = m;
        while (!rest.empty()) {
            Scalar w = weight_of(inst_.regions, rest);
            std::vector<int> heavy, light;
            for (int r : rest) (3 * inst_.regions[r].weight > w ? heavy : light).push_back(r);
            if (heavy.empty()) break;
            pre.insert(pre.end(), heavy.begin(), heavy.end());
            rest = std::move(light);
            rem = mask_minus(rem, covered_by(heavy));
            if (mask_empty(rem)) break;
        }
        if (mask_empty(rem)) {
            offer(make(pre, {"d" + std::to_string(depth) + " heavy members"}));
            return;
        }
        std::vector<int> ids;
        SetCoverInstance s = sub(rem, &ids);
        // Drop members that no longer cover any remaining point.
        std::vector<int> q_rem;
        for (int r : rest)
            if (!mask_empty(mask_and(covers_[r], rem))) q_rem.push_back(r);
        const int seeds = cfg_.mode == DriverMode::Oracle ? 1 : std::max(1, cfg_.heuristic_seeds);
        bool any = false;
        for (int k = 0; k < seeds; ++k) {
            SetCoverSeparatorConfig sc;
            sc.c_tau = cfg_.c_tau;
            sc.seed = mix_seed(cfg_.seed, static_cast<std::uint64_t>(k + 1));
            sc.exact_cap = cfg_.exact_cap;
            ++stats_.separator_calls;
            try {
                auto rep = setcover_separator(s, q_rem, delta_, sc);
                std::vector<int> in, ext;
                for (int p : rep.points_in) in.push_back(ids[p]);
                for (int p : rep.points_ext) ext.push_back(ids[p]);
                const std::size_t bits = inst_.points.size();
                std::string label = "separator " + encoding_key(encode(rep.separator.curve));
                if (!pre.empty()) label += " after " + std::to_string(pre.size()) + " heavy";
                Mask mi = mask_of(bits, in), me = mask_of(bits, ext);
                if (mi != rem && me != rem) any = true;
                try_split(rem, mi, me, pre, label, depth, offer);
            } catch (const Error&) {
                ++stats_.separator_failures;
            }
        }
        if (!any) {
            Solution g = greedy(rem);
            std::vector<int> sel = pre;
            sel.insert(sel.end(), g.selected.begin(), g.selected.end());
            offer(make(std::move(sel), {"d" + std::to_string(depth) + " no separator, greedy"}));
        }
    }

    template <class Offer>
    void enumerate_node(const Mask& m, int depth, Offer& offer) {
        std::vector<int> touching;
        for (std::size_t r = 0; r < covers_.size(); ++r)
            if (!mask_empty(mask_and(covers_[r], m))) touching.push_back(static_cast<int>(r));
        std::vector<std::vector<int>> pres{{}};
        for (std::size_t a = 0; a < touching.size(); ++a) {
            pres.push_back({touching[a]});
            for (std::size_t b = a + 1; b < touching.size(); ++b)
                pres.push_back({touching[a], touching[b]});
        }
        for (const auto& pre : pres) {
            Mask rem = mask_minus(m, covered_by(pre));
            if (mask_empty(rem)) {
                offer(make(pre, {"d" + std::to_string(depth) + " preselected"}));
                continue;
            }
            std::set<std::pair<Mask, Mask>> seen;
            for (const auto& sp : splits_) {
                Mask in = mask_and(sp.in, rem), ext = mask_and(sp.ext, rem);
                if (!seen.insert({in, ext}).second) continue;
                std::string label = "separator " + sp.key;
                if (!pre.empty()) label += " after " + std::to_string(pre.size()) + " preselected";
                try_split(rem, in, ext, pre, label, depth, offer);
            }
        }
    }

    const SetCoverInstance& inst_;
    const DriverConfig& cfg_;
    Scalar delta_;
    int depth_cap_;
    double t0_;
    DriverStats& stats_;
    std::vector<Mask> covers_;
    std::vector<Split> splits_;
    std::map<std::pair<Mask, int>, Solution> memo_;
};

}  // namespace

const char* driver_mode_name(DriverMode mode) {
    switch (mode) {
        case DriverMode::Oracle: return "oracle";
        case DriverMode::Heuristic: return "heuristic";
        case DriverMode::Enumerate: return "enumerate";
    }
    return "?";
}

DriverMode parse_driver_mode(const std::string& name) {
    if (name == "oracle") return DriverMode::Oracle;
    if (name == "heuristic") return DriverMode::Heuristic;
    if (name == "enumerate") return DriverMode::Enumerate;
    throw Error(ErrorKind::InvalidInput, "unknown mode: " + name);
}

Scalar driver_delta(int n, const DriverConfig& cfg) {
    const double eps = to_double(cfg.eps);
    const double lg = std::log2(std::max(2.0, std::max(n, 1) / eps));
    Scalar d = snap(cfg.c_delta * eps / lg, 1L << 20);
    if (d <= 0) d = Scalar(1, 1L << 20);
    if (d > cfg.delta_clip) d = cfg.delta_clip;
    return d;
}

Solution qptas_set_cover(const SetCoverInstance& inst, const DriverConfig& cfg, DriverStats* stats) {
    if (cfg.eps <= 0 || cfg.eps >= 1) throw Error(ErrorKind::InvalidInput, "eps must lie in (0, 1)");
    DriverStats local;
    DriverStats& st = stats ? *stats : local;
    st = DriverStats{};
    coverage(inst);
    if (inst.points.empty()) return Solution{};
    const int n = static_cast<int>(inst.regions.size());
    st.delta = driver_delta(n, cfg);
    const double t0 = n / to_double(cfg.eps);
    st.depth_cap = cfg.depth_cap > 0
                       ? cfg.depth_cap
                       : static_cast<int>(std::ceil(cfg.c_l * std::log2(std::max(2.0, t0))));

    std::vector<NormalizedGuess> guesses = normalize_instance(inst, cfg.eps);
    std::vector<const NormalizedGuess*> chosen;
    if (!cfg.all_guesses && cfg.mode != DriverMode::Enumerate) {
        // The reference cover fixes the guess: its heaviest member and the
        // first weight level at or above its total.
        Solution ref = cfg.mode == DriverMode::Oracle ? exact_set_cover(inst, cfg.exact_cap)
                                                      : greedy_set_cover(inst);
        Scalar w_max = 0;
        for (int r : ref.selected) w_max = std::max(w_max, inst.regions[r].weight);
        for (const auto& g : guesses)
            if (g.feasible && g.w_max == w_max && g.w_aprx >= ref.weight) {
                chosen.push_back(&g);
                break;
            }
    }
    if (chosen.empty()) {
        // Guesses with equal kept sets differ only by a uniform scale.
        std::set<std::vector<int>> seen;
        for (const auto& g : guesses)
            if (g.feasible && seen.insert(g.kept).second) chosen.push_back(&g);
    }

    std::optional<Solution> best;
    for (const NormalizedGuess* g : chosen) {
        ++st.guesses;
        Driver driver(g->reduced, cfg, st.delta, st.depth_cap, t0, st);
        if (cfg.mode == DriverMode::Enumerate && !g->reduced.points.empty()) {
            SeparatorStream stream = enumerate_separators(g->reduced.regions, cfg.budget,
                                                          cfg.enumeration_cap);
            stream.set_points(g->reduced.points);
            std::set<std::pair<Mask, Mask>> seen;
            std::vector<Split> splits;
            const std::size_t bits = g->reduced.points.size();
            while (auto curve = stream.next()) {
                ++st.curves;
                const auto& sd = stream.sides();
                Split sp{mask_of(bits, sd.inside_points), mask_of(bits, sd.outside_points),
                         encoding_key(encode(*curve))};
                if (seen.insert({sp.in, sp.ext}).second) splits.push_back(std::move(sp));
            }
            st.splits += static_cast<int>(splits.size());
            driver.set_splits(std::move(splits));
        }
        Solution red = g->reduced.points.empty() ? Solution{} : driver.solve(driver.all_points(), 0);
        Solution full = complete_solution(inst, *g, red);
        if (!is_cover(inst, full.selected))
            throw Error(ErrorKind::Infeasible, "completed solution does not cover the points");
        full.provenance.insert(full.provenance.begin(),
                               "guess w_max=" + g->w_max.get_str() + " w_aprx=" + g->w_aprx.get_str());
        if (!best || full.weight < best->weight) best = std::move(full);
    }
    if (!best) throw Error(ErrorKind::Infeasible, "no feasible weight guess");
    return *best;
}

}  // namespace pdc
