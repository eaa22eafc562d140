#include "pdcover/solvers/mis.h"

#include "pdcover/geom/errors.h"
#include "pdcover/geom/random.h"
#include "pdcover/separator/encoding.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

namespace pdc {

namespace {

Solution make_solution(const std::vector<Region>& regions, std::vector<int> sel,
                       std::vector<std::string> prov = {}) {
    std::sort(sel.begin(), sel.end());
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
    Solution s;
    s.weight = weight_of(regions, sel);
    s.selected = std::move(sel);
    s.provenance = std::move(prov);
    return s;
}

Solution exact_on(const std::vector<Region>& regions, const std::vector<std::vector<int>>& adj,
                  const std::vector<int>& subset) {
    const int k = static_cast<int>(subset.size());
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return regions[subset[a]].weight > regions[subset[b]].weight;
    });
    std::map<int, int> local;
    for (int i = 0; i < k; ++i) local[subset[order[i]]] = i;
    std::vector<std::uint64_t> nb(k, 0);
    std::vector<Scalar> w(k);
    for (int i = 0; i < k; ++i) {
        int r = subset[order[i]];
        w[i] = regions[r].weight;
        for (int j : adj[r])
            if (auto it = local.find(j); it != local.end()) nb[i] |= std::uint64_t{1} << it->second;
    }
    std::vector<Scalar> suffix(k + 1, 0);
    for (int i = k - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + w[i];
    Scalar best = -1;
    std::uint64_t best_set = 0;
    auto rec = [&](auto&& self, int i, std::uint64_t banned, std::uint64_t chosen, const Scalar& cur) -> void {
        if (cur > best) {
            best = cur;
            best_set = chosen;
        }
        if (i >= k || cur + suffix[i] <= best) return;
        if (!(banned >> i & 1))
            self(self, i + 1, banned | nb[i], chosen | (std::uint64_t{1} << i), cur + w[i]);
        self(self, i + 1, banned, chosen, cur);
    };
    rec(rec, 0, 0, 0, Scalar(0));
    std::vector<int> sel;
    for (int i = 0; i < k; ++i)
        if (best_set >> i & 1) sel.push_back(subset[order[i]]);
    return make_solution(regions, std::move(sel), {"exact branch and bound"});
}

Solution greedy_on(const std::vector<Region>& regions, const std::vector<std::vector<int>>& adj,
                   const std::vector<int>& subset) {
    std::vector<int> order = subset;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return regions[a].weight > regions[b].weight; });
    std::vector<char> blocked(regions.size(), 0);
    std::vector<int> sel;
    for (int r : order) {
        if (blocked[r]) continue;
        sel.push_back(r);
        for (int j : adj[r]) blocked[j] = 1;
    }
    return make_solution(regions, std::move(sel), {"greedy"});
}

class MisDriver {
public:
    MisDriver(const std::vector<Region>& regions, const DriverConfig& cfg, const Scalar& delta,
              int depth_cap, double t0, MisStats& stats)
        : regions_(regions), adj_(intersection_graph(regions)), cfg_(cfg), delta_(delta),
          depth_cap_(depth_cap), t0_(t0), stats_(stats) {}

    Solution solve(const std::vector<int>& subset, int depth) {
        if (subset.empty()) return Solution{};
        auto key = std::make_pair(subset, depth);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        ++stats_.nodes;
        int heaviest = subset.front();
        for (int r : subset)
            if (regions_[r].weight > regions_[heaviest].weight) heaviest = r;
        Solution best = make_solution(regions_, {heaviest}, {"single region"});
        auto offer = [&](Solution s) {
            if (s.weight > best.weight) best = std::move(s);
        };
        const double estimate = t0_ * std::pow(5.0 / 6.0, depth);
        if (estimate < 2 || depth >= depth_cap_) {
            ++stats_.base_cases;
            Solution g = greedy_on(regions_, adj_, subset);
            g.provenance = {"base d" + std::to_string(depth) + " greedy"};
            offer(std::move(g));
        } else {
            split(subset, depth, offer);
        }
        memo_[key] = best;
        return best;
    }

private:
    template <class Offer>
    void split(const std::vector<int>& subset, int depth, Offer& offer) {
        Solution ref = cfg_.mode == DriverMode::Oracle ? exact_on(regions_, adj_, subset)
                                                       : greedy_on(regions_, adj_, subset);
        // Heavy members are taken outright together with their exclusion zone.
        std::vector<int> pre, rest = ref.selected;
        std::vector<char> removed(regions_.size(), 0);
        while (!rest.empty()) {
            Scalar w = weight_of(regions_, rest);
            std::vector<int> heavy, light;
            for (int r : rest) (3 * regions_[r].weight > w ? heavy : light).push_back(r);
            if (heavy.empty()) break;
            for (int h : heavy) {
                pre.push_back(h);
                removed[h] = 1;
                for (int j : adj_[h]) removed[j] = 1;
            }
            rest = std::move(light);
        }
        std::vector<int> rem;
        for (int r : subset)
            if (!removed[r]) rem.push_back(r);
        if (rem.empty()) {
            offer(make_solution(regions_, pre, {"d" + std::to_string(depth) + " heavy members"}));
            return;
        }
        const int seeds = cfg_.mode == DriverMode::Oracle ? 1 : std::max(1, cfg_.heuristic_seeds);
        bool any = false;
        for (int k = 0; k < seeds && rest.size() >= 2; ++k) {
            std::vector<Region> family;
            for (int r : rest) {
                family.push_back(regions_[r]);
                family.back().id = static_cast<int>(family.size()) - 1;
                for (auto& piece : family.back().monotone_pieces) piece.region_id = family.back().id;
            }
            SeparatorConfig sc;
            sc.seed = mix_seed(cfg_.seed, static_cast<std::uint64_t>(k + 1));
            ++stats_.separator_calls;
            try {
                SeparatorReport rep = weighted_region_separator(family, delta_, sc);
                std::vector<Region> cand;
                for (int r : rem) cand.push_back(regions_[r]);
                SideClassification sides = classify(rep.curve, cand);
                std::vector<int> left, right;
                for (int i : sides.inside) left.push_back(rem[i]);
                for (int i : sides.outside) right.push_back(rem[i]);
                if (left.size() == rem.size() || right.size() == rem.size()) continue;
                any = true;
                Solution a = solve(left, depth + 1);
                Solution b = solve(right, depth + 1);
                std::vector<int> sel = pre;
                sel.insert(sel.end(), a.selected.begin(), a.selected.end());
                sel.insert(sel.end(), b.selected.begin(), b.selected.end());
                std::vector<std::string> prov{"d" + std::to_string(depth) + " separator " +
                                              encoding_key(encode(rep.curve))};
                prov.insert(prov.end(), a.provenance.begin(), a.provenance.end());
                prov.insert(prov.end(), b.provenance.begin(), b.provenance.end());
                offer(make_solution(regions_, std::move(sel), std::move(prov)));
            } catch (const Error&) {
                ++stats_.separator_failures;
            }
        }
        if (!any) {
            Solution g = greedy_on(regions_, adj_, rem);
            std::vector<int> sel = pre;
            sel.insert(sel.end(), g.selected.begin(), g.selected.end());
            offer(make_solution(regions_, std::move(sel),
                                {"d" + std::to_string(depth) + " no separator, greedy"}));
        }
    }

    const std::vector<Region>& regions_;
    std::vector<std::vector<int>> adj_;
    const DriverConfig& cfg_;
    Scalar delta_;
    int depth_cap_;
    double t0_;
    MisStats& stats_;
    std::map<std::pair<std::vector<int>, int>, Solution> memo_;
};

}  // namespace

std::vector<std::vector<int>> intersection_graph(const std::vector<Region>& regions) {
    const std::size_t n = regions.size();
    std::vector<BBox> boxes;
    for (const auto& r : regions) boxes.push_back(bbox_of(r.boundary));
    std::vector<std::vector<int>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!bbox_overlap(boxes[i], boxes[j])) continue;
            if (relate(regions[i].boundary, regions[j].boundary).int_int) {
                adj[i].push_back(static_cast<int>(j));
                adj[j].push_back(static_cast<int>(i));
            }
        }
    return adj;
}

bool is_independent(const std::vector<Region>& regions, const std::vector<int>& selected) {
    for (std::size_t a = 0; a < selected.size(); ++a)
        for (std::size_t b = a + 1; b < selected.size(); ++b) {
            if (selected[a] == selected[b]) return false;
            if (relate(regions[selected[a]].boundary, regions[selected[b]].boundary).int_int)
                return false;
        }
    return true;
}

Solution exact_mis(const std::vector<Region>& regions, int cap) {
    if (static_cast<int>(regions.size()) > std::min(cap, 64))
        throw Error(ErrorKind::TooLarge, "exact independent set above the region cap");
    std::vector<int> all(regions.size());
    std::iota(all.begin(), all.end(), 0);
    return exact_on(regions, intersection_graph(regions), all);
}

Solution greedy_mis(const std::vector<Region>& regions) {
    std::vector<int> all(regions.size());
    std::iota(all.begin(), all.end(), 0);
    return greedy_on(regions, intersection_graph(regions), all);
}

Solution qptas_independent_set(const std::vector<Region>& regions, const DriverConfig& cfg,
                               MisStats* stats) {
    if (cfg.eps <= 0 || cfg.eps >= 1) throw Error(ErrorKind::InvalidInput, "eps must lie in (0, 1)");
    if (cfg.mode == DriverMode::Enumerate)
        throw Error(ErrorKind::InvalidInput, "independent set supports oracle and heuristic modes");
    MisStats local;
    MisStats& st = stats ? *stats : local;
    st = MisStats{};
    if (regions.empty()) return Solution{};
    const int n = static_cast<int>(regions.size());
    Scalar m = 0;
    for (const auto& r : regions) m = std::max(m, r.weight);
    if (m <= 0) return Solution{};
    // Drop light regions and rescale so weights lie in [1, n / eps].
    const Scalar cut = cfg.eps * m / Scalar(n);
    const Scalar scale = Scalar(n) / (cfg.eps * m);
    std::vector<Region> kept;
    std::vector<int> origin;
    for (int i = 0; i < n; ++i) {
        if (regions[i].weight < cut) {
            ++st.filtered;
            continue;
        }
        Region copy = regions[i];
        copy.weight *= scale;
        copy.id = static_cast<int>(kept.size());
        for (auto& piece : copy.monotone_pieces) piece.region_id = copy.id;
        kept.push_back(std::move(copy));
        origin.push_back(i);
    }
    st.delta = driver_delta(n, cfg);
    const double t0 = n / to_double(cfg.eps);
    st.depth_cap = cfg.depth_cap > 0
                       ? cfg.depth_cap
                       : static_cast<int>(std::ceil(cfg.c_l * std::log2(std::max(2.0, t0))));
    MisDriver driver(kept, cfg, st.delta, st.depth_cap, t0, st);
    std::vector<int> all(kept.size());
    std::iota(all.begin(), all.end(), 0);
    Solution red = driver.solve(all, 0);
    std::vector<int> sel;
    for (int r : red.selected) sel.push_back(origin[r]);
    Solution out = make_solution(regions, std::move(sel), red.provenance);
    if (!is_independent(regions, out.selected))
        throw Error(ErrorKind::InvalidInput, "separator recursion produced intersecting regions");
    return out;
}

}  // namespace pdc
