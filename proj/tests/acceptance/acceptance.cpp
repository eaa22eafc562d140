// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails. Pass criterion numbers as arguments to run a subset.

#include "pdcover/cores/cores.h"
#include "pdcover/geom/arrangement.h"
#include "pdcover/geom/errors.h"
#include "pdcover/geom/instance_io.h"
#include "pdcover/geom/random.h"
#include "pdcover/halfspace3d/driver.h"
#include "pdcover/partition/trapezoid.h"
#include "pdcover/separator/encoding.h"
#include "pdcover/separator/separator.h"
#include "pdcover/solvers/mis.h"
#include "pdcover/solvers/qptas.h"
#include "pdcover/solvers/setcover.h"
#include "pdcover_tools/bench.h"
#include "pdcover_tools/generators.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace pdc;
using tools::WeightLaw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void note(const std::string& s) { details.push_back(s); }
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (details.size() < 40) details.push_back("violated: " + what);
        }
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string fmt(const Scalar& v) { return fmt(to_double(v)); }

std::uint64_t seed_for(int criterion, std::uint64_t index) {
    return mix_seed(static_cast<std::uint64_t>(criterion), index);
}

WeightLaw mixed(std::uint64_t i) { return i % 2 ? WeightLaw::Uniform10 : WeightLaw::Unit; }

Scalar area_of_faces(const CoreDecomposition& dec, int i) {
    Scalar a = 0;
    const auto& faces = dec.context->overlay.faces();
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (dec.cores[i].faces[f]) a += faces[f].area;
    return a;
}

// 1. Single push.
Outcome pusher_suite() {
    Outcome out;
    auto t0 = Clock::now();
    int families = 0, probes = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const int n = 2 + static_cast<int>(i % 9);
        auto regs = tools::disk_polygons(n, 16, mixed(i), seed_for(1, i));
        auto pts = tools::clustered_points(regs, 20, seed_for(1, 1000 + i));
        auto ctx = make_core_context(regs);
        const int pusher = static_cast<int>(i % regs.size());
        CoreDecomposition dec = push(ctx, pusher);
        CoreReport rep = verify_core_decomposition(regs, dec, pts);
        for (const auto& m : rep.messages) out.require(false, "family " + std::to_string(i) + ": " + m);
        probes += rep.probes;
        // Face areas give an independent view of containment.
        for (std::size_t r = 0; r < regs.size(); ++r) {
            Scalar a = area_of_faces(dec, static_cast<int>(r));
            if (static_cast<int>(r) == pusher)
                out.require(a == area(regs[r].boundary), "pusher area in family " + std::to_string(i));
            else
                out.require(a <= area(regs[r].boundary), "core area in family " + std::to_string(i));
        }
        ++families;
    }
    const double secs = seconds_since(t0);
    out.require(secs <= 120, "runtime " + fmt(secs) + " s > 120 s");
    out.note(std::to_string(families) + " families, " + std::to_string(probes) + " probes, " +
             fmt(secs) + " s");
    return out;
}

/// Exact average of the core vertex cost over every push order, each order
/// weighted by its probability under sequential weighted sampling.
Scalar exhaustive_expectation(const std::shared_ptr<const CoreContext>& ctx) {
    const auto& regs = ctx->regions;
    std::vector<int> order(regs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    Scalar expect = 0;
    do {
        Scalar p = 1, rest = 0;
        for (const auto& r : regs) rest += r.weight;
        for (int k : order) {
            p *= regs[k].weight / rest;
            rest -= regs[k].weight;
        }
        expect += p * core_vertex_cost(disjoint_core_decomposition(ctx, order)).cost;
    } while (std::next_permutation(order.begin(), order.end()));
    return expect;
}

// 2. Disjoint decomposition.
Outcome disjoint_suite() {
    Outcome out;
    auto t0 = Clock::now();
    int vertices = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const int n = 2 + static_cast<int>(i % 9);
        for (WeightLaw law : {WeightLaw::Unit, WeightLaw::Uniform10}) {
            auto regs = tools::disk_polygons(n, 16, law, seed_for(1, i));
            auto pts = tools::clustered_points(regs, 20, seed_for(1, 1000 + i));
            CoreDecomposition dec = disjoint_core_decomposition(regs, seed_for(2, i));
            CoreReport rep = verify_core_decomposition(regs, dec, pts);
            for (const auto& m : rep.messages) out.require(false, "family " + std::to_string(i) + ": " + m);
            vertices += rep.vertices_checked;
        }
    }
    out.note("structure: 400 decompositions, " + std::to_string(vertices) +
             " core vertices checked, " + fmt(seconds_since(t0)) + " s");

    // Exhaustive expectation identity.
    int exact = 0, refined_exact = 0, instances = 0;
    for (int n = 4; n <= 8; ++n) {
        for (WeightLaw law : {WeightLaw::Unit, WeightLaw::Uniform10}) {
            if (law == WeightLaw::Uniform10 && n == 8) continue;
            auto regs = tools::disk_polygons(n, 16, law, seed_for(2, 5000 + n));
            auto ctx = make_core_context(regs);
            Scalar avg = exhaustive_expectation(ctx);
            // Any order gives the same closed forms.
            CoreCost c = core_vertex_cost(disjoint_core_decomposition(ctx, std::vector<int>(
                [&] { std::vector<int> o(n); for (int k = 0; k < n; ++k) o[k] = k; return o; }())));
            int deep = 0;
            for (const auto& v : ctx->arrangement.vertices) deep += v.depth_count >= 2;
            ++instances;
            exact += avg == c.closed_form;
            refined_exact += avg == c.refined_expectation;
            out.require(avg == c.closed_form,
                        "n=" + std::to_string(n) + (law == WeightLaw::Unit ? " unit" : " weighted") +
                            ": average " + fmt(avg) + " != closed form " + fmt(c.closed_form) +
                            " (vertices with >= 2 containers: " + std::to_string(deep) + ")");
        }
    }
    out.note("expectation identity: " + std::to_string(exact) + "/" + std::to_string(instances) +
             " equal the closed form, " + std::to_string(refined_exact) + "/" +
             std::to_string(instances) + " equal the refined expectation");

    // Growth of the mean cost, gated on unit weights; weighted values are reported.
    auto growth = [&](int n, WeightLaw law) {
        double sum = 0;
        for (std::uint64_t s = 0; s < 50; ++s) {
            auto regs = tools::disk_polygons(n, 16, law, seed_for(2, 9000 + 100 * n + s));
            const double w = to_double(total_weight(regs));
            CoreCost c = core_vertex_cost(disjoint_core_decomposition(regs, seed_for(2, 20000 + s)));
            sum += to_double(c.cost) / (w * (1 + std::log(w)));
        }
        return sum / 50;
    };
    const double g10 = growth(10, WeightLaw::Unit), g40 = growth(40, WeightLaw::Unit);
    out.require(g40 <= 1.5 * g10, "growth " + fmt(g40) + " > 1.5 x " + fmt(g10));
    out.note("mean cost / (W(1+ln W)), unit weights: n=10 " + fmt(g10) + ", n=40 " + fmt(g40) +
             ", quotient " + fmt(g40 / g10));
    const double h10 = growth(10, WeightLaw::Uniform10), h40 = growth(40, WeightLaw::Uniform10);
    out.note("same with weights 1-10 (reported): n=10 " + fmt(h10) + ", n=40 " + fmt(h40) +
             ", quotient " + fmt(h40 / h10));
    out.note(fmt(seconds_since(t0)) + " s");
    return out;
}

// 3. Depth-bucketed sums.
Outcome cs_suite() {
    Outcome out;
    auto t0 = Clock::now();
    double fitted = 0;
    auto ratio = [&](int n) {
        double sum = 0;
        std::string per;
        for (std::uint64_t s = 0; s < 20; ++s) {
            auto regs = tools::disk_polygons(n, 16, WeightLaw::Uniform10, seed_for(3, 100 * n + s));
            Arrangement arr = build_arrangement(regs);
            const Scalar w = total_weight(regs);
            Scalar best = 0;
            for (Scalar k = 1; k <= w; k *= 2) best = std::max(best, Scalar(cs_sum(arr, k) / w));
            sum += to_double(best);
            fitted = std::max(fitted, to_double(best));
            per += (per.empty() ? "" : " ") + fmt(to_double(best), 3);
        }
        out.note("n=" + std::to_string(n) + " per instance: " + per);
        return sum / 20;
    };
    const double r10 = ratio(10), r20 = ratio(20), r40 = ratio(40);
    out.require(r40 <= 3 * r10, "ratio(40) " + fmt(r40) + " > 3 ratio(10) " + fmt(r10));
    const double secs = seconds_since(t0);
    out.require(secs <= 300, "runtime " + fmt(secs) + " s > 300 s");
    out.note("fitted C (largest cs_sum/W over all instances and k): " + fmt(fitted));
    out.note("mean max_k cs_sum/W: n=10 " + fmt(r10) + ", n=20 " + fmt(r20) + ", n=40 " + fmt(r40) +
             ", " + fmt(secs) + " s");
    return out;
}

// 4. Weighted separator.
Outcome weighted_separator_suite() {
    Outcome out;
    const Scalar delta(1, 5);
    double fitted_max = 0, fitted_sum = 0;
    int runs = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const int n = 20 + static_cast<int>(i % 10) * 20;
        auto regs = tools::disjoint_polygons(n, 6 + static_cast<int>(i % 4) * 2, WeightLaw::Uniform10,
                                             seed_for(4, i));
        const Scalar w = total_weight(regs);
        SeparatorConfig cfg;
        cfg.seed = seed_for(4, 500 + i);
        SeparatorReport rep = weighted_region_separator(regs, delta, cfg);
        SideClassification side = classify(rep.curve, regs);
        Scalar in = 0, ext = 0, cross = 0;
        for (int k : side.inside) in += regs[k].weight;
        for (int k : side.outside) ext += regs[k].weight;
        for (int k : side.crossing) cross += regs[k].weight;
        const std::string tag = "instance " + std::to_string(i);
        out.require(cross <= delta * w, tag + ": crossing " + fmt(cross / w) + " W");
        out.require(3 * in <= 2 * w && 3 * ext <= 2 * w, tag + ": unbalanced");
        const double fitted = rep.curve.complexity() / (rep.alpha / to_double(delta));
        fitted_max = std::max(fitted_max, fitted);
        fitted_sum += fitted;
        ++runs;
    }
    out.note(std::to_string(runs) + " families, complexity/(alpha/delta): mean " +
             fmt(fitted_sum / runs) + ", max " + fmt(fitted_max));

    std::string floor;
    for (auto [d, c] : std::vector<std::pair<Scalar, int>>{{Scalar(1, 4), 1}, {Scalar(1, 4), 2},
                                                           {Scalar(1, 6), 1}, {Scalar(1, 8), 1}}) {
        auto rings = lower_bound_instance(d, c, 8);
        try {
            SeparatorReport rep = weighted_region_separator(rings, d);
            const double want = c / to_double(d) - 2;
            floor += " [delta " + format_scalar(d) + ", c " + std::to_string(c) + ": complexity " +
                     std::to_string(rep.curve.complexity()) + (rep.curve.complexity() >= want ? " >= " : " < ") +
                     fmt(want) + "]";
        } catch (const Error& e) {
            floor += " [delta " + format_scalar(d) + ", c " + std::to_string(c) + ": " + e.what() + "]";
        }
    }
    out.note("lower-bound rings (recorded):" + floor);
    return out;
}

/// Canonical trapezoids of all subsets of at most four segments, each
/// counted once, bucketed by how many segments meet their interior.
std::vector<long> shallow_counts(const CurveSet& set, int kmax) {
    const int n = set.groups();
    const BBox box = frame_of(set);
    std::vector<std::set<Polygon>> seen(kmax + 1);
    std::vector<int> sub;
    std::function<void(int)> visit = [&](int from) {
        if (!sub.empty()) {
            Partition p = decompose(set, sub, box);
            for (const auto& c : p.cells) {
                if (c.determining != sub) continue;
                const int cnt = static_cast<int>(c.conflicts.size());
                for (int k = cnt; k <= kmax; ++k) seen[k].insert(normalize_ring(c.boundary));
            }
        }
        if (sub.size() == 4) return;
        for (int i = from; i < n; ++i) {
            sub.push_back(i);
            visit(i + 1);
            sub.pop_back();
        }
    };
    visit(0);
    std::vector<long> out;
    for (const auto& s : seen) out.push_back(static_cast<long>(s.size()));
    return out;
}

CurveSet segment_set(const std::vector<tools::Segment>& segs) {
    CurveSet set;
    set.curves = tools::segment_curves(segs);
    set.weights.assign(segs.size(), 1);
    set.solids.assign(segs.size(), {});
    return set;
}

long crossing_count(const std::vector<tools::Segment>& segs) {
    long m = 0;
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j)
            m += intersect_segments(segs[i].a, segs[i].b, segs[j].a, segs[j].b).kind == SegmentRelation::Cross;
    return m;
}

// 5. Sampled partition.
Outcome partition_suite() {
    Outcome out;
    auto t0 = Clock::now();
    const int n = 40;
    for (long r : {5L, 10L, 20L}) {
        double sum = 0;
        for (std::uint64_t s = 0; s < 20; ++s) {
            auto segs = tools::random_segments(n, 5, 25, false, seed_for(5, 100 * r + s));
            CurveSet set = segment_set(segs);
            Partition part = sample_partition(set, r, seed_for(5, 10000 + s));
            PartitionCheck chk = verify_partition(set, part);
            out.require(chk.ok(), "r=" + std::to_string(r) + " seed " + std::to_string(s) +
                                      ": max cell weight " + fmt(chk.max_conflict_weight));
            const double m = static_cast<double>(crossing_count(segs));
            sum += part.cells.size() / (r + m * r * r / (double(n) * n));
        }
        const double mean = sum / 20;
        out.require(mean <= 4, "r=" + std::to_string(r) + ": mean normalized cell count " + fmt(mean));
        out.note("r=" + std::to_string(r) + ": mean cells / (r + m r^2/n^2) = " + fmt(mean) +
                 ", per-cell bound held on 20 runs");
    }

    // Shallow canonical trapezoids: the constant fitted at k = 1 must cover k = 2, 3.
    double c1 = 0, c_all = 0;
    std::vector<std::vector<double>> ratios;
    for (std::uint64_t s = 0; s < 6; ++s) {
        const int m_n = 7 + static_cast<int>(s);
        auto segs = tools::random_segments(m_n, 10, 40, false, seed_for(5, 50000 + s));
        const long m = crossing_count(segs);
        auto counts = shallow_counts(segment_set(segs), 3);
        out.require(counts[0] == 3 * m_n + 3 * m + 1, "k=0 count differs from 3n + 3m + 1");
        std::vector<double> row;
        for (int k = 1; k <= 3; ++k) {
            const double bound = double(m_n) * k * k * k + double(m) * k * k;
            row.push_back(counts[k] / bound);
            c_all = std::max(c_all, counts[k] / bound);
        }
        c1 = std::max(c1, row[0]);
        ratios.push_back(row);
    }
    std::string rows;
    for (const auto& row : ratios) rows += " [" + fmt(row[0], 3) + " " + fmt(row[1], 3) + " " + fmt(row[2], 3) + "]";
    out.require(c_all <= c1, "fitted constant grows with k: " + fmt(c_all) + " > " + fmt(c1));
    out.note("shallow trapezoids, count/(nk^3 + mk^2) for k=1,2,3:" + rows + "; fitted C = " + fmt(c1));
    out.note(fmt(seconds_since(t0)) + " s");
    return out;
}

SetCoverInstance cover_instance(int criterion, std::uint64_t i, int n, int points, WeightLaw law,
                                int k = 16) {
    auto regs = tools::disk_polygons(n, k, law, seed_for(criterion, i));
    return {regs, tools::clustered_points(regs, points, seed_for(criterion, 100000 + i))};
}

// 6. Cover separator bounds.
Outcome cover_separator_suite() {
    Outcome out;
    int done = 0, heavy = 0, draws = 0;
    for (std::uint64_t i = 0; done < 100 && draws < 1000; ++i, ++draws) {
        auto inst = cover_instance(6, i, 3 + static_cast<int>(i % 8), 30, mixed(i));
        Solution opt = exact_set_cover(inst);
        SetCoverSeparatorConfig cfg;
        cfg.evaluate_bounds = true;
        cfg.seed = seed_for(6, 7000 + i);
        try {
            auto rep = setcover_separator(inst, opt.selected, Scalar(1, 10), cfg);
            const std::string tag = "instance " + std::to_string(i);
            out.require(rep.inside_bound, tag + ": inside " + fmt(*rep.opt_in) + " vs opt " + fmt(*rep.opt));
            out.require(rep.outside_bound, tag + ": outside " + fmt(*rep.opt_ext) + " vs opt " + fmt(*rep.opt));
            out.require(rep.sum_bound, tag + ": sum bound");
            ++done;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::HeavyMember) {
                out.require(false, "instance " + std::to_string(i) + ": " + e.what());
                ++done;
            } else {
                ++heavy;
            }
        }
    }
    out.require(done == 100, "only " + std::to_string(done) + " instances evaluated");
    out.note(std::to_string(done) + " instances evaluated, " + std::to_string(heavy) +
             " redrawn because an optimum member outweighs a third of the optimum");
    return out;
}

// 7. Cover driver end to end.
Outcome driver_suite() {
    Outcome out;
    auto t0 = Clock::now();
    double worst = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto inst = cover_instance(7, i, 3 + static_cast<int>(i % 10), 40, mixed(i));
        const Scalar opt = exact_set_cover(inst).weight;
        DriverConfig cfg;
        cfg.seed = seed_for(7, 500 + i);
        Solution sol = qptas_set_cover(inst, cfg);
        const std::string tag = "instance " + std::to_string(i);
        out.require(is_cover(inst, sol.selected), tag + ": not a cover");
        out.require(sol.weight <= Scalar(3, 2) * opt, tag + ": ratio " + fmt(sol.weight / opt));
        worst = std::max(worst, to_double(sol.weight / opt));
    }
    const double secs = seconds_since(t0);
    out.require(secs <= 600, "runtime " + fmt(secs) + " s > 600 s");
    out.note("oracle mode: 100 instances, worst ratio " + fmt(worst) + ", " + fmt(secs) + " s");

    auto t1 = Clock::now();
    double worst_enum = 0;
    long curves = 0;
    const std::vector<int> sizes{3, 4, 4, 5, 6};
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        auto inst = cover_instance(7, 9000 + i, sizes[i], 20, mixed(i), 8);
        const Scalar opt = exact_set_cover(inst).weight;
        DriverConfig cfg;
        cfg.mode = DriverMode::Enumerate;
        cfg.budget = 8;
        DriverStats st;
        Solution sol = qptas_set_cover(inst, cfg, &st);
        curves += st.curves;
        const std::string tag = "enumerate n=" + std::to_string(sizes[i]);
        out.require(is_cover(inst, sol.selected), tag + ": not a cover");
        out.require(sol.weight <= Scalar(3, 2) * opt, tag + ": ratio " + fmt(sol.weight / opt));
        worst_enum = std::max(worst_enum, to_double(sol.weight / opt));
    }
    out.note("enumerate mode, budget 8: " + std::to_string(sizes.size()) + " instances (n <= 6), worst ratio " +
             fmt(worst_enum) + ", " + std::to_string(curves) + " curves, " + fmt(seconds_since(t1)) + " s");
    return out;
}

// 8. Weight normalization.
Outcome normalization_suite() {
    Outcome out;
    double worst = 0;
    for (Scalar eps : {Scalar(3, 10), Scalar(1, 2)}) {
        for (std::uint64_t i = 0; i < 100; ++i) {
            auto inst = cover_instance(8, i, 3 + static_cast<int>(i % 8), 30, WeightLaw::Uniform10);
            const Scalar opt = exact_set_cover(inst).weight;
            std::optional<Solution> best;
            for (const auto& g : normalize_instance(inst, eps)) {
                if (!g.feasible) continue;
                Solution full = complete_solution(inst, g, exact_set_cover(g.reduced));
                if (!best || full.weight < best->weight) best = full;
            }
            const std::string tag = "eps " + format_scalar(eps) + " instance " + std::to_string(i);
            out.require(best.has_value(), tag + ": no feasible guess");
            if (!best) continue;
            out.require(is_cover(inst, best->selected), tag + ": not a cover");
            out.require(best->weight <= (1 + eps) * opt, tag + ": ratio " + fmt(best->weight / opt));
            worst = std::max(worst, to_double(best->weight / opt));
        }
    }
    out.note("200 runs (eps 0.3 and 0.5), worst ratio " + fmt(worst));
    return out;
}

// 9. Independent set.
Outcome mis_suite() {
    Outcome out;
    double worst = 1;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(i % 13);
        auto regs = tools::segment_regions(tools::random_segments(n, 10, 40, false, seed_for(9, i)),
                                           WeightLaw::Uniform10, seed_for(9, 500 + i));
        const Scalar opt = exact_mis(regs).weight;
        DriverConfig cfg;
        cfg.seed = seed_for(9, 900 + i);
        Solution sol = qptas_independent_set(regs, cfg);
        const std::string tag = "instance " + std::to_string(i);
        out.require(is_independent(regs, sol.selected), tag + ": not independent");
        out.require(2 * sol.weight >= opt, tag + ": ratio " + fmt(sol.weight / opt));
        worst = std::min(worst, to_double(sol.weight / opt));
    }
    out.note("100 instances, worst ratio " + fmt(worst));
    return out;
}

// 10. Halfspaces in space.
Outcome halfspace_suite() {
    Outcome out;
    auto t0 = Clock::now();
    std::vector<HalfspaceInstance> corpus;

    int tuples = 0;
    for (std::uint64_t i = 0; i < 30; ++i) {
        auto inst = tools::random_halfspaces(5 + static_cast<int>(i % 6), 0, 0.5, WeightLaw::Uniform10,
                                             seed_for(10, i));
        const auto& h = inst.halfspaces;
        const int n = static_cast<int>(h.size());
        std::optional<Scalar> best;
        for (unsigned m = 1; m < (1u << n); ++m) {
            std::vector<int> sel;
            Scalar w = 0;
            for (int k = 0; k < n; ++k)
                if (m >> k & 1) {
                    sel.push_back(k);
                    w += h[k].weight;
                }
            if (best && w >= *best) continue;
            if (!point_outside(h, sel)) best = w;
        }
        auto helly = helly_small_cover(h);
        const std::string tag = "instance " + std::to_string(i);
        out.require(helly.has_value() == best.has_value(), tag + ": tuple existence differs");
        if (helly && best) {
            ++tuples;
            out.require(helly->weight == *best, tag + ": tuple " + fmt(helly->weight) + " vs " + fmt(*best));
        }
        corpus.push_back(inst);
    }
    out.note("covering tuples: " + std::to_string(tuples) + " of 30 instances have one, all minimum");

    int separators = 0, heavy_facets = 0;
    long unbalanced = 0, conservation = 0, net_cuts = 0;
    double worst = 0;
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto inst = tools::random_halfspaces(6 + static_cast<int>(i % 5), 30, i % 3 == 0 ? 0.2 : 0.0,
                                             mixed(i), seed_for(10, 1000 + i));
        corpus.push_back(inst);
        const Solution opt = exact_halfspace_cover(inst);
        if (auto o = point_outside(inst.halfspaces, opt.selected)) {
            try {
                auto rep = halfspace_separator(inst, opt.selected, *o, Scalar(1, 10), Scalar(1, 5),
                                               seed_for(10, 2000 + i));
                ++separators;
                conservation += !rep.conserved;
                unbalanced += !rep.separator.balanced;
                net_cuts += rep.split.net_core_violations;
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::Unbalanced)
                    ++heavy_facets;
                else
                    out.require(false, "instance " + std::to_string(i) + ": " + e.what());
            }
        }
        DriverConfig cfg;
        cfg.seed = seed_for(10, 3000 + i);
        HalfspaceStats st;
        Solution sol = qptas_halfspace_cover(inst, cfg, &st);
        conservation += st.conservation_failures;
        unbalanced += st.unbalanced;
        net_cuts += st.net_core_violations;
        const std::string tag = "driver instance " + std::to_string(i);
        out.require(is_halfspace_cover(inst, sol.selected), tag + ": not a cover");
        out.require(sol.weight <= Scalar(3, 2) * opt.weight, tag + ": ratio " + fmt(sol.weight / opt.weight));
        worst = std::max(worst, to_double(sol.weight / opt.weight));
    }
    out.require(conservation == 0, std::to_string(conservation) + " facet-weight conservation failures");
    out.require(unbalanced == 0, std::to_string(unbalanced) + " unbalanced skeleton separators");
    out.require(net_cuts == 0, std::to_string(net_cuts) + " net cores cut by the cone");
    out.note(std::to_string(separators) + " standalone separators (" + std::to_string(heavy_facets) +
             " skipped: a facet outweighs a third), driver worst ratio " + fmt(worst));

    int vc = 0, k4 = 0;
    for (const auto& inst : corpus) {
        VcReport rep = vc_shatter_check(inst.halfspaces);
        vc = std::max(vc, rep.max_shattered);
        k4 = std::max(k4, rep.max_realized_k4);
    }
    out.require(vc <= 3, "shattered a set of size " + std::to_string(vc));
    out.require(k4 <= 15, std::to_string(k4) + " sets realized on four halfspaces");
    out.note("largest shattered set " + std::to_string(vc) + ", most realized sets on four " +
             std::to_string(k4) + ", over " + std::to_string(corpus.size()) + " instances");
    out.note(fmt(seconds_since(t0)) + " s");
    return out;
}

std::string serialize(const Solution& s) {
    std::ostringstream os;
    for (int k : s.selected) os << k << ",";
    os << "|" << format_scalar(s.weight);
    return os.str();
}

// 11. Determinism.
Outcome determinism_suite() {
    Outcome out;
    const std::uint64_t seed = 12345;
    std::vector<std::pair<std::string, std::function<std::string()>>> pipelines{
        {"generators",
         [&] {
             auto regs = tools::disk_polygons(10, 12, WeightLaw::Uniform10, seed);
             return write_planar_instance({tools::clustered_points(regs, 20, seed), regs}) +
                    write_halfspace_instance(tools::random_halfspaces(8, 20, 0.3, WeightLaw::Unit, seed));
         }},
        {"sampled partition",
         [&] {
             CurveSet set = segment_set(tools::random_segments(30, 5, 25, false, seed));
             Partition p = sample_partition(set, 8, seed);
             std::string s;
             for (const auto& c : p.cells)
                 for (const auto& v : c.boundary) s += format_scalar(v.x) + "," + format_scalar(v.y) + ";";
             return s;
         }},
        {"weighted separator",
         [&] {
             SeparatorConfig cfg;
             cfg.seed = seed;
             auto regs = tools::disjoint_polygons(60, 8, WeightLaw::Uniform10, seed);
             return encoding_key(encode(weighted_region_separator(regs, Scalar(1, 5), cfg).curve));
         }},
        {"intersecting separator",
         [&] {
             SeparatorConfig cfg;
             cfg.seed = seed;
             auto regs = tools::disk_polygons(15, 10, WeightLaw::Unit, seed);
             return encoding_key(encode(intersecting_region_separator(regs, 15, cfg).curve));
         }},
        {"core decompositions",
         [&] {
             auto regs = tools::disk_polygons(10, 12, WeightLaw::Uniform10, seed);
             auto d = disjoint_core_decomposition(regs, seed);
             auto u = uniform_core_decomposition(regs, UniformConfig{}, seed);
             std::string s;
             for (int k : d.order) s += std::to_string(k) + ",";
             for (int k : u.net) s += std::to_string(k) + ";";
             return s + format_scalar(core_vertex_cost(d).cost);
         }},
        {"cover driver",
         [&] {
             auto inst = cover_instance(11, 0, 9, 40, WeightLaw::Uniform10);
             DriverConfig cfg;
             cfg.seed = seed;
             std::string s = serialize(qptas_set_cover(inst, cfg));
             cfg.mode = DriverMode::Heuristic;
             return s + serialize(qptas_set_cover(inst, cfg));
         }},
        {"independent set driver",
         [&] {
             auto regs = tools::segment_regions(tools::random_segments(12, 10, 40, false, seed),
                                                WeightLaw::Uniform10, seed);
             DriverConfig cfg;
             cfg.seed = seed;
             return serialize(qptas_independent_set(regs, cfg));
         }},
        {"halfspace driver and net",
         [&] {
             auto inst = tools::random_halfspaces(9, 25, 0.0, WeightLaw::Uniform10, seed);
             DriverConfig cfg;
             cfg.seed = seed;
             std::string s = serialize(qptas_halfspace_cover(inst, cfg));
             std::vector<int> all(inst.halfspaces.size());
             for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
             if (auto o = point_outside(inst.halfspaces, all))
                 for (int k : epsilon_net_stab(inst.halfspaces, *o, Scalar(1, 4), seed).members)
                     s += std::to_string(k) + ",";
             return s;
         }},
        {"bench suite",
         [&] {
             auto regs = tools::disk_polygons(7, 10, WeightLaw::Unit, seed);
             tools::CorpusItem item;
             item.name = "item";
             item.planar = {tools::clustered_points(regs, 20, seed), regs};
             tools::SuiteOptions opts;
             opts.jobs = 2;
             return tools::write_bench_csv(tools::run_suite("qptas", {item}, {1, 2}, opts).records, false);
         }},
    };
    for (const auto& [name, run] : pipelines) {
        const std::string a = run(), b = run();
        out.require(a == b, name + " differs between runs");
        out.require(!a.empty(), name + " produced no output");
    }
    out.note(std::to_string(pipelines.size()) + " pipelines compared byte for byte");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "single push", pusher_suite},
        {2, "disjoint core decomposition", disjoint_suite},
        {3, "depth-bucketed sums", cs_suite},
        {4, "weighted separator", weighted_separator_suite},
        {5, "sampled partition", partition_suite},
        {6, "cover separator bounds", cover_separator_suite},
        {7, "cover driver", driver_suite},
        {8, "weight normalization", normalization_suite},
        {9, "independent set", mis_suite},
        {10, "halfspaces in space", halfspace_suite},
        {11, "determinism", determinism_suite},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note(std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << "\n";
        for (const auto& d : o.details) std::cout << "    " << d << "\n";
        std::cout.flush();
    }
    return failed ? 1 : 0;
}
