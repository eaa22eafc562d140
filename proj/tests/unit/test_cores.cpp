#include "doctest.h"
#include "shapes.h"

#include "pdcover/cores/cores.h"
#include "pdcover/geom/errors.h"
#include "pdcover_tools/generators.h"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace pdc;
using namespace pdc::test;

namespace {

Scalar core_area(const CoreDecomposition& dec, int i) {
    Scalar a = 0;
    const auto& faces = dec.context->overlay.faces();
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (dec.cores[i].faces[f]) a += faces[f].area;
    return a;
}

/// Direct evaluation over the arrangement, independent of the cores code.
Scalar closed_form_oracle(const std::vector<Region>& regs) {
    Arrangement arr = build_arrangement(regs);
    Scalar s = 0;
    for (const auto& v : arr.vertices) {
        const Scalar& wi = regs[v.i].weight;
        const Scalar& wj = regs[v.j].weight;
        s += 2 * wi * wj / (wi + wj + v.depth);
    }
    return s;
}

Scalar cs_oracle(const std::vector<Region>& regs, const Scalar& k) {
    Arrangement arr = build_arrangement(regs);
    Scalar s = 0;
    for (const auto& v : arr.vertices) {
        if (v.depth < k || v.depth >= 2 * k) continue;
        const Scalar& wi = regs[v.i].weight;
        const Scalar& wj = regs[v.j].weight;
        s += wi * wj / (wi + wj + k);
    }
    return s;
}

}  // namespace

TEST_CASE("single push of two overlapping squares") {
    std::vector<Region> regs{diamond(0, 0, 0, 4), diamond(1, 3, 1, 4)};
    CoreDecomposition dec = push(regs, 0);
    CHECK(verify_core_decomposition(regs, dec).ok());
    CHECK(core_area(dec, 0) == shoelace(regs[0].boundary));
    Scalar overlap = shoelace(clip_convex(regs[1].boundary, regs[0].boundary));
    CHECK(overlap > 0);
    CHECK(core_area(dec, 1) == shoelace(regs[1].boundary) - overlap);
    CHECK_FALSE(dec.cores[1].empty());
}

TEST_CASE("push areas on random pseudodisks") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
        auto regs = tools::disk_polygons(6, 8, tools::WeightLaw::Unit, s);
        auto ctx = make_core_context(regs);
        for (int p = 0; p < 2; ++p) {
            CoreDecomposition dec = push(ctx, p);
            CoreReport rep = verify_core_decomposition(regs, dec);
            CHECK(rep.ok());
            CHECK(dec.order == std::vector<int>{p});
            for (std::size_t i = 0; i < regs.size(); ++i) {
                if (static_cast<int>(i) == p) {
                    CHECK(core_area(dec, p) == shoelace(regs[p].boundary));
                    continue;
                }
                Scalar cut = shoelace(clip_convex(regs[i].boundary, regs[p].boundary));
                CHECK(core_area(dec, static_cast<int>(i)) == shoelace(regs[i].boundary) - cut);
            }
            auto ranks = interval_ranks(*ctx, push(ctx, p).cores, p);
            CHECK(ranks[p] == 0);
        }
    }
}

TEST_CASE("disjoint decomposition properties") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto regs = tools::disk_polygons(8, 12, tools::WeightLaw::Uniform10, s);
        CoreDecomposition dec = disjoint_core_decomposition(regs, s);
        CoreReport rep = verify_core_decomposition(regs, dec);
        for (const auto& m : rep.messages) MESSAGE(m);
        CHECK(rep.ok());
        CHECK(rep.total_intersections == 0);
        // Cores tile the union: areas add up without double counting.
        Scalar sum = 0;
        for (std::size_t i = 0; i < regs.size(); ++i) sum += core_area(dec, static_cast<int>(i));
        Scalar uni = 0;
        for (const auto& f : dec.context->overlay.faces())
            if (!f.unbounded && !f.label.empty()) uni += f.area;
        CHECK(sum == uni);

        CoreCost cost = core_vertex_cost(dec);
        Scalar direct = 0;
        for (std::size_t i = 0; i < regs.size(); ++i) direct += rep.vertex_counts[i] * regs[i].weight;
        CHECK(cost.cost == direct);
        CHECK(cost.closed_form == closed_form_oracle(regs));
    }
}

TEST_CASE("push order determinism") {
    auto regs = tools::disk_polygons(7, 10, tools::WeightLaw::Uniform10, 3);
    auto a = disjoint_core_decomposition(regs, 11);
    auto b = disjoint_core_decomposition(regs, 11);
    CHECK(a.order == b.order);
    CHECK(a.position.size() == regs.size());
    std::vector<int> sorted = a.order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> iota(regs.size());
    std::iota(iota.begin(), iota.end(), 0);
    CHECK(sorted == iota);
}

TEST_CASE("weighted permutation law") {
    std::vector<Scalar> w{1, 2, 0, 5};
    auto p = weighted_permutation(w, 4);
    CHECK(p.size() == 4);
    CHECK(p.back() == 2);
    CHECK(weighted_permutation(w, 4) == p);

    const int trials = 4000;
    std::vector<int> first(4, 0);
    for (int t = 0; t < trials; ++t) ++first[weighted_permutation(w, 1000 + t)[0]];
    CHECK(first[2] == 0);
    const double tot = 8.0;
    for (int i : {0, 1, 3}) {
        const double q = to_double(w[i]) / tot;
        const double sd = std::sqrt(trials * q * (1 - q));
        CHECK(std::abs(first[i] - trials * q) < 4 * sd);
    }
}

TEST_CASE("expected vertex cost matches the pushing process") {
    auto regs = tools::disk_polygons(5, 10, tools::WeightLaw::Uniform10, 21);
    auto ctx = make_core_context(regs);
    std::vector<Scalar> w;
    for (const auto& r : regs) w.push_back(r.weight);
    const int trials = 300;
    double sum = 0, sq = 0;
    Scalar refined = 0;
    for (int t = 0; t < trials; ++t) {
        auto dec = disjoint_core_decomposition(ctx, weighted_permutation(w, 7000 + t));
        CoreCost c = core_vertex_cost(dec);
        if (t == 0) refined = c.refined_expectation;
        CHECK(c.refined_expectation == refined);
        const double v = to_double(c.cost);
        sum += v;
        sq += v * v;
    }
    const double mean = sum / trials;
    const double sd = std::sqrt(std::max(0.0, sq / trials - mean * mean));
    CHECK(std::abs(mean - to_double(refined)) <= 4 * sd / std::sqrt(double(trials)) + 1e-9);
}

TEST_CASE("cs sum against the arrangement") {
    auto regs = tools::disk_polygons(10, 8, tools::WeightLaw::Uniform10, 5);
    Arrangement arr = build_arrangement(regs);
    for (int k : {1, 2, 4, 8, 16}) CHECK(cs_sum(arr, k) == cs_oracle(regs, k));
    CHECK(cs_sum(regs, 3) == cs_oracle(regs, 3));
    CHECK(cs_sum(std::vector<Region>{}, 1) == 0);
}

TEST_CASE("uniform decomposition") {
    for (std::uint64_t s = 1; s <= 3; ++s) {
        auto regs = tools::disk_polygons(8, 10, tools::WeightLaw::Uniform10, 40 + s);
        CoreDecomposition dec = uniform_core_decomposition(regs, UniformConfig{}, s);
        CHECK(dec.mode == CoreMode::Uniform);
        CoreReport rep = verify_core_decomposition(regs, dec);
        for (const auto& m : rep.messages) MESSAGE(m);
        CHECK(rep.ok());
        CHECK(dec.net_attempts >= 1);
    }
}

TEST_CASE("invalid families") {
    std::vector<Region> nested{diamond(0, 0, 0, 6), diamond(1, 0, 0, 2)};
    try {
        push(nested, 0);
        FAIL("expected NotCoverFree");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotCoverFree);
    }
    std::vector<Region> crossing{bar(0, 0, 0, 1, 0.2, 5, 0.5), bar(1, 0, 0, 0.2, 1, 5, 0.5)};
    try {
        push(crossing, 0);
        FAIL("expected NotPseudodisks");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPseudodisks);
    }
    CHECK(std::string(core_mode_name(CoreMode::Uniform)) == "uniform");
}
