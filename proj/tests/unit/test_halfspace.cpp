#include "doctest.h"

#include "pdcover/geom/errors.h"
#include "pdcover/geom/random.h"
#include "pdcover/halfspace3d/driver.h"
#include "pdcover/halfspace3d/lp.h"
#include "pdcover_tools/generators.h"

#include <algorithm>
#include <cmath>
#include <set>

using namespace pdc;

namespace {

Scalar det3(const Point3& a, const Point3& b, const Point3& c) { return dot(a, cross(b, c)); }

/// 2D LP maximum by enumerating intersections of constraint pairs.
std::optional<Scalar> lp_vertex_oracle(const std::vector<std::vector<Scalar>>& a,
                                       const std::vector<Scalar>& b,
                                       const std::vector<Scalar>& c) {
    std::optional<Scalar> best;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            Scalar d = a[i][0] * a[j][1] - a[i][1] * a[j][0];
            if (d == 0) continue;
            Scalar x = (b[i] * a[j][1] - a[i][1] * b[j]) / d;
            Scalar y = (a[i][0] * b[j] - b[i] * a[j][0]) / d;
            bool ok = true;
            for (std::size_t k = 0; k < a.size(); ++k) ok = ok && a[k][0] * x + a[k][1] * y <= b[k];
            if (!ok) continue;
            Scalar v = c[0] * x + c[1] * y;
            if (!best || v > *best) best = v;
        }
    return best;
}

Halfspace3 hs(int id, long a, long b, long c, long d, Scalar w = 1) {
    return make_halfspace(id, {Scalar(a), Scalar(b), Scalar(c)}, Scalar(d), w);
}

bool general_position(const std::vector<Halfspace3>& h) {
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (cross(h[i].normal, h[j].normal) == Point3{0, 0, 0}) return false;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (det3(h[i].normal, h[j].normal, h[k].normal) == 0) return false;
                for (std::size_t l = k + 1; l < n; ++l) {
                    // Four planes through one point: the 4x4 system is singular.
                    const Halfspace3* q[4] = {&h[i], &h[j], &h[k], &h[l]};
                    Scalar det = 0;
                    for (int r = 0; r < 4; ++r) {
                        Point3 m[3];
                        int t = 0;
                        for (int s = 0; s < 4; ++s)
                            if (s != r) m[t++] = q[s]->normal;
                        Scalar minor = det3(m[0], m[1], m[2]);
                        det += (r % 2 ? -1 : 1) * q[r]->offset * minor;
                    }
                    if (det == 0) return false;
                }
            }
        }
    return true;
}

Scalar brute_halfspace_cover(const HalfspaceInstance& inst) {
    const int n = static_cast<int>(inst.halfspaces.size());
    Scalar best = -1;
    for (unsigned m = 1; m < (1u << n); ++m) {
        Scalar w = 0;
        bool ok = true;
        for (const auto& p : inst.points) {
            bool hit = false;
            for (int i = 0; i < n; ++i) hit = hit || ((m >> i & 1) && inst.halfspaces[i].side(p) >= 0);
            if (!hit) { ok = false; break; }
        }
        if (!ok) continue;
        for (int i = 0; i < n; ++i)
            if (m >> i & 1) w += inst.halfspaces[i].weight;
        if (best < 0 || w < best) best = w;
    }
    return best;
}

}  // namespace

TEST_CASE("exact simplex") {
    auto r = solve_lp({{1, 0}, {0, 1}, {1, 1}}, {2, 3, 4}, {1, 1});
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == 4);
    CHECK(solve_lp({{1}, {-1}}, {0, -1}, {1}).status == LpStatus::Infeasible);
    CHECK(solve_lp({{-1}}, {0}, {1}).status == LpStatus::Unbounded);

    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        std::vector<std::vector<Scalar>> a;
        std::vector<Scalar> b;
        // Box keeps it bounded; random cuts may make it infeasible.
        a = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        b = {5, 5, 5, 5};
        for (int k = 0; k < 4; ++k) {
            a.push_back({Scalar(static_cast<long>(rng.below(9)) - 4), Scalar(static_cast<long>(rng.below(9)) - 4)});
            b.push_back(Scalar(static_cast<long>(rng.below(11)) - 3));
        }
        std::vector<Scalar> c{Scalar(static_cast<long>(rng.below(7)) - 3), Scalar(static_cast<long>(rng.below(7)) - 3)};
        auto res = solve_lp(a, b, c);
        auto want = lp_vertex_oracle(a, b, c);
        if (!want) {
            CHECK(res.status == LpStatus::Infeasible);
            continue;
        }
        REQUIRE(res.status == LpStatus::Optimal);
        CHECK(res.value == *want);
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k][0] * res.x[0] + a[k][1] * res.x[1] <= b[k]);
    }

    CHECK_FALSE(strictly_feasible({{1}, {-1}}, {1, -1}, {1, 1}, 1).has_value());
    auto p = strictly_feasible({{1}, {-1}}, {1, -1}, {0, 0}, 1);
    REQUIRE(p.has_value());
    CHECK((*p)[0] == 1);
}

TEST_CASE("halfspace basics and instance text") {
    CHECK_THROWS_AS(hs(0, 0, 0, 0, 1), Error);
    CHECK_THROWS_AS(make_halfspace(0, {1, 0, 0}, 0, -1), Error);
    Halfspace3 h = hs(0, 1, 2, 3, 6);
    CHECK(h.side({1, 1, 1}) == 0);
    CHECK(h.contains({1, 1, 1}));
    CHECK_FALSE(h.contains({0, 0, 0}));

    HalfspaceInstance inst = tools::random_halfspaces(6, 10, 0.3, tools::WeightLaw::Uniform10, 4);
    HalfspaceInstance back = parse_halfspace_instance(write_halfspace_instance(inst));
    REQUIRE(back.halfspaces.size() == inst.halfspaces.size());
    for (std::size_t i = 0; i < inst.halfspaces.size(); ++i) {
        CHECK(back.halfspaces[i].normal == inst.halfspaces[i].normal);
        CHECK(back.halfspaces[i].offset == inst.halfspaces[i].offset);
        CHECK(back.halfspaces[i].weight == inst.halfspaces[i].weight);
    }
    CHECK(back.points == inst.points);
    CHECK_THROWS_AS(parse_halfspace_instance("{\"halfspaces\": [{\"normal\": [1, 0]}]}"), Error);
}

TEST_CASE("space covers and outside points") {
    std::vector<Halfspace3> slab{hs(0, 1, 0, 0, 0), hs(1, -1, 0, 0, 0, 3)};
    CHECK(covers_space(slab, {0, 1}));
    CHECK_FALSE(covers_space(slab, {0}));
    auto hc = helly_small_cover(slab);
    REQUIRE(hc.has_value());
    CHECK(hc->weight == 4);

    std::vector<Halfspace3> gap{hs(0, 1, 0, 0, 1), hs(1, -1, 0, 0, 1)};
    CHECK_FALSE(covers_space(gap, {0, 1}));
    CHECK_FALSE(helly_small_cover(gap).has_value());
    auto o = point_outside(gap, {0, 1});
    REQUIRE(o.has_value());
    CHECK(gap[0].side(*o) < 0);
    CHECK(gap[1].side(*o) < 0);

    // Cheapest covering tuple by brute force over subsets of size <= 4.
    for (std::uint64_t s = 1; s <= 12; ++s) {
        auto inst = tools::random_halfspaces(7, 0, 0.5, tools::WeightLaw::Uniform10, s);
        const auto& h = inst.halfspaces;
        const int n = static_cast<int>(h.size());
        std::optional<Scalar> best;
        for (unsigned m = 1; m < (1u << n); ++m) {
            if (__builtin_popcount(m) > 4) continue;
            std::vector<int> sel;
            Scalar w = 0;
            for (int i = 0; i < n; ++i)
                if (m >> i & 1) { sel.push_back(i); w += h[i].weight; }
            if ((!best || w < *best) && !point_outside(h, sel)) best = w;
        }
        auto got = helly_small_cover(h);
        CHECK(got.has_value() == best.has_value());
        if (got && best) {
            CHECK(got->weight == *best);
            CHECK(covers_space(h, got->selected));
        }
    }
}

TEST_CASE("stab sets") {
    Rng rng(17);
    auto inst = tools::random_halfspaces(8, 0, 0.2, tools::WeightLaw::Unit, 17);
    for (int t = 0; t < 50; ++t) {
        Point3 o{snap(rng.uniform(-10, 10), 8), snap(rng.uniform(-10, 10), 8), snap(rng.uniform(-10, 10), 8)};
        Point3 x{snap(rng.uniform(-10, 10), 8), snap(rng.uniform(-10, 10), 8), snap(rng.uniform(-10, 10), 8)};
        std::vector<int> want;
        for (std::size_t i = 0; i < inst.halfspaces.size(); ++i) {
            int so = sgn(inst.halfspaces[i].side(o)), sx = sgn(inst.halfspaces[i].side(x));
            if (so * sx <= 0) want.push_back(static_cast<int>(i));
        }
        CHECK(stab_set(inst.halfspaces, o, x) == want);
    }
}

TEST_CASE("cells of a plane arrangement") {
    int tested = 0;
    for (std::uint64_t s = 1; s <= 10 && tested < 4; ++s) {
        auto inst = tools::random_halfspaces(5, 0, 0.3, tools::WeightLaw::Unit, 60 + s);
        if (!general_position(inst.halfspaces)) continue;
        ++tested;
        auto reps = cell_representatives(inst.halfspaces);
        std::set<std::vector<int>> sets;
        for (const auto& p : reps) {
            std::vector<int> in;
            for (std::size_t i = 0; i < inst.halfspaces.size(); ++i) {
                Scalar side = inst.halfspaces[i].side(p);
                CHECK(side != 0);
                if (side > 0) in.push_back(static_cast<int>(i));
            }
            sets.insert(in);
        }
        // Five planes in general position cut space into 1 + 5 + 10 + 10 cells.
        CHECK(sets.size() == 26);
        CHECK(reps.size() == 26);
    }
    CHECK(tested >= 2);
}

TEST_CASE("range dimension stays small") {
    for (std::uint64_t s = 1; s <= 6; ++s) {
        auto inst = tools::random_halfspaces(8, 0, 0.0, tools::WeightLaw::Unit, s);
        VcReport vc = vc_shatter_check(inst.halfspaces);
        CHECK(vc.max_shattered <= 3);
        CHECK(vc.max_realized_k4 <= 15);
    }
    auto big = tools::random_halfspaces(13, 0, 0.0, tools::WeightLaw::Unit, 1);
    try {
        vc_shatter_check(big.halfspaces);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooLarge);
    }
}

TEST_CASE("complement polytopes") {
    std::vector<Halfspace3> cube;
    int id = 0;
    for (long sgn_ : {1L, -1L}) {
        cube.push_back(hs(id++, sgn_, 0, 0, 1));
        cube.push_back(hs(id++, 0, sgn_, 0, 1));
        cube.push_back(hs(id++, 0, 0, sgn_, 1));
    }
    Polytope3 p = complement_polytope(cube);
    CHECK(p.vertices.size() == 8);
    CHECK(p.edges.size() == 12);
    CHECK(p.facets.size() == 6);
    CHECK(p.euler_characteristic() == 2);
    for (const auto& v : p.vertices)
        for (const auto& h : cube) CHECK(h.side(v) <= 0);

    auto dm = dummy_halfspaces(10, 0);
    REQUIRE(dm.size() == 4);
    for (long x : {-10L, 10L})
        for (long y : {-10L, 10L})
            for (long z : {-10L, 10L})
                for (const auto& h : dm) {
                    CHECK(h.side({Scalar(x), Scalar(y), Scalar(z)}) < 0);
                    CHECK(h.weight == 0);
                }
    Polytope3 simplex = complement_polytope(dm);
    CHECK(simplex.vertices.size() == 4);
    CHECK(simplex.euler_characteristic() == 2);
    CHECK_FALSE(helly_small_cover(dm).has_value());

    std::vector<Halfspace3> open{hs(0, 1, 0, 0, 1)};
    CHECK_THROWS_AS(complement_polytope(open), Error);
}

TEST_CASE("stabbing nets hit every heavy range") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto inst = tools::random_halfspaces(9, 0, 0.0, tools::WeightLaw::Uniform10, 30 + s);
        std::vector<int> all(inst.halfspaces.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        auto o = point_outside(inst.halfspaces, all);
        REQUIRE(o.has_value());
        const Scalar eps(1, 4);
        EpsilonNet net = epsilon_net_stab(inst.halfspaces, *o, eps, s);
        Scalar total = 0;
        for (const auto& h : inst.halfspaces) total += h.weight;
        for (const auto& x : cell_representatives(inst.halfspaces)) {
            Scalar w = 0;
            bool hit = false;
            for (int i : stab_set(inst.halfspaces, *o, x)) {
                w += inst.halfspaces[i].weight;
                hit = hit || std::binary_search(net.members.begin(), net.members.end(), i);
            }
            if (w >= eps * total) CHECK(hit);
        }
        try {
            epsilon_net_stab(inst.halfspaces, inst.points.empty() ? Point3{0, 0, 0} : inst.points[0], eps, s);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ApexInside);
        }
    }
    auto inst = tools::random_halfspaces(4, 5, 0.0, tools::WeightLaw::Unit, 2);
    try {
        epsilon_net_stab(inst.halfspaces, inst.points[0], Scalar(1, 4), 1);
        FAIL("expected ApexInside");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ApexInside);
    }
}

TEST_CASE("net fraction") {
    const Scalar d(1, 10);
    const double want = 0.01 / std::log(100.0);
    CHECK(std::abs(to_double(net_eps(d, 1.0)) - want) < 1e-8);
    Scalar e = net_eps(d, 1.0) * (Scalar(1) << 30);
    CHECK(e.get_den() == 1);
}

TEST_CASE("separator and driver on random instances") {
    int separators = 0;
    for (std::uint64_t s = 1; s <= 10; ++s) {
        auto inst = tools::random_halfspaces(8 + static_cast<int>(s % 5), 25, s % 3 == 0 ? 0.2 : 0.0,
                                             tools::WeightLaw::Unit, s);
        Solution ex = exact_halfspace_cover(inst);
        CHECK(ex.weight == brute_halfspace_cover(inst));
        CHECK(is_halfspace_cover(inst, ex.selected));
        Solution gr = greedy_halfspace_cover(inst);
        CHECK(is_halfspace_cover(inst, gr.selected));
        CHECK(gr.weight >= ex.weight);

        if (auto o = point_outside(inst.halfspaces, ex.selected)) {
            try {
                auto rep = halfspace_separator(inst, ex.selected, *o, Scalar(1, 10), Scalar(1, 5), s);
                ++separators;
                CHECK(rep.conserved);
                CHECK(rep.split.net_core_violations == 0);
                CHECK(rep.polytope.euler_characteristic() == 2);
                std::set<int> seen(rep.points_in.begin(), rep.points_in.end());
                seen.insert(rep.points_ext.begin(), rep.points_ext.end());
                CHECK(seen.size() == inst.points.size());
            } catch (const Error& e) {
                // A facet heavier than a third of the cover admits no balanced cycle.
                CHECK(e.kind() == ErrorKind::Unbalanced);
            }
        }

        DriverConfig cfg;
        cfg.seed = s;
        HalfspaceStats st;
        Solution q = qptas_halfspace_cover(inst, cfg, &st);
        CHECK(is_halfspace_cover(inst, q.selected));
        CHECK(q.weight <= (1 + cfg.eps) * ex.weight);
        CHECK(st.conservation_failures == 0);
        CHECK(st.net_core_violations == 0);
    }
    CHECK(separators >= 5);
}
