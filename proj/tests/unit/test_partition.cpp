#include "doctest.h"
#include "shapes.h"

#include "pdcover/geom/errors.h"
#include "pdcover/geom/random.h"
#include "pdcover/partition/cycle_separator.h"
#include "pdcover/partition/subdivision.h"
#include "pdcover/partition/trapezoid.h"
#include "pdcover_tools/generators.h"

#include <cmath>
#include <set>

using namespace pdc;
using namespace pdc::test;

namespace {

BBox box(double lo, double hi) { return {snap(lo, 1), snap(lo, 1), snap(hi, 1), snap(hi, 1)}; }

PolyCurve segment(Point2 a, Point2 b, int id) {
    if (b.x < a.x) std::swap(a, b);
    PolyCurve c;
    c.vertices = {a, b};
    c.region_id = id;
    c.piece = 0;
    return c;
}

/// Trapezoid count for segments in general position: the frame is one cell
/// and every endpoint or crossing adds walls that split three more cells
/// (Euler's formula on the wall graph).
int expected_trapezoids(const std::vector<PolyCurve>& segs) {
    int crossings = 0;
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j)
            crossings += brute_crossings({segs[i].vertices[0], segs[i].vertices[1]},
                                         {segs[j].vertices[0], segs[j].vertices[1]}) > 0;
    return 3 * static_cast<int>(segs.size()) + 3 * crossings + 1;
}

/// K4 drawn with vertex 3 inside the triangle 0, 1, 2.
PlanarGraph k4() { return planar_graph_from_rotation({{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {2, 0, 1}}); }

/// k x k grid with one diagonal per square.
PlanarGraph triangulated_grid(int k) {
    std::vector<std::vector<int>> rot(k * k);
    const int dirs[6][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (auto& d : dirs) {
                int a = i + d[0], b = j + d[1];
                if (a >= 0 && b >= 0 && a < k && b < k) rot[i * k + j].push_back(a * k + b);
            }
    return planar_graph_from_rotation(rot);
}

/// Simple cycles of a small graph as vertex lists (each found once per rotation and direction).
void all_cycles(const std::vector<std::set<int>>& adj, std::vector<int>& path, std::vector<char>& on,
                std::vector<std::vector<int>>& out) {
    int u = path.back();
    for (int v : adj[u]) {
        if (v == path.front() && path.size() >= 3) out.push_back(path);
        if (on[v] || v < path.front()) continue;
        on[v] = 1;
        path.push_back(v);
        all_cycles(adj, path, on, out);
        path.pop_back();
        on[v] = 0;
    }
}

}  // namespace

TEST_CASE("trapezoidal decomposition cell counts") {
    BBox b = box(-10, 110);
    CHECK(trapezoidal_decomposition({}, b).cells.size() == 1);
    std::vector<PolyCurve> one{segment({10, 10}, {50, Scalar(41, 2)}, 0)};
    CHECK(trapezoidal_decomposition(one, b).cells.size() == 4);
    std::vector<PolyCurve> two{segment({10, 10}, {50, 50}, 0), segment({12, 45}, {60, 15}, 1)};
    CHECK(trapezoidal_decomposition(two, b).cells.size() == static_cast<std::size_t>(expected_trapezoids(two)));
    CHECK(expected_trapezoids(two) == 10);
    for (std::uint64_t s = 1; s <= 10; ++s) {
        auto segs = tools::segment_curves(tools::random_segments(8, 5, 40, false, s));
        Partition part = trapezoidal_decomposition(segs, b);
        CHECK(part.cells.size() == static_cast<std::size_t>(expected_trapezoids(segs)));
        Scalar area = 0;
        for (const auto& c : part.cells) area += shoelace(c.boundary);
        CHECK(area == Scalar(120 * 120));
        for (const auto& c : part.cells) CHECK(c.determining.size() <= 4);
    }
}

TEST_CASE("sampled partition respects the per-cell budget") {
    auto regs = tools::segment_regions(tools::random_segments(20, 5, 30, false, 3), tools::WeightLaw::Unit, 3);
    CurveSet set = curves_of_regions(regs, false);
    SUBCASE("r = n leaves at most one curve per cell") {
        Partition part = sample_partition(set, 20, 5);
        PartitionCheck chk = verify_partition(set, part);
        CHECK(chk.ok());
        CHECK(chk.max_conflict_weight <= 1);
        for (const auto& c : part.cells) CHECK(c.conflict_weight <= 1);
    }
    SUBCASE("r = 1 is trivially within budget") {
        Partition part = sample_partition(set, 1, 5);
        CHECK(verify_partition(set, part).ok());
    }
    SUBCASE("deterministic per seed") {
        Partition a = sample_partition(set, 8, 11), b2 = sample_partition(set, 8, 11);
        CHECK(a.sample == b2.sample);
        CHECK(a.cells.size() == b2.cells.size());
    }
    SUBCASE("weighted disjoint polygons") {
        for (std::uint64_t s = 1; s <= 5; ++s) {
            auto polys = tools::disjoint_polygons(30, 8, tools::WeightLaw::Uniform10, s);
            CurveSet ps = curves_of_regions(polys, false);
            Partition part = sample_partition(ps, 10, s);
            PartitionCheck chk = verify_partition(ps, part);
            CHECK(chk.ok());
            CHECK(chk.max_conflict_weight * 10 <= ps.total_weight());
        }
    }
}

TEST_CASE("subdivision graph face weights") {
    auto regs = tools::disjoint_polygons(12, 8, tools::WeightLaw::Uniform10, 4);
    CurveSet set = curves_of_regions(regs, false);
    Partition part = sample_partition(set, 4, 2);
    SubdivisionGraph sg = subdivision_graph(part, regs);
    CHECK(sg.graph.euler_characteristic() == 2);
    Scalar sum = 0;
    for (const auto& w : sg.face_weights) {
        CHECK(w >= 0);
        sum += w;
    }
    CHECK(sum == total_weight(regs));
    // Oracle: each face carries w / t from every region meeting t faces.
    std::vector<Scalar> expect(sg.face_weights.size(), 0);
    for (std::size_t r = 0; r < regs.size(); ++r)
        for (int f : sg.region_faces[r]) expect[f] += regs[r].weight / static_cast<long>(sg.region_faces[r].size());
    CHECK(expect == sg.face_weights);

    SubdivisionGraph unit = subdivision_graph(part, regs, false);
    Scalar usum = 0;
    for (const auto& w : unit.face_weights) usum += w;
    CHECK(usum == static_cast<long>(regs.size()));

    SUBCASE("a region inside one face gives it all its weight") {
        std::vector<Region> single{make_region(0, 5, regular(50, 50, 3, 8))};
        CurveSet s1 = curves_of_regions(single, false);
        Partition p1 = trapezoidal_decomposition({}, frame_of(s1));
        SubdivisionGraph g1 = subdivision_graph(p1, single);
        REQUIRE(g1.region_faces[0].size() == 1);
        CHECK(g1.face_weights[g1.region_faces[0][0]] == 5);
    }
}

TEST_CASE("cycle separator on K4") {
    PlanarGraph g = k4();
    REQUIRE(g.face_count == 4);
    CHECK(g.euler_characteristic() == 2);
    std::vector<Scalar> w(4, 1);
    // Oracle: among all simple cycles only the 4-cycles split 2 / 2.
    std::vector<std::set<int>> adj(4);
    for (int h = 0; h < static_cast<int>(g.origin.size()); ++h) adj[g.origin[h]].insert(g.dest(h));
    std::vector<std::vector<int>> cycles;
    for (int s = 0; s < 4; ++s) {
        std::vector<int> path{s};
        std::vector<char> on(4, 0);
        on[s] = 1;
        all_cycles(adj, path, on, cycles);
    }
    std::set<std::size_t> lengths;
    for (const auto& c : cycles) lengths.insert(c.size());
    CHECK(lengths == std::set<std::size_t>{3, 4});
    CycleSeparator sep = cycle_separator(g, w);
    CHECK(sep.vertices.size() == 4);
    CycleCheck chk = check_cycle(g, w, sep.half_edges);
    CHECK(chk.simple);
    CHECK(chk.balanced);
    CHECK(chk.inside == 2);
    CHECK(chk.outside == 2);
}

TEST_CASE("cycle separator rejects a dominant face") {
    // A triangle: one bounded face of weight 1, the outer face 0.
    PlanarGraph g = planar_graph_from_rotation({{1, 2}, {2, 0}, {0, 1}});
    REQUIRE(g.face_count == 2);
    try {
        cycle_separator(g, {1, 0});
        FAIL("expected Unbalanced");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Unbalanced);
    }
}

TEST_CASE("cycle separator on weighted triangulated grids") {
    double worst = 0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        Rng rng(s);
        int k = 4 + static_cast<int>(rng.below(11));
        PlanarGraph g = triangulated_grid(k);
        std::vector<Scalar> w(g.face_count);
        Scalar total = 0;
        for (auto& x : w) {
            x = Scalar(static_cast<long>(1 + rng.below(10)));
            total += x;
        }
        // Outer face: the one with the most half-edges.
        int outer = 0;
        std::vector<int> size(g.face_count, 0);
        for (int f : g.face) ++size[f];
        for (int f = 0; f < g.face_count; ++f)
            if (size[f] > size[outer]) outer = f;
        total -= w[outer];
        w[outer] = 0;
        CycleSeparator sep = cycle_separator(g, w);
        CycleCheck chk = check_cycle(g, w, sep.half_edges);
        CHECK(chk.simple);
        CHECK(chk.balanced);
        CHECK(3 * chk.inside <= 2 * total);
        CHECK(3 * chk.outside <= 2 * total);
        std::set<int> distinct(sep.vertices.begin(), sep.vertices.end());
        CHECK(distinct.size() == sep.vertices.size());
        worst = std::max(worst, sep.vertices.size() / std::sqrt(static_cast<double>(g.vertex_count)));
    }
    MESSAGE("max cycle length / sqrt(V) = " << worst);
}

TEST_CASE("heavy cells of the first-level sample are rare") {
    // First level only: each segment joins the sample with probability c r / n.
    const int n = 40;
    const long r = 5;
    const double rate = 0.5 * r / n;
    std::vector<double> heavy(3, 0);
    const int thresholds[3] = {1, 2, 4};
    for (std::uint64_t s = 0; s < 50; ++s) {
        CurveSet set;
        set.curves = tools::segment_curves(tools::random_segments(n, 5, 25, false, 700 + s));
        set.weights.assign(n, 1);
        set.solids.assign(n, {});
        Rng rng(900 + s);
        std::vector<int> sample;
        for (int g = 0; g < n; ++g)
            if (rng.uniform() < rate) sample.push_back(g);
        Partition part = decompose(set, sample, frame_of(set));
        for (const auto& c : part.cells)
            for (int t = 0; t < 3; ++t)
                if (static_cast<long>(c.conflicts.size()) * r >= thresholds[t] * n) heavy[t] += 1;
    }
    for (auto& h : heavy) h /= 50;
    MESSAGE("mean cells meeting >= t n / r segments, t = 1, 2, 4: " << heavy[0] << " " << heavy[1] << " " << heavy[2]);
    CHECK(heavy[0] >= heavy[1]);
    CHECK(heavy[1] >= heavy[2]);
    CHECK(heavy[0] > heavy[2]);
    CHECK(heavy[2] <= 1);
}
