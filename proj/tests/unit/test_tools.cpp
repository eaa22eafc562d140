#include "doctest.h"

#include "pdcover/cores/cores.h"
#include "pdcover/geom/arrangement.h"
#include "pdcover/geom/errors.h"
#include "pdcover/geom/instance_io.h"
#include "pdcover_tools/bench.h"
#include "pdcover_tools/generators.h"
#include "pdcover_tools/svg.h"

#include <filesystem>
#include <fstream>
#include <vector>

using namespace pdc;
using namespace pdc::tools;

namespace {

/// Minimal well-formedness check: balanced tags and one root element.
bool balanced_xml(const std::string& s, int& elements) {
    std::vector<std::string> stack;
    int roots = 0;
    elements = 0;
    std::size_t i = 0;
    while ((i = s.find('<', i)) != std::string::npos) {
        std::size_t j = s.find('>', i);
        if (j == std::string::npos) return false;
        std::string tag = s.substr(i + 1, j - i - 1);
        i = j + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;
        if (tag[0] == '/') {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        ++elements;
        if (stack.empty()) ++roots;
        bool self_closing = tag.back() == '/';
        std::string name = tag.substr(0, tag.find_first_of(" /"));
        if (!self_closing) stack.push_back(name);
    }
    return stack.empty() && roots == 1;
}

int count_of(const std::string& s, const std::string& needle) {
    int n = 0;
    for (std::size_t i = s.find(needle); i != std::string::npos; i = s.find(needle, i + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("generators are deterministic and valid") {
    auto a = disk_polygons(12, 10, WeightLaw::Uniform10, 3);
    auto b = disk_polygons(12, 10, WeightLaw::Uniform10, 3);
    CHECK(write_planar_instance({{}, a}) == write_planar_instance({{}, b}));
    CHECK(a.size() == 12);
    CHECK(is_pseudodisk_family(a).ok);
    CHECK(is_cover_free(a).ok);

    auto d = disjoint_polygons(15, 6, WeightLaw::Unit, 2);
    CHECK(build_arrangement(d).m == 0);

    auto segs = random_segments(10, 5, 20, true, 4);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        CHECK(segs[i].a.x < segs[i].b.x);
        for (std::size_t j = i + 1; j < segs.size(); ++j)
            CHECK(intersect_segments(segs[i].a, segs[i].b, segs[j].a, segs[j].b).kind ==
                  SegmentRelation::Disjoint);
    }

    auto pts = clustered_points(a, 50, 5);
    for (const auto& p : pts) {
        bool inside = false;
        for (const auto& r : a) {
            Location l = locate(p, r);
            CHECK(l != Location::OnBoundary);
            inside = inside || l == Location::Inside;
        }
        CHECK(inside);
    }
    CHECK(grid_points(a, 8).size() <= 64);

    auto h1 = random_halfspaces(6, 20, 0.3, WeightLaw::Unit, 8);
    auto h2 = random_halfspaces(6, 20, 0.3, WeightLaw::Unit, 8);
    CHECK(write_halfspace_instance(h1) == write_halfspace_instance(h2));
    CHECK_NOTHROW(halfspace_coverage(h1));

    CHECK(parse_weight_law("unit") == WeightLaw::Unit);
    try {
        parse_weight_law("heavy");
        FAIL("expected SpecInvalid");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SpecInvalid);
    }
}

TEST_CASE("svg output") {
    auto regs = disk_polygons(6, 8, WeightLaw::Unit, 1);
    PlanarInstance inst{clustered_points(regs, 10, 1), regs};
    CoreDecomposition dec = disjoint_core_decomposition(regs, 1);
    SvgLayers layers;
    layers.cores = &dec;
    layers.selected = {0, 2};
    layers.curves.push_back(regs[1].boundary);
    std::string svg = render_svg(inst, layers);
    int elements = 0;
    CHECK(balanced_xml(svg, elements));
    CHECK(elements > 10);
    CHECK(count_of(svg, "id=\"region-") == 6);
    CHECK(count_of(svg, "id=\"curve-") == 1);
    CHECK(count_of(svg, "id=\"core-") >= 6);
    CHECK(svg == render_svg(inst, layers));
    CHECK(balanced_xml(render_svg(PlanarInstance{}), elements));
}

TEST_CASE("bench csv") {
    BenchRecord r;
    r.suite = "qptas";
    r.instance = "a,b";
    r.seed = 7;
    r.algorithm = "qptas";
    r.mode = "oracle";
    r.eps = "1/2";
    r.output_weight = "3";
    r.gate = "pass";
    r.note = "quoted \"note\"";
    r.wall_ms = 12.5;
    std::string csv = write_bench_csv({r, r}, false);
    auto back = parse_bench_csv(csv);
    REQUIRE(back.size() == 2);
    CHECK(back[0].instance == "a,b");
    CHECK(back[0].note == r.note);
    CHECK(back[0].seed == 7);
    CHECK(back[0].wall_ms == 0);
    CHECK(write_bench_csv(back, false) == csv);
    CHECK(parse_bench_csv(write_bench_csv({r}, true))[0].wall_ms == doctest::Approx(12.5));

    std::string header = write_bench_csv({}, false);
    CHECK(count_of(header, "\n") == 1);
    CHECK(parse_bench_csv(header).empty());
    CHECK(header.rfind(bench_columns().front(), 0) == 0);
    try {
        parse_bench_csv("x,y\n1,2\n");
        FAIL("expected CorpusInvalid");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CorpusInvalid);
    }
}

TEST_CASE("corpus loading and suites") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "pdcover_corpus_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto regs = disk_polygons(6, 10, WeightLaw::Unit, 2);
    std::ofstream(dir / "b_planar.json") << write_planar_instance({clustered_points(regs, 20, 2), regs});
    std::ofstream(dir / "a_space.json") << write_halfspace_instance(random_halfspaces(7, 15, 0.0, WeightLaw::Unit, 3));
    std::ofstream(dir / "notes.txt") << "ignored";

    auto corpus = load_corpus({dir.string()});
    REQUIRE(corpus.size() == 2);
    CHECK(corpus[0].halfspace);
    CHECK_FALSE(corpus[1].halfspace);
    CHECK_THROWS_AS(parse_corpus_item("bad", "{\"regions\": 3}"), Error);
    CHECK(load_corpus({}).empty());

    for (const auto& suite : suite_names()) {
        SuiteOptions opts;
        opts.jobs = 1;
        SuiteResult one = run_suite(suite, corpus, {1, 2}, opts);
        opts.jobs = 3;
        SuiteResult many = run_suite(suite, corpus, {1, 2}, opts);
        CHECK_MESSAGE(write_bench_csv(one.records, false) == write_bench_csv(many.records, false), suite);
        CHECK_MESSAGE(one.gate_failures == 0, suite);
        for (const auto& rec : one.records) CHECK(rec.suite == suite);
    }
    try {
        run_suite("nope", corpus, {1});
        FAIL("expected SpecInvalid");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SpecInvalid);
    }
    fs::remove_all(dir);
}
