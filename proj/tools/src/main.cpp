#include "pdcover/cores/cores.h"
#include "pdcover/geom/arrangement.h"
#include "pdcover/geom/errors.h"
#include "pdcover/geom/random.h"
#include "pdcover/halfspace3d/driver.h"
#include "pdcover/partition/trapezoid.h"
#include "pdcover/separator/separator.h"
#include "pdcover/solvers/mis.h"
#include "pdcover/solvers/qptas.h"
#include "pdcover_tools/bench.h"
#include "pdcover_tools/generators.h"
#include "pdcover_tools/svg.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using nlohmann::json;
using namespace pdc;

namespace {

constexpr int kExitGate = 2;
constexpr int kExitInput = 3;

std::uint64_t default_seed() {
    if (const char* s = std::getenv("PDCOVER_SEED")) return std::strtoull(s, nullptr, 10);
    return 1;
}

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    out << text;
}

tools::CorpusItem load_item(const std::string& path) {
    try {
        return tools::parse_corpus_item(path, read_text(path));
    } catch (const Error& e) {
        throw Error(ErrorKind::InvalidInput, e.what());
    }
}

json points_json(const Polygon& poly) {
    json a = json::array();
    for (const auto& p : poly) a.push_back({format_scalar(p.x), format_scalar(p.y)});
    return a;
}

bool is_input_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput:
        case ErrorKind::VerticalEdge:
        case ErrorKind::SelfIntersecting:
        case ErrorKind::NotCoverFree:
        case ErrorKind::NotPseudodisks:
        case ErrorKind::MalformedEncoding:
        case ErrorKind::SpecInvalid:
        case ErrorKind::CorpusInvalid:
        case ErrorKind::Infeasible:
        case ErrorKind::TooLarge:
            return true;
        default:
            return false;
    }
}

// ---- gen ----

struct GenArgs {
    std::string kind = "disk-polygons";
    int n = 10;
    int k = 16;
    std::string law = "unit";
    std::string delta = "1/4";
    int c = 2;
    int copies = 8;
    int points = 0;
    std::string point_mode = "clustered";
    double lmin = 5, lmax = 30;
    bool disjoint = false;
    double opposing = 0;
    std::string input;
    std::uint64_t seed = 1;
    std::string output;
};

std::vector<Point2> make_points(const std::vector<Region>& regs, const std::string& mode, int count,
                                std::uint64_t seed) {
    if (count <= 0) return {};
    if (mode == "grid") return tools::grid_points(regs, count);
    if (mode == "clustered") return tools::clustered_points(regs, count, seed);
    throw Error(ErrorKind::SpecInvalid, "unknown point mode: " + mode);
}

int run_gen(const GenArgs& a) {
    const auto law = tools::parse_weight_law(a.law);
    if (a.kind == "random-halfspaces") {
        auto inst = tools::random_halfspaces(a.n, a.points, a.opposing, law, a.seed);
        halfspace_coverage(inst);
        write_text(a.output, write_halfspace_instance(inst));
        return 0;
    }
    PlanarInstance inst;
    std::uint64_t point_seed = mix_seed(a.seed, 7);
    if (a.kind == "disk-polygons") {
        inst.regions = tools::disk_polygons(a.n, a.k, law, a.seed);
        if (!is_pseudodisk_family(inst.regions).ok || !is_cover_free(inst.regions).ok)
            throw Error(ErrorKind::SpecInvalid, "generated family failed validation");
    } else if (a.kind == "disjoint-polygons") {
        inst.regions = tools::disjoint_polygons(a.n, a.k, law, a.seed);
    } else if (a.kind == "random-segments") {
        auto segs = tools::random_segments(a.n, a.lmin, a.lmax, a.disjoint, a.seed);
        inst.regions = tools::segment_regions(segs, law, a.seed);
    } else if (a.kind == "lowerbound-rings") {
        inst.regions = tools::lowerbound_rings(parse_scalar(a.delta), a.c, a.copies);
    } else if (a.kind == "grid-points" || a.kind == "clustered-points") {
        if (a.input.empty()) throw Error(ErrorKind::SpecInvalid, a.kind + " needs --input");
        inst = parse_planar_instance(read_text(a.input));
        inst.points = make_points(inst.regions, a.kind == "grid-points" ? "grid" : "clustered",
                                  a.points, a.seed);
        write_text(a.output, write_planar_instance(inst));
        return 0;
    } else {
        throw Error(ErrorKind::SpecInvalid, "unknown generator kind: " + a.kind);
    }
    inst.points = make_points(inst.regions, a.point_mode, a.points, point_seed);
    write_text(a.output, write_planar_instance(inst));
    return 0;
}

// ---- solve ----

struct SolveArgs {
    std::string problem = "setcover";
    std::string algo = "qptas";
    std::string mode = "oracle";
    std::string eps = "1/2";
    int budget = 8;
    std::uint64_t seed = 1;
    std::string input;
    std::string svg;
    std::string output;
};

json solution_json(const Solution& s) {
    json j;
    j["selected"] = s.selected;
    j["weight"] = format_scalar(s.weight);
    j["provenance"] = s.provenance;
    return j;
}

int run_solve(const SolveArgs& a) {
    DriverConfig cfg;
    cfg.mode = parse_driver_mode(a.mode);
    cfg.eps = parse_scalar(a.eps);
    cfg.budget = a.budget;
    cfg.seed = a.seed;
    if (a.algo != "exact" && a.algo != "greedy" && a.algo != "qptas")
        throw Error(ErrorKind::InvalidInput, "unknown algorithm: " + a.algo);
    auto item = load_item(a.input);
    json out;
    out["problem"] = a.problem;
    out["algo"] = a.algo;
    if (a.algo == "qptas") out["mode"] = a.mode;
    out["eps"] = format_scalar(cfg.eps);
    out["seed"] = a.seed;
    Solution sol;
    bool feasible = false;
    if (a.problem == "halfspace3d") {
        if (!item.halfspace) throw Error(ErrorKind::InvalidInput, "expected a halfspace instance");
        if (a.algo == "exact") sol = exact_halfspace_cover(item.space);
        else if (a.algo == "greedy") sol = greedy_halfspace_cover(item.space);
        else {
            HalfspaceStats st;
            sol = qptas_halfspace_cover(item.space, cfg, &st);
            out["stats"] = {{"delta", format_scalar(st.delta)}, {"eps_net", format_scalar(st.eps_net)},
                            {"depth_cap", st.depth_cap}, {"nodes", st.nodes},
                            {"separator_calls", st.separator_calls},
                            {"separator_failures", st.separator_failures},
                            {"helly_available", st.helly_available},
                            {"conservation_failures", st.conservation_failures},
                            {"unbalanced", st.unbalanced}, {"net_core_violations", st.net_core_violations}};
        }
        feasible = is_halfspace_cover(item.space, sol.selected);
    } else if (a.problem == "setcover" || a.problem == "mis") {
        if (item.halfspace) throw Error(ErrorKind::InvalidInput, "expected a planar instance");
        const auto& regs = item.planar.regions;
        if (a.problem == "setcover") {
            SetCoverInstance inst{regs, item.planar.points};
            if (a.algo == "exact") sol = exact_set_cover(inst);
            else if (a.algo == "greedy") sol = greedy_set_cover(inst);
            else {
                DriverStats st;
                sol = qptas_set_cover(inst, cfg, &st);
                out["stats"] = {{"delta", format_scalar(st.delta)}, {"depth_cap", st.depth_cap},
                                {"guesses", st.guesses}, {"nodes", st.nodes},
                                {"separator_calls", st.separator_calls},
                                {"separator_failures", st.separator_failures},
                                {"base_cases", st.base_cases}, {"curves", st.curves}};
            }
            feasible = is_cover(inst, sol.selected);
        } else {
            if (a.algo == "exact") sol = exact_mis(regs);
            else if (a.algo == "greedy") sol = greedy_mis(regs);
            else {
                MisStats st;
                sol = qptas_independent_set(regs, cfg, &st);
                out["stats"] = {{"delta", format_scalar(st.delta)}, {"depth_cap", st.depth_cap},
                                {"filtered", st.filtered}, {"nodes", st.nodes},
                                {"separator_calls", st.separator_calls},
                                {"separator_failures", st.separator_failures}};
            }
            feasible = is_independent(regs, sol.selected);
        }
        if (!a.svg.empty()) {
            tools::SvgLayers layers;
            layers.selected = sol.selected;
            write_text(a.svg, tools::render_svg(item.planar, layers));
        }
    } else {
        throw Error(ErrorKind::InvalidInput, "unknown problem: " + a.problem);
    }
    out["solution"] = solution_json(sol);
    out["feasible"] = feasible;
    write_text(a.output, out.dump(2) + "\n");
    return feasible ? 0 : kExitGate;
}

// ---- separator ----

struct SeparatorArgs {
    std::string input;
    std::string delta = "1/5";
    long r = 0;
    std::uint64_t seed = 1;
    std::string svg;
    std::string output;
};

int run_separator(const SeparatorArgs& a) {
    auto item = load_item(a.input);
    if (item.halfspace) throw Error(ErrorKind::InvalidInput, "expected a planar instance");
    const auto& regs = item.planar.regions;
    bool disjoint = true;
    for (const auto& adj : intersection_graph(regs))
        if (!adj.empty()) disjoint = false;
    SeparatorConfig cfg;
    cfg.seed = a.seed;
    const Scalar delta = parse_scalar(a.delta);
    SeparatorReport rep = disjoint && a.r == 0 ? weighted_region_separator(regs, delta, cfg)
                                               : intersecting_region_separator(regs, a.r > 0 ? a.r : 16, cfg);
    SideClassification sides = classify(rep.curve, regs, item.planar.points);
    bool ok;
    if (disjoint && a.r == 0) {
        ok = rep.crossing_weight <= delta * rep.total && 3 * rep.inside_weight <= 2 * rep.total &&
             3 * rep.outside_weight <= 2 * rep.total;
    } else {
        const long n = static_cast<long>(regs.size());
        ok = 3 * static_cast<long>(sides.inside.size()) <= 2 * n &&
             3 * static_cast<long>(sides.outside.size()) <= 2 * n;
    }
    json out;
    out["kind"] = disjoint && a.r == 0 ? "weighted" : "intersecting";
    out["curve"] = points_json(rep.curve.geometry);
    out["encoding"] = encoding_key(encode(rep.curve));
    out["complexity"] = rep.curve.complexity();
    out["r"] = rep.r;
    out["total"] = format_scalar(rep.total);
    out["inside_weight"] = format_scalar(rep.inside_weight);
    out["outside_weight"] = format_scalar(rep.outside_weight);
    out["crossing_weight"] = format_scalar(rep.crossing_weight);
    out["inside"] = sides.inside;
    out["outside"] = sides.outside;
    out["crossing"] = sides.crossing;
    out["inside_points"] = sides.inside_points.size();
    out["outside_points"] = sides.outside_points.size();
    out["balanced"] = ok;
    write_text(a.output, out.dump(2) + "\n");
    if (!a.svg.empty()) {
        tools::SvgLayers layers;
        layers.curves.push_back(rep.curve.geometry);
        write_text(a.svg, tools::render_svg(item.planar, layers));
    }
    return ok ? 0 : kExitGate;
}

// ---- cores ----

struct CoresArgs {
    std::string input;
    std::string mode = "disjoint";
    int pusher = 0;
    std::uint64_t seed = 1;
    std::string svg;
    std::string output;
};

CoreDecomposition make_cores(const std::vector<Region>& regs, const std::string& mode, int pusher,
                             std::uint64_t seed) {
    if (mode == "pusher") return push(regs, pusher);
    if (mode == "disjoint") return disjoint_core_decomposition(regs, seed);
    if (mode == "uniform") return uniform_core_decomposition(regs, UniformConfig{}, seed);
    throw Error(ErrorKind::InvalidInput, "unknown core mode: " + mode);
}

int run_cores(const CoresArgs& a) {
    auto item = load_item(a.input);
    if (item.halfspace) throw Error(ErrorKind::InvalidInput, "expected a planar instance");
    const auto& regs = item.planar.regions;
    CoreDecomposition dec = make_cores(regs, a.mode, a.pusher, a.seed);
    CoreReport rep = verify_core_decomposition(regs, dec, item.planar.points);
    json out;
    out["mode"] = core_mode_name(dec.mode);
    out["order"] = dec.order;
    out["vertex_counts"] = rep.vertex_counts;
    out["violations"] = rep.violations;
    out["messages"] = rep.messages;
    out["total_intersections"] = rep.total_intersections;
    if (a.mode != "pusher") {
        CoreCost cost = core_vertex_cost(dec);
        out["cost"] = format_scalar(cost.cost);
        out["closed_form"] = format_scalar(cost.closed_form);
    }
    write_text(a.output, out.dump(2) + "\n");
    if (!a.svg.empty()) {
        tools::SvgLayers layers;
        layers.cores = &dec;
        write_text(a.svg, tools::render_svg(item.planar, layers));
    }
    return rep.ok() ? 0 : kExitGate;
}

// ---- partition ----

struct PartitionArgs {
    std::string input;
    long r = 10;
    std::uint64_t seed = 1;
    std::string output;
};

int run_partition(const PartitionArgs& a) {
    auto item = load_item(a.input);
    if (item.halfspace) throw Error(ErrorKind::InvalidInput, "expected a planar instance");
    CurveSet set = curves_of_regions(item.planar.regions, false);
    Partition part = sample_partition(set, a.r, a.seed);
    PartitionCheck chk = verify_partition(set, part);
    json out;
    out["r"] = a.r;
    out["cells"] = part.cells.size();
    out["first_level_cells"] = part.first_level_cells;
    out["sample"] = part.sample;
    out["budget"] = format_scalar(part.budget);
    out["max_conflict_weight"] = format_scalar(chk.max_conflict_weight);
    out["tiles"] = chk.tiles;
    out["within_budget"] = chk.within_budget;
    out["retries"] = part.retries;
    write_text(a.output, out.dump(2) + "\n");
    return chk.ok() ? 0 : kExitGate;
}

// ---- check ----

int run_check(const std::string& input, const std::string& output) {
    auto item = load_item(input);
    json out;
    bool ok = true;
    if (item.halfspace) {
        bool covered = true;
        try {
            halfspace_coverage(item.space);
        } catch (const Error&) {
            covered = false;
        }
        out["halfspaces"] = item.space.halfspaces.size();
        out["points"] = item.space.points.size();
        out["covered"] = covered;
        ok = covered;
    } else {
        const auto& regs = item.planar.regions;
        FamilyCheck pd = is_pseudodisk_family(regs);
        FamilyCheck cf = is_cover_free(regs);
        int on_boundary = 0, uncovered = 0;
        for (const auto& p : item.planar.points) {
            bool in = false, on = false;
            for (const auto& r : regs) {
                Location l = locate(p, r);
                if (l == Location::OnBoundary) on = true;
                if (l == Location::Inside) in = true;
            }
            on_boundary += on;
            uncovered += !in && !on;
        }
        out["regions"] = regs.size();
        out["points"] = item.planar.points.size();
        out["pseudodisks"] = pd.ok;
        out["max_crossings"] = pd.max_crossings;
        out["cover_free"] = cf.ok;
        out["points_on_boundary"] = on_boundary;
        out["points_uncovered"] = uncovered;
        ok = pd.ok && cf.ok && on_boundary == 0;
    }
    out["ok"] = ok;
    write_text(output, out.dump(2) + "\n");
    return ok ? 0 : kExitGate;
}

// ---- render ----

int run_render(const std::string& input, const std::string& cores, const std::string& solution,
               std::uint64_t seed, const std::string& output) {
    auto item = load_item(input);
    if (item.halfspace) throw Error(ErrorKind::InvalidInput, "render draws planar instances");
    tools::SvgLayers layers;
    CoreDecomposition dec;
    if (!cores.empty()) {
        dec = make_cores(item.planar.regions, cores, 0, seed);
        layers.cores = &dec;
    }
    if (!solution.empty()) {
        json s = json::parse(read_text(solution));
        const json& sel = s.contains("solution") ? s.at("solution").at("selected") : s.at("selected");
        layers.selected = sel.get<std::vector<int>>();
    }
    write_text(output, tools::render_svg(item.planar, layers));
    return 0;
}

// ---- bench ----

struct BenchArgs {
    std::string suite = "cores";
    std::vector<std::string> corpus;
    int seeds = 1;
    std::uint64_t first_seed = 1;
    std::string eps = "1/2";
    std::string delta = "1/5";
    long r = 10;
    bool timing = false;
    int jobs = 0;
    std::string output;
};

int run_bench(const BenchArgs& a) {
    auto corpus = tools::load_corpus(a.corpus);
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < a.seeds; ++i) seeds.push_back(a.first_seed + static_cast<std::uint64_t>(i));
    tools::SuiteOptions opts;
    opts.eps = parse_scalar(a.eps);
    opts.delta = parse_scalar(a.delta);
    opts.r = a.r;
    opts.timing = a.timing;
    opts.jobs = a.jobs > 0 ? a.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    auto res = tools::run_suite(a.suite, corpus, seeds, opts);
    write_text(a.output, tools::write_bench_csv(res.records, a.timing));
    if (res.gate_failures > 0) std::cerr << res.gate_failures << " hard-gate failure(s)\n";
    return res.gate_failures > 0 ? kExitGate : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separator-based geometric set cover and independent set toolkit"};
    app.require_subcommand(1);
    const std::uint64_t seed0 = default_seed();

    GenArgs gen;
    gen.seed = seed0;
    auto* g = app.add_subcommand("gen", "Generate an instance");
    g->add_option("--kind", gen.kind,
                  "disk-polygons|disjoint-polygons|random-segments|lowerbound-rings|grid-points|"
                  "clustered-points|random-halfspaces");
    g->add_option("-n", gen.n, "Number of regions, segments or halfspaces");
    g->add_option("-k", gen.k, "Polygon resolution");
    g->add_option("--law", gen.law, "unit|uniform10");
    g->add_option("--delta", gen.delta, "lowerbound-rings delta");
    g->add_option("-c", gen.c, "lowerbound-rings constant");
    g->add_option("--copies", gen.copies, "lowerbound-rings copies");
    g->add_option("--points", gen.points, "Point count (grid: points per side)");
    g->add_option("--point-mode", gen.point_mode, "clustered|grid");
    g->add_option("--lmin", gen.lmin);
    g->add_option("--lmax", gen.lmax);
    g->add_flag("--disjoint", gen.disjoint, "Pairwise disjoint segments");
    g->add_option("--opposing", gen.opposing, "Fraction of halfspaces containing the origin");
    g->add_option("--input", gen.input, "Instance receiving generated points");
    g->add_option("--seed", gen.seed);
    g->add_option("-o,--output", gen.output);

    SolveArgs solve;
    solve.seed = seed0;
    auto* s = app.add_subcommand("solve", "Solve set cover, independent set or halfspace cover");
    s->add_option("input", solve.input)->required();
    s->add_option("--problem", solve.problem, "setcover|mis|halfspace3d");
    s->add_option("--algo", solve.algo, "exact|greedy|qptas");
    s->add_option("--mode", solve.mode, "oracle|heuristic|enumerate");
    s->add_option("--eps", solve.eps);
    s->add_option("--budget", solve.budget, "Curve pieces in enumerate mode");
    s->add_option("--seed", solve.seed);
    s->add_option("--svg", solve.svg, "Also write an SVG with the solution highlighted");
    s->add_option("-o,--output", solve.output);

    SeparatorArgs sep;
    sep.seed = seed0;
    auto* sp = app.add_subcommand("separator", "Balanced separator curve");
    sp->add_option("input", sep.input)->required();
    sp->add_option("--delta", sep.delta, "Crossing weight fraction (disjoint regions)");
    sp->add_option("--r", sep.r, "Sampling parameter; forces the intersecting variant");
    sp->add_option("--seed", sep.seed);
    sp->add_option("--svg", sep.svg);
    sp->add_option("-o,--output", sep.output);

    CoresArgs cores;
    cores.seed = seed0;
    auto* c = app.add_subcommand("cores", "Core decomposition with verification");
    c->add_option("input", cores.input)->required();
    c->add_option("--mode", cores.mode, "pusher|disjoint|uniform");
    c->add_option("--pusher", cores.pusher, "Pusher region index");
    c->add_option("--seed", cores.seed);
    c->add_option("--svg", cores.svg);
    c->add_option("-o,--output", cores.output);

    PartitionArgs part;
    part.seed = seed0;
    auto* p = app.add_subcommand("partition", "Sampled trapezoidal partition");
    p->add_option("input", part.input)->required();
    p->add_option("--r", part.r);
    p->add_option("--seed", part.seed);
    p->add_option("-o,--output", part.output);

    std::string check_input, check_output;
    auto* ck = app.add_subcommand("check", "Validate an instance");
    ck->add_option("input", check_input)->required();
    ck->add_option("-o,--output", check_output);

    std::string render_input, render_cores, render_solution, render_output;
    std::uint64_t render_seed = seed0;
    auto* rd = app.add_subcommand("render", "Draw an instance as SVG");
    rd->add_option("input", render_input)->required();
    rd->add_option("--cores", render_cores, "Overlay cores: pusher|disjoint|uniform");
    rd->add_option("--solution", render_solution, "Solution JSON from solve");
    rd->add_option("--seed", render_seed);
    rd->add_option("-o,--output", render_output);

    BenchArgs bench;
    bench.first_seed = seed0;
    auto* b = app.add_subcommand("bench", "Run a suite over a corpus and write CSV");
    b->add_option("--suite", bench.suite, "cores|cs-sum|separator|partition|qptas|halfspace");
    b->add_option("corpus", bench.corpus, "Instance files or directories");
    b->add_option("--seeds", bench.seeds, "Number of seeds");
    b->add_option("--seed", bench.first_seed, "First seed");
    b->add_option("--eps", bench.eps);
    b->add_option("--delta", bench.delta);
    b->add_option("--r", bench.r);
    b->add_flag("--timing", bench.timing, "Fill the wall_ms column");
    b->add_option("--jobs", bench.jobs, "Worker threads (0: all cores)");
    b->add_option("-o,--output", bench.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*g) return run_gen(gen);
        if (*s) return run_solve(solve);
        if (*sp) return run_separator(sep);
        if (*c) return run_cores(cores);
        if (*p) return run_partition(part);
        if (*ck) return run_check(check_input, check_output);
        if (*rd) return run_render(render_input, render_cores, render_solution, render_seed, render_output);
        if (*b) return run_bench(bench);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return is_input_error(e.kind()) ? kExitInput : kExitGate;
    } catch (const json::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
