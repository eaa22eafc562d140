#include "pdcover_tools/bench.h"

#include "pdcover/cores/cores.h"
#include "pdcover/geom/arrangement.h"
#include "pdcover/geom/errors.h"
#include "pdcover/halfspace3d/driver.h"
#include "pdcover/partition/trapezoid.h"
#include "pdcover/separator/separator.h"
#include "pdcover/solvers/mis.h"
#include "pdcover/solvers/qptas.h"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

namespace pdc::tools {

namespace {

namespace fs = std::filesystem;

std::string decimal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string ratio_of(const Scalar& a, const Scalar& b) {
    if (b == 0) return "";
    return decimal(to_double(Scalar(a / b)));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::CorpusInvalid, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

bool disjoint_family(const std::vector<Region>& regions) {
    for (const auto& adj : intersection_graph(regions))
        if (!adj.empty()) return false;
    return true;
}

BenchRecord base(const std::string& suite, const CorpusItem& item, std::uint64_t seed) {
    BenchRecord r;
    r.suite = suite;
    r.instance = item.name;
    r.seed = seed;
    r.gate = "none";
    return r;
}

BenchRecord cores_row(const CorpusItem& item, std::uint64_t seed, const SuiteOptions&) {
    BenchRecord r = base("cores", item, seed);
    r.algorithm = "disjoint-cores";
    const auto& regs = item.planar.regions;
    r.total_weight = format_scalar(total_weight(regs));
    try {
        CoreDecomposition dec = disjoint_core_decomposition(regs, seed);
        CoreReport rep = verify_core_decomposition(regs, dec, item.planar.points);
        CoreCost cost = core_vertex_cost(dec);
        r.output_weight = format_scalar(cost.cost);
        r.oracle_weight = format_scalar(cost.closed_form);
        r.ratio = ratio_of(cost.cost, cost.closed_form);
        r.complexity = rep.total_intersections;
        r.gate = rep.ok() ? "pass" : "fail";
        if (!rep.ok() && !rep.messages.empty()) r.note = rep.messages.front();
    } catch (const Error& e) {
        const bool invalid = e.kind() == ErrorKind::NotCoverFree || e.kind() == ErrorKind::NotPseudodisks;
        r.gate = invalid ? "skip" : "fail";
        r.note = e.what();
    }
    return r;
}

BenchRecord cs_sum_row(const CorpusItem& item, std::uint64_t seed, const SuiteOptions&) {
    BenchRecord r = base("cs-sum", item, seed);
    r.algorithm = "cs-sum";
    const auto& regs = item.planar.regions;
    const Scalar w = total_weight(regs);
    r.total_weight = format_scalar(w);
    Scalar best = 0, best_k = 0;
    Arrangement arr = build_arrangement(regs);
    for (Scalar k = 1; k <= std::max(w, Scalar(1)); k *= 2) {
        Scalar s = cs_sum(arr, k);
        if (s > best) {
            best = s;
            best_k = k;
        }
    }
    r.output_weight = format_scalar(best);
    r.oracle_weight = format_scalar(w);
    r.ratio = ratio_of(best, w);
    r.fitted = r.ratio;
    r.complexity = arr.m;
    r.note = "k=" + format_scalar(best_k);
    return r;
}

BenchRecord separator_row(const CorpusItem& item, std::uint64_t seed, const SuiteOptions& opts) {
    BenchRecord r = base("separator", item, seed);
    const auto& regs = item.planar.regions;
    SeparatorConfig cfg;
    cfg.seed = seed;
    try {
        if (disjoint_family(regs)) {
            r.algorithm = "weighted";
            r.delta = format_scalar(opts.delta);
            SeparatorReport rep = weighted_region_separator(regs, opts.delta, cfg);
            r.total_weight = format_scalar(rep.total);
            r.crossing_weight = format_scalar(rep.crossing_weight);
            r.complexity = rep.curve.complexity();
            r.r = std::to_string(rep.r);
            r.fitted = decimal(rep.curve.complexity() * to_double(opts.delta) / std::max(1, rep.alpha));
            const bool ok = rep.crossing_weight <= opts.delta * rep.total &&
                            3 * rep.inside_weight <= 2 * rep.total && 3 * rep.outside_weight <= 2 * rep.total;
            r.gate = ok ? "pass" : "fail";
        } else {
            r.algorithm = "intersecting";
            r.r = std::to_string(opts.r);
            SeparatorReport rep = intersecting_region_separator(regs, opts.r, cfg);
            const long n = static_cast<long>(regs.size());
            r.total_weight = std::to_string(n);
            r.complexity = rep.curve.complexity();
            r.crossing_weight = std::to_string(rep.sides.crossing.size());
            r.fitted = decimal(rep.crossing_envelope > 0 ? rep.sides.crossing.size() / rep.crossing_envelope : 0);
            const bool ok = 3 * static_cast<long>(rep.sides.inside.size()) <= 2 * n &&
                            3 * static_cast<long>(rep.sides.outside.size()) <= 2 * n;
            r.gate = ok ? "pass" : "fail";
        }
    } catch (const Error& e) {
        r.gate = e.kind() == ErrorKind::Unbalanced ? "skip" : "fail";
        r.note = e.what();
    }
    return r;
}

BenchRecord partition_row(const CorpusItem& item, std::uint64_t seed, const SuiteOptions& opts) {
    BenchRecord r = base("partition", item, seed);
    r.algorithm = "sampled-partition";
    r.r = std::to_string(opts.r);
    const auto& regs = item.planar.regions;
    try {
        CurveSet set = curves_of_regions(regs, false);
        Partition part = sample_partition(set, opts.r, seed);
        PartitionCheck chk = verify_partition(set, part);
        const double n = std::max<std::size_t>(1, regs.size());
        const double m = build_arrangement(regs).m;
        const double rr = static_cast<double>(opts.r);
        r.total_weight = format_scalar(part.total_weight);
        r.crossing_weight = format_scalar(chk.max_conflict_weight);
        r.complexity = static_cast<int>(part.cells.size());
        r.fitted = decimal(part.cells.size() / (rr + m * rr * rr / (n * n)));
        r.gate = chk.ok() ? "pass" : "fail";
    } catch (const Error& e) {
        r.gate = "fail";
        r.note = e.what();
    }
    return r;
}

BenchRecord qptas_row(const CorpusItem& item, std::uint64_t seed, const SuiteOptions& opts) {
    BenchRecord r = base("qptas", item, seed);
    r.algorithm = "qptas";
    r.mode = "oracle";
    r.eps = format_scalar(opts.eps);
    SetCoverInstance inst{item.planar.regions, item.planar.points};
    try {
        DriverConfig cfg;
        cfg.eps = opts.eps;
        cfg.seed = seed;
        DriverStats st;
        Solution sol = qptas_set_cover(inst, cfg, &st);
        r.delta = format_scalar(st.delta);
        r.output_weight = format_scalar(sol.weight);
        r.total_weight = format_scalar(total_weight(inst.regions));
        r.complexity = st.separator_calls;
        bool ok = is_cover(inst, sol.selected);
        if (static_cast<int>(inst.regions.size()) <= cfg.exact_cap) {
            Solution ex = exact_set_cover(inst, cfg.exact_cap);
            r.oracle_weight = format_scalar(ex.weight);
            r.ratio = ratio_of(sol.weight, ex.weight);
            ok = ok && sol.weight <= (1 + opts.eps) * ex.weight;
        }
        r.gate = ok ? "pass" : "fail";
    } catch (const Error& e) {
        r.gate = e.kind() == ErrorKind::Infeasible || e.kind() == ErrorKind::InvalidInput ? "skip" : "fail";
        r.note = e.what();
    }
    return r;
}

BenchRecord halfspace_row(const CorpusItem& item, std::uint64_t seed, const SuiteOptions& opts) {
    BenchRecord r = base("halfspace", item, seed);
    r.algorithm = "qptas";
    r.mode = "oracle";
    r.eps = format_scalar(opts.eps);
    const auto& inst = item.space;
    try {
        DriverConfig cfg;
        cfg.eps = opts.eps;
        cfg.seed = seed;
        HalfspaceStats st;
        Solution sol = qptas_halfspace_cover(inst, cfg, &st);
        r.delta = format_scalar(st.delta);
        r.output_weight = format_scalar(sol.weight);
        Scalar w = 0;
        for (const auto& h : inst.halfspaces) w += h.weight;
        r.total_weight = format_scalar(w);
        r.complexity = st.separator_calls;
        bool ok = is_halfspace_cover(inst, sol.selected) && st.conservation_failures == 0 &&
                  st.unbalanced == 0 && st.net_core_violations == 0;
        if (static_cast<int>(inst.halfspaces.size()) <= cfg.exact_cap) {
            Solution ex = exact_halfspace_cover(inst, cfg.exact_cap);
            r.oracle_weight = format_scalar(ex.weight);
            r.ratio = ratio_of(sol.weight, ex.weight);
            ok = ok && sol.weight <= (1 + opts.eps) * ex.weight;
        }
        r.gate = ok ? "pass" : "fail";
        r.note = "helly=" + std::string(st.helly_available ? "1" : "0");
    } catch (const Error& e) {
        r.gate = e.kind() == ErrorKind::Infeasible ? "skip" : "fail";
        r.note = e.what();
    }
    return r;
}

using RowFn = std::function<BenchRecord(const CorpusItem&, std::uint64_t, const SuiteOptions&)>;

}  // namespace

CorpusItem parse_corpus_item(const std::string& name, const std::string& text) {
    CorpusItem item;
    item.name = name;
    try {
        auto doc = nlohmann::json::parse(text);
        item.halfspace = doc.is_object() && doc.contains("halfspaces");
        if (item.halfspace)
            item.space = parse_halfspace_instance(text);
        else
            item.planar = parse_planar_instance(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::CorpusInvalid, name + ": " + e.what());
    } catch (const Error& e) {
        throw Error(ErrorKind::CorpusInvalid, name + ": " + e.what());
    }
    return item;
}

std::vector<CorpusItem> load_corpus(const std::vector<std::string>& paths) {
    std::vector<std::string> files;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<std::string> inner;
            for (const auto& e : fs::directory_iterator(p))
                if (e.path().extension() == ".json") inner.push_back(e.path().string());
            std::sort(inner.begin(), inner.end());
            files.insert(files.end(), inner.begin(), inner.end());
        } else {
            files.push_back(p);
        }
    }
    std::vector<CorpusItem> out;
    for (const auto& f : files) out.push_back(parse_corpus_item(fs::path(f).filename().string(), read_file(f)));
    return out;
}

const std::vector<std::string>& bench_columns() {
    static const std::vector<std::string> cols{
        "suite", "instance", "seed", "algorithm", "mode", "eps", "delta", "r",
        "output_weight", "oracle_weight", "ratio", "total_weight", "crossing_weight",
        "complexity", "fitted", "gate", "note", "wall_ms"};
    return cols;
}

std::string write_bench_csv(const std::vector<BenchRecord>& records, bool timing) {
    std::string out;
    const auto& cols = bench_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += "\n";
    for (const auto& r : records) {
        std::vector<std::string> f{r.suite, r.instance, std::to_string(r.seed), r.algorithm, r.mode,
                                   r.eps, r.delta, r.r, r.output_weight, r.oracle_weight, r.ratio,
                                   r.total_weight, r.crossing_weight, std::to_string(r.complexity),
                                   r.fitted, r.gate, r.note, timing ? decimal(r.wall_ms) : ""};
        for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + csv_field(f[i]);
        out += "\n";
    }
    return out;
}

std::vector<BenchRecord> parse_bench_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != bench_columns())
        throw Error(ErrorKind::CorpusInvalid, "unexpected CSV header");
    std::vector<BenchRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != bench_columns().size()) throw Error(ErrorKind::CorpusInvalid, "bad CSV row: " + line);
        BenchRecord r;
        r.suite = f[0];
        r.instance = f[1];
        r.seed = std::stoull(f[2]);
        r.algorithm = f[3];
        r.mode = f[4];
        r.eps = f[5];
        r.delta = f[6];
        r.r = f[7];
        r.output_weight = f[8];
        r.oracle_weight = f[9];
        r.ratio = f[10];
        r.total_weight = f[11];
        r.crossing_weight = f[12];
        r.complexity = std::stoi(f[13]);
        r.fitted = f[14];
        r.gate = f[15];
        r.note = f[16];
        r.wall_ms = f[17].empty() ? 0 : std::stod(f[17]);
        out.push_back(std::move(r));
    }
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"cores", "cs-sum", "separator", "partition", "qptas",
                                                "halfspace"};
    return names;
}

SuiteResult run_suite(const std::string& suite, const std::vector<CorpusItem>& corpus,
                      const std::vector<std::uint64_t>& seeds, const SuiteOptions& opts) {
    RowFn fn;
    bool wants_space = false;
    if (suite == "cores") fn = cores_row;
    else if (suite == "cs-sum") fn = cs_sum_row;
    else if (suite == "separator") fn = separator_row;
    else if (suite == "partition") fn = partition_row;
    else if (suite == "qptas") fn = qptas_row;
    else if (suite == "halfspace") fn = halfspace_row, wants_space = true;
    else throw Error(ErrorKind::SpecInvalid, "unknown suite: " + suite);

    std::vector<std::pair<const CorpusItem*, std::uint64_t>> jobs;
    for (const auto& item : corpus)
        if (item.halfspace == wants_space)
            for (auto s : seeds) jobs.emplace_back(&item, s);

    SuiteResult res;
    res.records.resize(jobs.size());
    auto run_one = [&](std::size_t i) {
        auto t0 = std::chrono::steady_clock::now();
        BenchRecord r = fn(*jobs[i].first, jobs[i].second, opts);
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        res.records[i] = std::move(r);
    };
    const std::size_t workers = static_cast<std::size_t>(std::max(1, opts.jobs));
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < jobs.size(); i += workers) run_one(i);
        }));
    for (auto& f : pool) f.get();
    for (const auto& r : res.records)
        if (r.gate == "fail") ++res.gate_failures;
    return res;
}

}  // namespace pdc::tools
