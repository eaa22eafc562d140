#pragma once

#include "pdcover/geom/instance_io.h"
#include "pdcover/halfspace3d/halfspace.h"

#include <cstdint>
#include <string>
#include <vector>

namespace pdc::tools {

/// One corpus file: planar regions and points, or halfspaces and points.
struct CorpusItem {
    std::string name;
    bool halfspace = false;
    PlanarInstance planar;
    HalfspaceInstance space;
};

/// Instance text in either format, detected by its "halfspaces" key.
CorpusItem parse_corpus_item(const std::string& name, const std::string& text);

/// Files and directories (their *.json files, sorted by name). Throws
/// CorpusInvalid on unreadable or malformed files.
std::vector<CorpusItem> load_corpus(const std::vector<std::string>& paths);

/// One row of a suite run. Rationals are exact strings; every ratio comes
/// with its two operands (output / oracle).
struct BenchRecord {
    std::string suite;
    std::string instance;
    std::uint64_t seed = 0;
    std::string algorithm;
    std::string mode;
    std::string eps, delta, r;
    std::string output_weight, oracle_weight, ratio;
    std::string total_weight;
    std::string crossing_weight;
    int complexity = 0;
    std::string fitted;   ///< suite-specific fitted constant
    std::string gate;     ///< pass, fail, skip or none
    std::string note;
    double wall_ms = 0;   ///< written only when timing is requested
};

/// Fixed column order of the CSV output.
const std::vector<std::string>& bench_columns();

std::string write_bench_csv(const std::vector<BenchRecord>& records, bool timing);
/// Inverse of write_bench_csv. Throws CorpusInvalid on a wrong header.
std::vector<BenchRecord> parse_bench_csv(const std::string& text);

struct SuiteOptions {
    Scalar eps = Scalar(1, 2);
    Scalar delta = Scalar(1, 5);
    long r = 10;
    bool timing = false;
    int jobs = 1;
};

struct SuiteResult {
    std::vector<BenchRecord> records;
    int gate_failures = 0;
};

const std::vector<std::string>& suite_names();

/// Runs the named suite (cores, cs-sum, separator, partition, qptas,
/// halfspace) on every item and seed. Rows are ordered by item, then seed,
/// regardless of `jobs`. Throws SpecInvalid on an unknown suite.
SuiteResult run_suite(const std::string& suite, const std::vector<CorpusItem>& corpus,
                      const std::vector<std::uint64_t>& seeds, const SuiteOptions& opts = {});

}  // namespace pdc::tools
