#ifndef LOCAVG_HARNESS_HPP
#define LOCAVG_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "locavg/cff.hpp"
#include "locavg/coloring.hpp"
#include "locavg/engine.hpp"
#include "locavg/graph.hpp"
#include "locavg/partition.hpp"
#include "locavg/schemes.hpp"

namespace locavg {

struct ExperimentConfig {
    std::string algorithm;  // registry name, see algorithm_names()

    // Graph: either a file path or a generator spec.
    std::string graph;  // "ring" | "forest" | "random" | file path
    int n = 0;
    long long m = 0;
    std::uint64_t graph_seed = 1;

    int a = 1;
    Rational epsilon{2, 1};
    int k = 2;
    int bigC = 8;
    std::string family = "polynomial";  // color-a2logn: polynomial | greedy

    std::vector<std::uint64_t> seeds{1};
    int id_permutations = 8;
    long long round_cap = 0;

    std::string out_path;         // empty: stdout
    std::string format = "json";  // json | csv | svg
};

struct RunRecord {
    std::uint64_t seed = 0;
    int perm = 0;  // 0 = identity assignment
    Rational avg;
    double avg_float = 0.0;
    int worst = 0;
    std::vector<long long> decay;
    long long colors_or_size = 0;
    bool valid = false;
    std::string verdict;  // empty when valid
    std::string substitution_flags;
    std::uint64_t transcript_hash = 0;
};

struct ExperimentReport {
    ExperimentConfig config;
    int n = 0;
    int m = 0;
    std::vector<RunRecord> runs;
    double mean_avg = 0.0;
    double max_avg = 0.0;
    bool all_valid = false;
};

std::vector<std::string> algorithm_names();

Graph materialize_graph(const ExperimentConfig& config);

ExperimentReport run_experiment(const ExperimentConfig& config);

std::string report_json(const ExperimentReport& report);
std::string report_csv(const ExperimentReport& report);
std::string report_svg(const ExperimentReport& report);  // decay curve, log-y

// Writes in the requested format; empty path means stdout.
void emit_report(const ExperimentReport& report, const std::string& format,
                 const std::string& out_path);

// External JSON forms for the structural objects.
std::string hpartition_json(const HPartition& hp);
std::string forest_decomposition_json(const ForestDecomposition& fd);
std::string cff_json(const CoverFreeFamily& f);
std::string segmented_coloring_json(const SegmentedColoring& sc);

// Parses "p", "p/q", or a simple decimal like "0.5" into a rational.
Rational parse_rational(const std::string& text);

// Solution-file verification for the CLI: solution JSON against a graph.
struct FileVerdict {
    bool pass = false;
    std::string detail;
};
FileVerdict verify_solution_file(const Graph& g, const std::string& solution_json_text);

}  // namespace locavg

#endif
