#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "locavg/harness.hpp"

using namespace locavg;

namespace {

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.algorithm = j.at("algorithm").get<std::string>();
    c.graph = j.value("graph", std::string("forest"));
    c.n = j.value("n", 256);
    c.m = j.value("m", 0LL);
    c.graph_seed = j.value("graph_seed", 1ULL);
    c.a = j.value("a", 1);
    c.epsilon = parse_rational(j.value("epsilon", std::string("2")));
    c.k = j.value("k", 2);
    c.bigC = j.value("bigC", 8);
    c.family = j.value("family", std::string("polynomial"));
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.id_permutations = j.value("id_permutations", 8);
    c.round_cap = j.value("round_cap", 0LL);
    c.out_path = j.value("out", std::string());
    c.format = j.value("format", std::string("json"));
    return c;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) seeds.push_back(std::stoull(item));
    return seeds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LOCAL-model simulator and symmetry-breaking algorithm suite"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a graph file");
    std::string gen_kind = "forest";
    int gen_n = 256;
    long long gen_m = 0;
    int gen_a = 1;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--graph", gen_kind, "ring | forest | random");
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--m", gen_m, "edge count (random)");
    gen->add_option("--arboricity", gen_a, "forest count (forest)");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output path (default stdout)")->required();

    // ---- run ----
    auto* runcmd = app.add_subcommand("run", "run a single experiment");
    ExperimentConfig cfg;
    std::string eps_text = "2";
    std::string seeds_text;
    runcmd->add_option("--algo", cfg.algorithm, "algorithm name")->required();
    runcmd->add_option("--graph", cfg.graph, "ring | forest | random | edge-list file");
    runcmd->add_option("--n", cfg.n, "vertex count (generators)");
    runcmd->add_option("--m", cfg.m, "edge count (random generator)");
    runcmd->add_option("--arboricity", cfg.a, "arboricity bound");
    runcmd->add_option("--epsilon", eps_text, "epsilon in (0,2], e.g. 2 or 1/2");
    runcmd->add_option("--k", cfg.k, "segment count");
    runcmd->add_option("--bigC", cfg.bigC, "recursion base constant");
    runcmd->add_option("--family", cfg.family, "polynomial | greedy");
    runcmd->add_option("--seed", cfg.graph_seed, "generator seed");
    runcmd->add_option("--seeds", seeds_text, "comma-separated run seeds");
    runcmd->add_option("--id-perms", cfg.id_permutations, "ID permutations per seed");
    runcmd->add_option("--round-cap", cfg.round_cap, "engine round cap (0 = default)");
    runcmd->add_option("--out", cfg.out_path, "output path (default stdout)");
    runcmd->add_option("--format", cfg.format, "json | csv | svg");

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "run a batch from a JSON config file");
    std::string bench_file;
    std::string bench_out;
    std::string bench_format = "json";
    bench->add_option("config", bench_file, "config file")->required();
    bench->add_option("--out", bench_out, "output path (default stdout)");
    bench->add_option("--format", bench_format, "json | csv");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check a solution file against a graph");
    std::string verify_graph, verify_solution;
    verify->add_option("--graph", verify_graph, "edge-list file")->required();
    verify->add_option("--solution", verify_solution, "solution JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            Graph g = gen_kind == "ring"     ? gen_ring(gen_n)
                      : gen_kind == "random" ? gen_random_graph(gen_n, gen_m, gen_seed)
                                             : gen_forest_union(gen_n, gen_a, gen_seed);
            write_edge_list(g, gen_out);
            std::cerr << "wrote " << gen_out << " (n=" << g.n() << ", m=" << g.m() << ")\n";
        } else if (runcmd->parsed()) {
            cfg.epsilon = parse_rational(eps_text);
            if (!seeds_text.empty()) cfg.seeds = parse_seed_list(seeds_text);
            if (cfg.graph.empty()) cfg.graph = "forest";
            ExperimentReport report = run_experiment(cfg);
            emit_report(report, cfg.format, cfg.out_path);
            if (!report.all_valid) return 2;
        } else if (bench->parsed()) {
            std::ifstream f(bench_file);
            if (!f) throw std::runtime_error("cannot open " + bench_file);
            nlohmann::json j;
            f >> j;
            nlohmann::json experiments =
                j.is_array() ? j : (j.contains("experiments") ? j.at("experiments")
                                                              : nlohmann::json::array({j}));
            bool all_ok = true;
            std::ostringstream csv;
            nlohmann::json out = nlohmann::json::array();
            for (const auto& ej : experiments) {
                ExperimentConfig c = config_from_json(ej);
                ExperimentReport rep = run_experiment(c);
                all_ok = all_ok && rep.all_valid;
                if (bench_format == "csv")
                    csv << report_csv(rep);
                else
                    out.push_back(nlohmann::json::parse(report_json(rep)));
            }
            std::string text = bench_format == "csv" ? csv.str() : out.dump(2);
            if (bench_out.empty()) {
                std::cout << text << "\n";
            } else {
                std::ofstream of(bench_out);
                of << text << "\n";
            }
            if (!all_ok) return 2;
        } else if (verify->parsed()) {
            Graph g = load_edge_list(verify_graph);
            std::ifstream f(verify_solution);
            if (!f) throw std::runtime_error("cannot open " + verify_solution);
            std::stringstream buf;
            buf << f.rdbuf();
            FileVerdict fv = verify_solution_file(g, buf.str());
            std::cout << (fv.pass ? "PASS" : "FAIL") << ": " << fv.detail << "\n";
            if (!fv.pass) return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
