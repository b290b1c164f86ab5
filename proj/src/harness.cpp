#include "locavg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "locavg/arbdefective.hpp"
#include "locavg/extension.hpp"
#include "locavg/oracle.hpp"
#include "locavg/randomized.hpp"

namespace locavg {

using nlohmann::json;

namespace {

std::uint64_t hash_values(const std::vector<long long>& vals) {
    std::uint64_t h = 1469598103934665603ULL;
    for (long long v : vals) {
        for (int i = 0; i < 8; ++i) {
            h ^= (static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

std::uint64_t hash_coloring(const Coloring& c) {
    std::vector<long long> flat;
    for (const auto& col : c.colors) {
        flat.push_back(static_cast<long long>(col.size()));
        flat.insert(flat.end(), col.begin(), col.end());
    }
    return hash_values(flat);
}

struct AlgoOutcome {
    Metrics metrics;
    long long colors_or_size = 0;
    bool valid = false;
    std::string verdict;
    std::string flags;
    std::uint64_t transcript = 0;
    bool has_metrics = true;
};

AlgoOutcome run_algorithm(const ExperimentConfig& cfg, const Graph& g, const IdAssignment& ids,
                          std::uint64_t seed) {
    RunOptions opt;
    opt.seed = seed;
    opt.round_cap = cfg.round_cap;
    AlgoOutcome out;
    const std::string& name = cfg.algorithm;

    if (name == "partition") {
        auto [hp, exec] = procedure_partition(g, ids, PartitionParams(cfg.a, cfg.epsilon), opt);
        out.metrics = exec.metrics;
        out.transcript = exec.transcript_hash;
        out.colors_or_size = hp.ell;
        auto rep = verify_h_partition(g, hp, PartitionParams(cfg.a, cfg.epsilon));
        out.valid = rep.ok();
        if (!rep.ok()) out.verdict = rep.violations.front();
    } else if (name == "forest-decomposition") {
        auto res = parallelized_forest_decomposition(g, ids, PartitionParams(cfg.a, cfg.epsilon), opt);
        out.metrics = res.exec.metrics;
        out.transcript = res.exec.transcript_hash;
        out.colors_or_size = res.fd.num_labels();
        auto r1 = verify_h_partition(g, res.hp, PartitionParams(cfg.a, cfg.epsilon));
        auto r2 = verify_forest_decomposition(g, res.fd, PartitionParams(cfg.a, cfg.epsilon));
        out.valid = r1.ok() && r2.ok();
        if (!out.valid)
            out.verdict = !r1.ok() ? r1.violations.front() : r2.violations.front();
    } else if (name == "color-a2logn") {
        auto kind = cfg.family == "greedy" ? CoverFreeFamily::Kind::greedy
                                           : CoverFreeFamily::Kind::polynomial;
        auto res = color_a2logn(g, ids, cfg.a, cfg.epsilon, kind, opt);
        out.metrics = res.exec.metrics;
        out.transcript = res.exec.transcript_hash;
        out.colors_or_size = res.coloring.palette_size();
        auto v = verify_proper_coloring(g, res.coloring);
        out.valid = v.pass && res.fallback_count == 0;
        if (!v.pass) out.verdict = v.reasons.front();
        if (res.fallback_count > 0) out.verdict += " fallback used";
        out.flags = cfg.family == "greedy" ? "family=greedy" : "family=polynomial";
    } else if (name == "color-ka2" || name == "color-ka") {
        auto res = name == "color-ka2" ? color_ka2(g, ids, cfg.a, cfg.epsilon, cfg.k, opt)
                                       : color_ka(g, ids, cfg.a, cfg.epsilon, cfg.k, opt);
        out.metrics = res.exec.metrics;
        out.transcript = res.exec.transcript_hash;
        out.colors_or_size = res.coloring.coloring.palette_size();
        auto v = verify_proper_coloring(g, res.coloring.coloring);
        out.valid = v.pass;
        if (!v.pass) out.verdict = v.reasons.front();
        for (int u = 0; u < g.n() && out.valid; ++u) {
            int seg = res.coloring.segment[static_cast<std::size_t>(u)];
            long long c = res.coloring.coloring.colors[static_cast<std::size_t>(u)][0];
            if (c < (seg - 1) * res.coloring.alpha || c >= seg * res.coloring.alpha) {
                out.valid = false;
                out.verdict = "segment palette containment violated";
            }
        }
    } else if (name == "one-plus-eta") {
        auto res = one_plus_eta_arb_col(g, ids, cfg.a, EtaParams(cfg.bigC));
        out.has_metrics = false;
        out.colors_or_size = res.palette;
        out.transcript = hash_coloring(res.coloring);
        auto v = verify_proper_coloring(g, res.coloring);
        out.valid = v.pass;
        if (!v.pass) out.verdict = v.reasons.front();
        out.flags = "host-recursion;defective=mod-bucket";
    } else if (name == "delta-plus1") {
        auto res = delta_plus1_coloring(g, ids, cfg.a, cfg.epsilon, opt);
        out.metrics = res.exec.metrics;
        out.transcript = res.exec.transcript_hash;
        out.colors_or_size = res.vertex_colors.palette_size();
        auto v = verify_proper_coloring(g, res.vertex_colors);
        long long dmax = max_degree(g);
        bool in_palette = res.vertex_colors.max_flat_value() <= dmax + 1;
        out.valid = v.pass && in_palette && res.prefix_violations.empty();
        if (!v.pass) out.verdict = v.reasons.front();
        else if (!in_palette) out.verdict = "palette exceeds Delta+1";
        else if (!res.prefix_violations.empty()) out.verdict = res.prefix_violations.front();
        out.flags = "list-coloring=reduction+class-schedule";
    } else if (name == "mis") {
        auto res = mis(g, ids, cfg.a, cfg.epsilon, opt);
        out.metrics = res.exec.metrics;
        out.transcript = res.exec.transcript_hash;
        out.colors_or_size = std::count(res.in_mis.begin(), res.in_mis.end(), 1);
        auto v = verify_mis(g, res.in_mis);
        out.valid = v.pass && res.prefix_violations.empty();
        if (!v.pass) out.verdict = v.reasons.front();
        else if (!res.prefix_violations.empty()) out.verdict = res.prefix_violations.front();
        out.flags = "list-coloring=reduction+class-schedule";
    } else if (name == "edge-color") {
        auto res = edge_coloring_2d1(g, ids, cfg.a, cfg.epsilon, opt);
        out.metrics = res.exec.metrics;
        out.transcript = res.exec.transcript_hash;
        long long mx = 0;
        for (long long c : res.edge_colors) mx = std::max(mx, c);
        out.colors_or_size = mx;
        auto v = verify_edge_coloring(g, res.edge_colors,
                                      std::max<long long>(2 * max_degree(g) - 1, 1));
        out.valid = v.pass && res.prefix_violations.empty();
        if (!v.pass) out.verdict = v.reasons.front();
        else if (!res.prefix_violations.empty()) out.verdict = res.prefix_violations.front();
        out.flags = "edge-coloring=propose-accept";
    } else if (name == "matching") {
        auto res = maximal_matching(g, ids, cfg.a, cfg.epsilon, opt);
        out.metrics = res.exec.metrics;
        out.transcript = res.exec.transcript_hash;
        out.colors_or_size = std::count(res.matched.begin(), res.matched.end(), 1);
        auto v = verify_matching(g, res.matched);
        out.valid = v.pass && res.prefix_violations.empty();
        if (!v.pass) out.verdict = v.reasons.front();
        else if (!res.prefix_violations.empty()) out.verdict = res.prefix_violations.front();
        out.flags = "matching=classed-proposals";
    } else if (name == "rand-delta-plus1") {
        auto res = rand_delta_plus1(g, ids, seed, opt);
        out.metrics = res.exec.metrics;
        out.transcript = res.exec.transcript_hash;
        out.colors_or_size = res.coloring.palette_size();
        auto v = verify_proper_coloring(g, res.coloring);
        bool in_palette = res.coloring.max_flat_value() <= res.palette_bound;
        out.valid = v.pass && in_palette;
        if (!v.pass) out.verdict = v.reasons.front();
        else if (!in_palette) out.verdict = "palette bound violated";
    } else if (name == "rand-a-loglogn") {
        auto res = rand_a_loglogn(g, ids, cfg.a, cfg.epsilon, seed, opt);
        out.metrics = res.exec.metrics;
        out.transcript = res.exec.transcript_hash;
        out.colors_or_size = res.coloring.palette_size();
        auto v = verify_proper_coloring(g, res.coloring);
        out.valid = v.pass && out.colors_or_size <= res.palette_bound;
        if (!v.pass) out.verdict = v.reasons.front();
        else if (out.colors_or_size > res.palette_bound) out.verdict = "palette bound violated";
    } else {
        throw std::invalid_argument("unknown algorithm: " + name);
    }
    return out;
}

}  // namespace

std::vector<std::string> algorithm_names() {
    return {"partition",  "forest-decomposition", "color-a2logn", "color-ka2",
            "color-ka",   "one-plus-eta",         "delta-plus1",  "mis",
            "edge-color", "matching",             "rand-delta-plus1", "rand-a-loglogn"};
}

Graph materialize_graph(const ExperimentConfig& cfg) {
    if (cfg.graph == "ring") return gen_ring(cfg.n);
    if (cfg.graph == "forest") return gen_forest_union(cfg.n, cfg.a, cfg.graph_seed);
    if (cfg.graph == "random") return gen_random_graph(cfg.n, cfg.m, cfg.graph_seed);
    return load_edge_list(cfg.graph);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.seeds.empty()) throw std::invalid_argument("run_experiment: empty seed list");
    Graph g = materialize_graph(cfg);
    ExperimentReport report;
    report.config = cfg;
    report.n = g.n();
    report.m = g.m();
    report.all_valid = true;
    double sum_avg = 0.0;

    for (std::uint64_t seed : cfg.seeds) {
        for (int perm = 0; perm <= cfg.id_permutations; ++perm) {
            IdAssignment ids = perm == 0
                                   ? IdAssignment::identity(g.n())
                                   : IdAssignment::permuted(g.n(), hash_combine(seed, perm));
            AlgoOutcome o;
            try {
                o = run_algorithm(cfg, g, ids, seed);
            } catch (const std::invalid_argument&) {
                throw;  // config errors abort; engine errors embed per run
            } catch (const std::exception& e) {
                o.valid = false;
                o.has_metrics = false;
                o.verdict = e.what();
            }
            RunRecord r;
            r.seed = seed;
            r.perm = perm;
            if (o.has_metrics) {
                r.avg = o.metrics.avg;
                r.avg_float = o.metrics.avg.value();
                r.worst = o.metrics.worst;
                r.decay = o.metrics.decay;
            }
            r.colors_or_size = o.colors_or_size;
            r.valid = o.valid;
            r.verdict = o.verdict;
            r.substitution_flags = o.flags;
            r.transcript_hash = o.transcript;
            report.all_valid = report.all_valid && o.valid;
            sum_avg += r.avg_float;
            report.max_avg = std::max(report.max_avg, r.avg_float);
            report.runs.push_back(std::move(r));
        }
    }
    report.mean_avg = report.runs.empty() ? 0.0 : sum_avg / static_cast<double>(report.runs.size());
    return report;
}

namespace {

json config_json(const ExperimentConfig& c) {
    json j;
    j["algorithm"] = c.algorithm;
    j["graph"] = c.graph;
    j["n"] = c.n;
    j["m"] = c.m;
    j["graph_seed"] = c.graph_seed;
    j["a"] = c.a;
    j["epsilon"] = c.epsilon.str();
    j["k"] = c.k;
    j["bigC"] = c.bigC;
    j["family"] = c.family;
    j["seeds"] = c.seeds;
    j["id_permutations"] = c.id_permutations;
    j["round_cap"] = c.round_cap;
    return j;
}

}  // namespace

std::string report_json(const ExperimentReport& rep) {
    json j;
    j["config"] = config_json(rep.config);
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["mean_avg"] = rep.mean_avg;
    j["max_avg"] = rep.max_avg;
    j["all_valid"] = rep.all_valid;
    j["runs"] = json::array();
    for (const auto& r : rep.runs) {
        json jr;
        jr["seed"] = r.seed;
        jr["perm"] = r.perm;
        jr["avg"] = r.avg.str();
        jr["avg_float"] = r.avg_float;
        jr["worst"] = r.worst;
        jr["decay"] = r.decay;
        jr["colors_or_size"] = r.colors_or_size;
        jr["valid"] = r.valid;
        jr["verdict"] = r.verdict;
        jr["substitution_flags"] = r.substitution_flags;
        jr["transcript_hash"] = r.transcript_hash;
        j["runs"].push_back(jr);
    }
    return j.dump(2);
}

std::string report_csv(const ExperimentReport& rep) {
    std::ostringstream out;
    out << "algo,n,m,a,epsilon,k,seed,perm,avg_num,avg_den,avg_float,worst,colors_or_size,"
           "valid,substitution_flags,transcript_hash\n";
    for (const auto& r : rep.runs) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", r.avg_float);
        out << rep.config.algorithm << ',' << rep.n << ',' << rep.m << ',' << rep.config.a
            << ',' << rep.config.epsilon.str() << ',' << rep.config.k << ',' << r.seed << ','
            << r.perm << ',' << r.avg.num << ',' << r.avg.den << ',' << buf << ',' << r.worst
            << ',' << r.colors_or_size << ',' << (r.valid ? 1 : 0) << ','
            << r.substitution_flags << ',' << r.transcript_hash << '\n';
    }
    return out.str();
}

std::string report_svg(const ExperimentReport& rep) {
    // Decay curve of the first run: n_i against i, log-scaled y.
    const std::vector<long long>* decay = nullptr;
    for (const auto& r : rep.runs)
        if (!r.decay.empty()) { decay = &r.decay; break; }
    std::ostringstream out;
    const int w = 640, h = 400, margin = 48;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"20\" font-size=\"13\">active vertices per round ("
        << rep.config.algorithm << ", n=" << rep.n << ")</text>\n";
    if (decay && !decay->empty()) {
        double maxy = std::log10(static_cast<double>(std::max<long long>((*decay)[0], 2)));
        std::size_t cnt = decay->size();
        std::ostringstream pts;
        for (std::size_t i = 0; i < cnt; ++i) {
            double x = margin + (w - 2.0 * margin) * (cnt == 1 ? 0.0 : static_cast<double>(i) /
                                                       static_cast<double>(cnt - 1));
            double yv = std::log10(static_cast<double>(std::max<long long>((*decay)[i], 1)));
            double y = h - margin - (h - 2.0 * margin) * (maxy > 0 ? yv / maxy : 0.0);
            pts << x << ',' << y << ' ';
            out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"#3366cc\"/>\n";
        }
        out << "<polyline points=\"" << pts.str()
            << "\" fill=\"none\" stroke=\"#3366cc\" stroke-width=\"1.5\"/>\n";
    }
    out << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin
        << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << h - margin << "\" stroke=\"black\"/>\n";
    out << "</svg>\n";
    return out.str();
}

void emit_report(const ExperimentReport& report, const std::string& format,
                 const std::string& out_path) {
    std::string text;
    if (format == "json")
        text = report_json(report);
    else if (format == "csv")
        text = report_csv(report);
    else if (format == "svg")
        text = report_svg(report);
    else
        throw std::invalid_argument("emit_report: unknown format " + format);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << text;
    }
}

std::string hpartition_json(const HPartition& hp) {
    json j;
    j["ell"] = hp.ell;
    j["index"] = hp.index;
    return j.dump();
}

std::string forest_decomposition_json(const ForestDecomposition& fd) {
    json j = json::array();
    for (const auto& e : fd.edges)
        j.push_back({{"tail", e.tail}, {"head", e.head}, {"label", e.label}});
    return j.dump();
}

std::string cff_json(const CoverFreeFamily& f) {
    json j;
    j["m"] = f.universe;
    j["A"] = f.union_param;
    j["sets"] = f.sets;
    return j.dump();
}

std::string segmented_coloring_json(const SegmentedColoring& sc) {
    json j = json::array();
    for (std::size_t v = 0; v < sc.segment.size(); ++v)
        j.push_back({{"segment", sc.segment[v]}, {"color", sc.coloring.colors[v][0]}});
    return j.dump();
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long p = std::stoll(text.substr(0, slash));
        long long q = std::stoll(text.substr(slash + 1));
        return Rational(p, q);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string frac = text.substr(dot + 1);
        long long den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        long long whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
        long long num = whole * den + (frac.empty() ? 0 : std::stoll(frac));
        return Rational(num, den);
    }
    return Rational(std::stoll(text), 1);
}

FileVerdict verify_solution_file(const Graph& g, const std::string& solution_json_text) {
    json j = json::parse(solution_json_text);
    std::string kind = j.at("kind").get<std::string>();
    FileVerdict fv;
    Verdict v;
    if (kind == "vertex-coloring") {
        Coloring c;
        for (const auto& item : j.at("colors")) {
            if (item.is_array())
                c.colors.push_back(item.get<std::vector<long long>>());
            else
                c.colors.push_back({item.get<long long>()});
        }
        v = verify_proper_coloring(g, c);
    } else if (kind == "edge-coloring") {
        auto colors = j.at("colors").get<std::vector<long long>>();
        long long mx = j.value("max_color", static_cast<long long>(2 * max_degree(g) - 1));
        v = verify_edge_coloring(g, colors, mx);
    } else if (kind == "mis") {
        std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
        for (int x : j.at("vertices").get<std::vector<int>>())
            in[static_cast<std::size_t>(x)] = 1;
        v = verify_mis(g, in);
    } else if (kind == "matching") {
        std::vector<char> matched(g.edges().size(), 0);
        for (const auto& e : j.at("edges")) {
            int a = e.at(0).get<int>(), b = e.at(1).get<int>();
            for (std::size_t i = 0; i < g.edges().size(); ++i)
                if (g.edges()[i] == std::make_pair(std::min(a, b), std::max(a, b)))
                    matched[i] = 1;
        }
        v = verify_matching(g, matched);
    } else {
        fv.detail = "unknown solution kind: " + kind;
        return fv;
    }
    fv.pass = v.pass;
    fv.detail = v.pass ? "ok" : v.reasons.front();
    return fv;
}

}  // namespace locavg
