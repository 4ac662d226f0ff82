#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmc/branching.hpp"
#include "mmc/enum_cluster.hpp"
#include "mmc/enum_kernels.hpp"
#include "mmc/generators.hpp"
#include "mmc/graph.hpp"
#include "mmc/io.hpp"
#include "mmc/multicut.hpp"
#include "mmc/oracle.hpp"
#include "mmc/subcubic.hpp"
#include "mmc/treewidth.hpp"

using namespace mmc;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string engine = "branching";
    std::string param = "none";
    std::string format;
    std::string td_path;
    std::string output;
    std::string cert_path;
    std::string modulator;
    std::vector<std::string> inputs;
    int ell = 1;
    int k = 0;
    int n = 10;
    double density = 0.3;
    std::uint64_t seed = 20240611;
    int jobs = 1;
    bool stats = false;
    bool trace = false;
    bool json = false;
    bool subcubic = false;
    bool cubic = false;
};

Graph load_graph(const RunConfig& cfg, const std::string& path) {
    GraphFormat f = cfg.format.empty() ? guess_format(path) : format_from_name(cfg.format);
    return parse_graph(read_file(path), f);
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) std::cout << text;
    else write_file(cfg.output, text);
}

std::string witness(const RunConfig& cfg, const Multicut& mc) {
    if (cfg.json) return multicut_json(mc) + "\n";
    return "parts " + std::to_string(mc.p) + "\n" + multicut_text(mc);
}

// Parses "3,5,9" (1-based) into sorted 0-based ids.
std::vector<int> parse_vertex_list(const std::string& s, int n) {
    std::vector<int> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        int v = 0;
        try {
            v = std::stoi(tok);
        } catch (const std::exception&) {
            throw UsageError("bad vertex id '" + tok + "'");
        }
        if (v < 1 || v > n) throw UsageError("vertex id out of range: " + tok);
        out.push_back(v - 1);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

NiceTreeDecomposition decomposition_for(const RunConfig& cfg, const Graph& g) {
    TreeDecomposition td = cfg.td_path.empty() ? heuristic_decomposition(g) : parse_td(read_file(cfg.td_path), g);
    validate_td(g, td);
    if (td.width() + 1 > kMaxBag) throw UsageError("decomposition too wide for the treewidth engine");
    return nicify(td);
}

// Best multicut by the chosen engine.
Multicut engine_max(const RunConfig& cfg, const Graph& g) {
    if (cfg.engine == "oracle") {
        Multicut best;
        enumerate_all_multicuts(g, max_parts(g), [&](const Multicut& mc) {
            best = mc;
            return false;
        });
        return best;
    }
    if (cfg.engine == "treewidth") return max_multicut_tw(g, decomposition_for(cfg, g));
    BranchStats st;
    auto res = solve_max(g, &st);
    if (cfg.stats) std::cerr << "{\"nodes\":" << st.nodes << ",\"leaves\":" << st.leaves << "}\n";
    return res.witness;
}

int cmd_solve(const RunConfig& cfg) {
    Graph g = load_graph(cfg, cfg.inputs.at(0));
    std::optional<Multicut> mc;
    if (cfg.engine == "branching") {
        BranchStats st;
        RuleTrace tr;
        mc = solve_decision(g, cfg.ell, &st, cfg.trace ? &tr : nullptr);
        if (cfg.trace) std::cerr << tr.json_lines();
        if (cfg.stats) std::cerr << "{\"nodes\":" << st.nodes << ",\"leaves\":" << st.leaves << "}\n";
    } else if (cfg.engine == "oracle") {
        enumerate_all_multicuts(g, cfg.ell, [&](const Multicut& m) {
            mc = m;
            return false;
        });
    } else {
        Multicut best = max_multicut_tw(g, decomposition_for(cfg, g));
        if (best.p >= cfg.ell) mc = best;
    }
    if (!mc) {
        emit(cfg, "NO\n");
        return kNo;
    }
    emit(cfg, witness(cfg, *mc));
    return kOk;
}

int cmd_maxparts(const RunConfig& cfg) {
    Graph g = load_graph(cfg, cfg.inputs.at(0));
    Multicut mc = engine_max(cfg, g);
    if (cfg.json) emit(cfg, multicut_json(mc) + "\n");
    else emit(cfg, std::to_string(mc.p) + "\n" + multicut_text(mc));
    return kOk;
}

Modulator pick_modulator(const RunConfig& cfg, const Graph& g) {
    ModulatorKind kind = cfg.param == "vc" ? ModulatorKind::VertexCover
                         : cfg.param == "cocluster" ? ModulatorKind::CoCluster
                                                    : ModulatorKind::Cluster;
    if (!cfg.modulator.empty()) {
        Modulator mod{kind, parse_vertex_list(cfg.modulator, g.n())};
        if (!is_valid_modulator(g, mod)) throw UsageError("--modulator does not reach the target class");
        return mod;
    }
    if (kind == ModulatorKind::VertexCover) return approx_vertex_cover(g);
    if (kind == ModulatorKind::CoCluster) return approx_cocluster_modulator(g);
    return approx_cluster_modulator(g);
}

int cmd_enumerate(const RunConfig& cfg) {
    Graph g = load_graph(cfg, cfg.inputs.at(0));
    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) throw std::runtime_error("cannot write " + cfg.output);
    }
    std::ostream& out = cfg.output.empty() ? std::cout : file;
    long long count = 0;
    MulticutSink sink = [&](const Multicut& mc) {
        out << multicut_json(mc) << '\n';
        ++count;
        return true;
    };
    nlohmann::json stats;
    if (cfg.param == "none") {
        if (cfg.engine == "oracle") {
            enumerate_all_multicuts(g, cfg.ell, sink);
        } else if (cfg.engine == "branching") {
            BranchStats st;
            enumerate_branching(g, cfg.ell, sink, &st);
            stats["nodes"] = st.nodes;
        } else {
            throw UsageError("enumeration supports the oracle and branching engines");
        }
    } else {
        Modulator mod = pick_modulator(cfg, g);
        stats["modulator"] = mod.vertices;
        if (cfg.param == "cluster") {
            ClusterStats st;
            enumerate_cluster(g, mod.vertices, cfg.ell, sink, &st);
            stats["core_solutions"] = st.core_solutions;
            stats["dead_leaves"] = st.dead_leaves;
            stats["emit_seconds"] = st.emit_seconds;
        } else {
            if (cfg.engine == "treewidth") throw UsageError("kernel enumeration supports oracle and branching");
            KernelStats st;
            enumerate_via_kernel(g, mod, cfg.ell, cfg.engine == "oracle" ? KernelEngine::Oracle : KernelEngine::Branching,
                                 sink, &st);
            stats["kernel_vertices"] = st.kernel_vertices;
            stats["kernel_solutions"] = st.kernel_solutions;
        }
    }
    out.flush();
    if (cfg.stats) {
        stats["solutions"] = count;
        std::cerr << stats.dump() << '\n';
    }
    return count > 0 ? kOk : kNo;
}

int cmd_kernelize(const RunConfig& cfg) {
    Graph g = load_graph(cfg, cfg.inputs.at(0));
    if (cfg.subcubic || cfg.param == "none") {
        if (g.max_degree() > 3) throw UsageError("subcubic kernelization needs maximum degree 3");
        KernelResult res = kernelize_subcubic(g, cfg.ell);
        if (res.solved) {
            std::cout << "SOLVED " << res.method << "\n" << witness(cfg, res.witness);
            return kOk;
        }
        if (!cfg.output.empty()) write_file(cfg.output, write_pace(res.kernel));
        std::cout << res.certificate << " ell=" << res.ell << "\n";
        return kOk;
    }
    Modulator mod = pick_modulator(cfg, g);
    Graph h;
    nlohmann::json info;
    if (mod.kind == ModulatorKind::VertexCover) {
        VcKernel kern = compress_vc(g, mod.vertices);
        h = kern.h;
        info["kind"] = "vc";
        info["h_to_g"] = kern.h_to_g;
    } else if (mod.kind == ModulatorKind::CoCluster) {
        CoClusterKernel kern = compress_cocluster(g, mod.vertices);
        h = kern.h;
        info["kind"] = "cocluster";
        info["h_to_g"] = kern.h_to_g;
        info["rules"] = kern.rules;
        info["stated_bound"] = kern.stated_bound();
        info["within_stated_bound"] = kern.within_stated_bound();
    } else {
        throw UsageError("kernelize supports --subcubic, --param vc and --param cocluster");
    }
    info["n"] = h.n();
    info["modulator"] = mod.vertices;
    if (!cfg.output.empty()) write_file(cfg.output, write_pace(h));
    std::cout << info.dump() << "\n";
    return kOk;
}

void write_cert(const RunConfig& cfg, const std::string& text) {
    if (!cfg.cert_path.empty()) write_file(cfg.cert_path, text + "\n");
}

// G(n, p) with integer thresholds so output is the same on every platform.
Graph random_graph(int n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto threshold = static_cast<std::uint64_t>(p * 18446744073709551615.0);
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng() < threshold) es.push_back({u, v});
    return Graph::from_edges(n, es);
}

int cmd_generate(const RunConfig& cfg, const std::string& what) {
    if (what == "is2mmc") {
        Graph g = load_graph(cfg, cfg.inputs.at(0));
        IsReduction red = reduce_is_to_mmc(g, cfg.k, cfg.cubic ? IsVariant::Cubic : IsVariant::Subcubic);
        emit(cfg, write_pace(red.h));
        write_cert(cfg, red.bookkeeping_json());
        std::cerr << "ell " << red.ell << "\n";
        return kOk;
    }
    if (what == "sp2mmc") {
        SpReduction red = reduce_set_packing_to_mmc(parse_set_packing(read_file(cfg.inputs.at(0))));
        emit(cfg, write_pace(red.g));
        write_cert(cfg, red.bookkeeping_json());
        std::cerr << "ell " << red.ell << "\n";
        return kOk;
    }
    if (what == "xcompose") {
        std::vector<SetPackingInstance> ins;
        for (auto& p : cfg.inputs) ins.push_back(parse_set_packing(read_file(p)));
        Composition comp = cross_compose_set_packing(ins);
        emit(cfg, write_set_packing(comp.instance));
        write_cert(cfg, comp.cert.bookkeeping_json());
        return kOk;
    }
    if (what == "random") {
        if (cfg.n < 0 || cfg.density < 0 || cfg.density > 1) throw UsageError("need n >= 0 and 0 <= p <= 1");
        emit(cfg, write_pace(random_graph(cfg.n, cfg.density, cfg.seed)));
        return kOk;
    }
    throw UsageError("unknown generator '" + what + "'");
}

// Engine agreement on one graph; returns an empty string on success.
std::string verify_graph(const RunConfig& cfg, const std::string& path) {
    Graph g = load_graph(cfg, path);
    std::ostringstream err;
    int tw = max_parts_tw(g, decomposition_for(cfg, g));
    int br = solve_max(g).p;
    int orc = -1;
    if (g.n() <= oracle_limit()) orc = max_parts(g);
    if (tw != br || (orc >= 0 && orc != br))
        err << "max parts disagree: oracle=" << orc << " branching=" << br << " treewidth=" << tw << "; ";
    for (int ell = 1; ell <= g.n(); ++ell) {
        auto w = solve_decision(g, ell);
        if (w.has_value() != (ell <= br)) err << "decision at ell=" << ell << " disagrees; ";
        if (w && validate_canonical(g, *w)) err << "invalid witness at ell=" << ell << "; ";
    }
    if (orc >= 0) {
        for (int ell = 1; ell <= std::min(3, std::max(1, g.n())); ++ell) {
            auto want = all_multicuts(g, ell);
            std::vector<Multicut> got;
            enumerate_branching(g, ell, [&](const Multicut& mc) {
                got.push_back(mc);
                return true;
            });
            std::sort(got.begin(), got.end());
            if (std::adjacent_find(got.begin(), got.end()) != got.end()) err << "duplicate enumeration at ell=" << ell << "; ";
            std::sort(want.begin(), want.end());
            if (got != want) err << "enumeration differs at ell=" << ell << "; ";
        }
    }
    std::string e = err.str();
    return e.empty() ? "" : e;
}

int cmd_verify(const RunConfig& cfg, const std::string& reduction) {
    if (reduction == "is2mmc") {
        VerifyReport rep = verify_reduction(reduce_is_to_mmc(load_graph(cfg, cfg.inputs.at(0)), cfg.k,
                                                             cfg.cubic ? IsVariant::Cubic : IsVariant::Subcubic));
        std::cout << rep.summary() << "\n";
        return rep.ok() ? kOk : kNo;
    }
    if (reduction == "sp2mmc") {
        VerifyReport rep = verify_reduction(reduce_set_packing_to_mmc(parse_set_packing(read_file(cfg.inputs.at(0)))));
        std::cout << rep.summary() << "\n";
        return rep.ok() ? kOk : kNo;
    }
    if (reduction == "xcompose") {
        std::vector<SetPackingInstance> ins;
        for (auto& p : cfg.inputs) ins.push_back(parse_set_packing(read_file(p)));
        VerifyReport rep = verify_reduction(ins, cross_compose_set_packing(ins));
        std::cout << rep.summary() << "\n";
        return rep.ok() ? kOk : kNo;
    }
    if (!reduction.empty()) throw UsageError("unknown reduction '" + reduction + "'");

    std::vector<std::string> result(cfg.inputs.size());
    std::mutex mu;
    size_t next = 0;
    auto worker = [&] {
        while (true) {
            size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= cfg.inputs.size()) return;
                i = next++;
            }
            std::string r;
            try {
                r = verify_graph(cfg, cfg.inputs[i]);
            } catch (const std::exception& e) {
                r = std::string("error: ") + e.what();
            }
            result[i] = r;
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < std::max(1, cfg.jobs); ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    bool ok = true;
    for (size_t i = 0; i < cfg.inputs.size(); ++i) {
        std::cout << (result[i].empty() ? "PASS " : "FAIL ") << cfg.inputs[i];
        if (!result[i].empty()) std::cout << ": " << result[i];
        std::cout << "\n";
        ok = ok && result[i].empty();
    }
    return ok ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matching multicut solver and enumeration toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string generator, reduction;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Input graph format")
            ->check(CLI::IsMember({"pace-gr", "dimacs", "edge-list"}));
        sub->add_option("-o,--output", cfg.output, "Write the main output here instead of stdout");
        sub->add_flag("--stats", cfg.stats, "Print statistics to stderr");
        sub->add_flag("--json", cfg.json, "Print multicuts as JSON");
        sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "Seed for random generators");
    };
    auto add_engine = [&](CLI::App* sub) {
        sub->add_option("--engine", cfg.engine, "oracle, branching or treewidth")
            ->check(CLI::IsMember({"oracle", "branching", "treewidth"}));
        sub->add_option("--td", cfg.td_path, "Tree decomposition (.td) for the treewidth engine");
    };

    auto* solve = app.add_subcommand("solve", "Decide whether a multicut with at least ell parts exists");
    add_common(solve);
    add_engine(solve);
    solve->add_option("--ell", cfg.ell, "Number of parts")->required();
    solve->add_flag("--trace", cfg.trace, "Print the rule trace to stderr (branching)");
    solve->add_option("input", cfg.inputs, "Graph file")->required()->expected(1);

    auto* maxp = app.add_subcommand("maxparts", "Largest number of parts of a matching multicut");
    add_common(maxp);
    add_engine(maxp);
    maxp->add_option("input", cfg.inputs, "Graph file")->required()->expected(1);

    auto* en = app.add_subcommand("enumerate", "Stream all multicuts with at least ell parts as JSON lines");
    add_common(en);
    add_engine(en);
    en->add_option("--ell", cfg.ell, "Number of parts")->required();
    en->add_option("--param", cfg.param, "none, vc, cocluster or cluster")
        ->check(CLI::IsMember({"none", "vc", "cocluster", "cluster"}));
    en->add_option("--modulator", cfg.modulator, "Comma separated 1-based modulator vertices");
    en->add_option("input", cfg.inputs, "Graph file")->required()->expected(1);

    auto* ker = app.add_subcommand("kernelize", "Compress an instance");
    add_common(ker);
    ker->add_flag("--subcubic", cfg.subcubic, "Subcubic kernel (default)");
    ker->add_option("--ell", cfg.ell, "Number of parts");
    ker->add_option("--param", cfg.param, "vc or cocluster compression")
        ->check(CLI::IsMember({"none", "vc", "cocluster"}));
    ker->add_option("--modulator", cfg.modulator, "Comma separated 1-based modulator vertices");
    ker->add_option("input", cfg.inputs, "Graph file")->required()->expected(1);

    auto* gen = app.add_subcommand("generate", "Build instances from reductions or at random");
    add_common(gen);
    gen->add_option("kind", generator, "is2mmc, xcompose, sp2mmc or random")
        ->required()
        ->check(CLI::IsMember({"is2mmc", "xcompose", "sp2mmc", "random"}));
    gen->add_option("inputs", cfg.inputs, "Source instance files");
    gen->add_option("--k", cfg.k, "Independent set size for is2mmc");
    gen->add_flag("--cubic", cfg.cubic, "Use the five-vertex pendant so the output is 3-regular");
    gen->add_option("--cert", cfg.cert_path, "Write the certificate bookkeeping as JSON");
    gen->add_option("--n", cfg.n, "Vertices for random graphs");
    gen->add_option("--p", cfg.density, "Edge probability for random graphs");

    auto* ver = app.add_subcommand("verify", "Cross-check engines or a reduction");
    add_common(ver);
    ver->add_option("--td", cfg.td_path, "Tree decomposition for the treewidth engine");
    ver->add_option("--reduction", reduction, "is2mmc, xcompose or sp2mmc")
        ->check(CLI::IsMember({"is2mmc", "xcompose", "sp2mmc"}));
    ver->add_option("--k", cfg.k, "Independent set size for is2mmc");
    ver->add_flag("--cubic", cfg.cubic, "Cubic variant for is2mmc");
    ver->add_option("inputs", cfg.inputs, "Instance files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(cfg);
        if (maxp->parsed()) return cmd_maxparts(cfg);
        if (en->parsed()) return cmd_enumerate(cfg);
        if (ker->parsed()) return cmd_kernelize(cfg);
        if (gen->parsed()) {
            if (generator != "random" && cfg.inputs.empty()) throw UsageError("missing input file");
            return cmd_generate(cfg, generator);
        }
        if (ver->parsed()) return cmd_verify(cfg, reduction);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const SizeGuardError& e) {
        std::cerr << "error: " << e.what() << " (raise MULTICUT_ORACLE_LIMIT to override)\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
