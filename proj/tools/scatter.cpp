#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scatter/gadget.hpp"
#include "scatter/io.hpp"
#include "scatter/oracle.hpp"
#include "scatter/solver.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw scatter::GraphError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int log_level() {
    const char* env = std::getenv("SCATTER_LOG");
    return env ? std::atoi(env) : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scatter: delete at most k vertices so every remaining component "
                 "falls into one of the given graph classes"};
    std::string graph_path, class_spec = "clique", engine_name = "fpt", gen_spec;
    int k = -1, gadget_cap = 6, threads = 1;
    unsigned seed = 0;
    bool json_out = false;
    app.add_option("--graph", graph_path, "input graph file (p/e format)");
    app.add_option("--classes", class_spec, "comma-separated builtin classes or @file");
    app.add_option("--k", k, "deletion budget");
    app.add_option("--engine", engine_name, "fpt, oracle, or auto")
        ->check(CLI::IsMember({"fpt", "oracle", "auto"}));
    app.add_option("--gadget-cap", gadget_cap, "max vertices per enumerated gadget");
    app.add_option("--threads", threads, "parallel branch evaluation width");
    app.add_option("--seed", seed, "random seed for --gen");
    app.add_option("--gen", gen_spec, "generate a planted instance: n,k");
    app.add_flag("--json", json_out, "emit the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        auto classes = scatter::parse_class_spec(class_spec, slurp);

        if (!gen_spec.empty()) {
            int gn, gk;
            char comma;
            std::istringstream gs(gen_spec);
            if (!(gs >> gn >> comma >> gk) || comma != ',')
                throw scatter::GraphError("--gen expects n,k");
            auto [inst, planted] = scatter::generate_planted(gn, gk, classes, seed);
            std::cout << "c planted " << scatter::vset::to_string(planted) << "\n"
                      << "c k " << gk << "\n"
                      << scatter::render_graph(inst.g);
            return 0;
        }

        if (graph_path.empty()) throw scatter::GraphError("--graph is required");
        if (k < 0) throw scatter::GraphError("--k must be a nonnegative integer");
        scatter::Graph g = scatter::parse_graph(slurp(graph_path));

        scatter::SolverConfig cfg;
        cfg.engine = engine_name == "oracle"  ? scatter::Engine::oracle
                     : engine_name == "auto" ? scatter::Engine::auto_select
                                             : scatter::Engine::fpt;
        cfg.gadget_cap = gadget_cap;
        cfg.threads = threads;

        scatter::SolveResult res;
        try {
            res = scatter::solve({g, k, classes}, cfg);
            if (res.answer &&
                (!res.witness || res.witness->size() > static_cast<std::size_t>(k) ||
                 !scatter::is_scattered_modulator(g, *res.witness, classes)))
                throw std::logic_error("emitted witness failed verification");
        } catch (const std::logic_error& e) {
            std::cerr << "internal invariant violation: " << e.what() << "\n";
            return 3;
        }

        scatter::RunReport report;
        report.answer = res.answer;
        report.witness = res.witness;
        report.stats = res.stats;
        report.engine = engine_name;
        report.k = k;
        report.gadget_cap = gadget_cap;
        report.threads = threads;
        report.seed = seed;
        if (json_out)
            std::cout << report.stable_json().dump() << "\n";
        else
            std::cout << report.stable_line() << "\n";
        if (log_level() >= 1)
            std::cerr << "time_ms=" << res.stats.wall_ms << " nodes=" << res.stats.branch_nodes
                      << " fallbacks=" << res.stats.fallbacks << "\n";
        return res.answer ? 0 : 1;
    } catch (const scatter::GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
