#pragma once

#include <random>
#include <sstream>

#include "scatter/solver.hpp"
#include <json.hpp>

namespace scatter {

namespace detail {

inline GraphError parse_error(int line, const std::string& what) {
    return GraphError("line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

/// Line-oriented graph format: `c` comments, one `p <n> <m>` header, then
/// `e <u> <v>` edges with 1-indexed endpoints. Errors carry line numbers.
inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long n = -1, m = -1, edges_seen = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            if (n >= 0) throw detail::parse_error(lineno, "duplicate problem line");
            if (!(ls >> n >> m) || n < 0 || m < 0)
                throw detail::parse_error(lineno, "malformed problem line");
            for (long v = 1; v <= n; ++v) g.add_vertex(static_cast<Vertex>(v));
        } else if (tag == "e") {
            if (n < 0) throw detail::parse_error(lineno, "edge before problem line");
            long u, v;
            if (!(ls >> u >> v)) throw detail::parse_error(lineno, "malformed edge line");
            if (u == v) throw detail::parse_error(lineno, "self-loop");
            if (u < 1 || u > n || v < 1 || v > n)
                throw detail::parse_error(lineno, "vertex out of range");
            if (g.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
                throw detail::parse_error(lineno, "duplicate edge");
            g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
            ++edges_seen;
        } else {
            throw detail::parse_error(lineno, "unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) throw GraphError("missing problem line");
    if (edges_seen != m)
        throw GraphError("edge count mismatch: header says " + std::to_string(m) + ", found " +
                         std::to_string(edges_seen));
    return g;
}

/// Inverse of parse_graph; requires vertex ids to be exactly 1..n.
inline std::string render_graph(const Graph& g) {
    VertexSet vs = g.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i] != static_cast<Vertex>(i + 1))
            throw GraphError("render_graph: vertex ids must be 1..n");
    std::ostringstream out;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v : vs)
        for (Vertex w : g.neighbors(v))
            if (v < w) edges.emplace_back(v, w);
    out << "p " << vs.size() << " " << edges.size() << "\n";
    for (auto [u, v] : edges) out << "e " << u << " " << v << "\n";
    return out.str();
}

/// Class-spec file: pattern blocks, each introduced by `f <family-index>`
/// (1-based) and followed by one graph in the `p`/`e` format above.
inline ClassFamily parse_class_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::map<int, std::vector<PatternGraph>> fams;
    int cur_family = -1;
    std::string block;
    int block_start = 0;
    auto flush = [&]() {
        if (block.empty()) return;
        if (cur_family < 1) throw detail::parse_error(block_start, "pattern before family line");
        try {
            fams[cur_family].push_back(parse_graph(block));
        } catch (const GraphError& e) {
            throw detail::parse_error(block_start, std::string("bad pattern: ") + e.what());
        }
        block.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "f") {
            flush();
            if (!(ls >> cur_family) || cur_family < 1)
                throw detail::parse_error(lineno, "malformed family line");
        } else if (tag == "p") {
            flush();
            block_start = lineno;
            block = line + "\n";
        } else if (tag == "e") {
            if (block.empty()) throw detail::parse_error(lineno, "edge outside pattern block");
            block += line + "\n";
        } else {
            throw detail::parse_error(lineno, "unknown line tag '" + tag + "'");
        }
    }
    flush();
    if (fams.empty()) throw GraphError("class file declares no patterns");
    ClassFamily out;
    int expect = 1;
    for (const auto& [idx, pats] : fams) {
        if (idx != expect++)
            throw GraphError("family indices must be contiguous starting at 1");
        out.families.push_back({"custom-" + std::to_string(idx), pats});
    }
    return out;
}

/// Comma-separated builtin names, or `@path` for a class-spec file.
inline ClassFamily parse_class_spec(const std::string& spec,
                                    const std::function<std::string(const std::string&)>& read_file) {
    if (!spec.empty() && spec[0] == '@') return parse_class_file(read_file(spec.substr(1)));
    ClassFamily out;
    std::istringstream in(spec);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name.empty()) throw GraphError("empty class name in spec");
        out.families.push_back(builtin_family(name));
    }
    if (out.families.empty()) throw GraphError("empty class spec");
    return out;
}

/// Random yes-instance with a planted modulator: k outlier vertices, every
/// other component grown inside a randomly chosen class, and random extra
/// edges incident only to outliers. Deterministic per seed; the outlier set
/// is always a valid modulator, so the instance is a yes at budget k.
inline std::pair<ScatteredInstance, VertexSet> generate_planted(int n, int k,
                                                                const ClassFamily& classes,
                                                                unsigned seed) {
    if (n < k || k < 0) throw GraphError("generate_planted: need n >= k >= 0");
    std::mt19937 rng(seed);
    std::vector<Vertex> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i + 1;
    std::shuffle(ids.begin(), ids.end(), rng);
    VertexSet outliers(ids.begin(), ids.begin() + k);
    std::sort(outliers.begin(), outliers.end());

    Graph g;
    for (int v = 1; v <= n; ++v) g.add_vertex(v);

    // Grow each clean component one vertex at a time, keeping it a member of
    // its chosen class; a vertex that cannot attach starts a new component.
    std::vector<Vertex> rest(ids.begin() + k, ids.end());
    std::size_t pos = 0;
    while (pos < rest.size()) {
        std::size_t fam_idx = std::uniform_int_distribution<std::size_t>(
            0, classes.families.size() - 1)(rng);
        const auto& fam = classes.families[fam_idx];
        std::size_t goal = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        VertexSet comp{rest[pos++]};
        while (comp.size() < goal && pos < rest.size()) {
            Vertex v = rest[pos];
            // try a few random attachments before giving up on this component
            bool attached = false;
            for (int attempt = 0; attempt < 4 && !attached; ++attempt) {
                std::vector<Vertex> targets(comp);
                std::shuffle(targets.begin(), targets.end(), rng);
                std::size_t deg = std::uniform_int_distribution<std::size_t>(
                    1, targets.size())(rng);
                for (std::size_t i = 0; i < deg; ++i) g.add_edge(v, targets[i]);
                VertexSet trial = comp;
                vset::insert(trial, v);
                bool ok = true;
                for (const auto& pat : fam.patterns)
                    if (has_induced(g, pat, trial)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    attached = true;
                } else {
                    for (std::size_t i = 0; i < deg; ++i) g.remove_edge(v, targets[i]);
                }
            }
            if (!attached) break;
            vset::insert(comp, v);
            ++pos;
        }
    }

    // Outlier edges: only these touch the planted set, so deleting it always
    // restores the clean components.
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (Vertex o : outliers)
        for (Vertex v = 1; v <= n; ++v)
            if (v != o && !g.has_edge(o, v) && coin(rng) < 3.0 / n) g.add_edge(o, v);

    return {{g, k, classes}, outliers};
}

/// Machine-readable run record. `stable_line`/`stable_json` omit timing so
/// identical seeds and flags yield byte-identical output.
struct RunReport {
    bool answer = false;
    std::optional<VertexSet> witness;
    SolveStats stats;
    std::string engine;
    int k = 0;
    int gadget_cap = 6;
    int threads = 1;
    unsigned seed = 0;

    std::string stable_line() const {
        std::ostringstream out;
        out << "answer=" << (answer ? "yes" : "no");
        out << " witness=" << (witness ? vset::to_string(*witness) : "-");
        out << " nodes=" << stats.branch_nodes << " separator_enumerations="
            << stats.separator_enumerations << " fallbacks=" << stats.fallbacks
            << " gadgets=" << stats.gadget_instances;
        out << " engine=" << engine << " k=" << k << " gadget_cap=" << gadget_cap
            << " threads=" << threads << " seed=" << seed;
        return out.str();
    }

    nlohmann::ordered_json stable_json() const {
        nlohmann::ordered_json j;
        j["answer"] = answer;
        if (witness)
            j["witness"] = *witness;
        else
            j["witness"] = nullptr;
        j["stats"] = {{"nodes", stats.branch_nodes},
                      {"separator_enumerations", stats.separator_enumerations},
                      {"fallbacks", stats.fallbacks},
                      {"gadgets", stats.gadget_instances}};
        j["config"] = {{"engine", engine},
                       {"k", k},
                       {"gadget_cap", gadget_cap},
                       {"threads", threads},
                       {"seed", seed}};
        return j;
    }
};

}  // namespace scatter
