#pragma once

#include <optional>
#include <string>

#include "scatter/graph.hpp"

namespace scatter {

/// A small graph treated as a forbidden induced pattern.
using PatternGraph = Graph;

struct ForbiddenFamily {
    std::string name;
    std::vector<PatternGraph> patterns;
};

/// The list (F_1,...,F_d) of finite forbidden families, with the derived
/// constants used by the gadget size bounds.
struct ClassFamily {
    std::vector<ForbiddenFamily> families;

    std::size_t d() const { return families.size(); }

    /// Max pattern size over all families.
    std::size_t p() const {
        std::size_t m = 1;
        for (const auto& fam : families)
            for (const auto& pat : fam.patterns) m = std::max(m, pat.num_vertices());
        return m;
    }

    /// Max family cardinality.
    std::size_t f_max() const {
        std::size_t m = 1;
        for (const auto& fam : families) m = std::max(m, fam.patterns.size());
        return m;
    }
};

namespace detail {

/// Backtracking injective map pattern -> host preserving adjacency and
/// non-adjacency. `allowed` restricts the image; `lower_bound` (exclusive of
/// prefix) forces images outside `forced` to exceed it. Returns any witness.
inline bool induced_embedding_exists(const Graph& host, const Graph& pattern,
                                     const VertexSet& allowed, const VertexSet& forced,
                                     Vertex min_free) {
    VertexSet pverts = pattern.vertices();
    std::size_t n = pverts.size();
    std::vector<Vertex> image(n, -1);
    VertexSet used;

    // Order pattern vertices by descending degree for earlier pruning.
    std::vector<Vertex> order(pverts);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return pattern.degree(a) > pattern.degree(b);
    });
    std::map<Vertex, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == n) return vset::is_subset(forced, used);
        Vertex pv = order[i];
        for (Vertex hv : allowed) {
            if (vset::contains(used, hv)) continue;
            if (!vset::contains(forced, hv) && hv <= min_free) continue;
            if (host.degree(hv) < pattern.degree(pv)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                Vertex pw = order[j];
                ok = pattern.has_edge(pv, pw) == host.has_edge(hv, image[pos[pw]]);
            }
            if (!ok) continue;
            image[i] = hv;
            vset::insert(used, hv);
            if (rec(i + 1)) return true;
            vset::erase(used, hv);
        }
        return false;
    };
    return rec(0);
}

}  // namespace detail

/// Existence-only induced pattern check, restricted to `allowed`.
inline bool has_induced(const Graph& g, const PatternGraph& h, const VertexSet& allowed) {
    if (h.num_vertices() == 0 || h.num_vertices() > allowed.size()) return h.num_vertices() == 0;
    return detail::induced_embedding_exists(g, h, allowed, {}, -1);
}

inline bool has_induced(const Graph& g, const PatternGraph& h) {
    return has_induced(g, h, g.vertices());
}

/// Lexicographically least vertex set of g inducing a copy of h, built by
/// greedily extending the least prefix that still extends to a witness.
inline std::optional<VertexSet> contains_induced(const Graph& g, const PatternGraph& h) {
    std::size_t n = h.num_vertices();
    if (n == 0) return VertexSet{};
    if (n > g.num_vertices()) return std::nullopt;
    VertexSet all = g.vertices();
    if (!detail::induced_embedding_exists(g, h, all, {}, -1)) return std::nullopt;
    VertexSet prefix;
    while (prefix.size() < n) {
        Vertex lo = prefix.empty() ? -1 : prefix.back();
        for (Vertex cand : all) {
            if (cand <= lo) continue;
            VertexSet attempt = prefix;
            vset::insert(attempt, cand);
            if (detail::induced_embedding_exists(g, h, all, attempt, attempt.back())) {
                prefix = attempt;
                break;
            }
        }
    }
    return prefix;
}

/// True iff no pattern of fam occurs induced in comp. comp must be connected.
inline bool component_in_class(const Graph& comp, const ForbiddenFamily& fam) {
    if (!is_connected(comp)) throw GraphError("component_in_class: graph is disconnected");
    for (const auto& pat : fam.patterns)
        if (has_induced(comp, pat)) return false;
    return true;
}

namespace detail {

/// Membership test on an already-extracted component vertex set.
inline bool set_in_some_class(const Graph& g, const VertexSet& comp, const ClassFamily& classes) {
    for (const auto& fam : classes.families) {
        bool hit = false;
        for (const auto& pat : fam.patterns)
            if (has_induced(g, pat, comp)) {
                hit = true;
                break;
            }
        if (!hit) return true;
    }
    return false;
}

}  // namespace detail

/// True iff every component of G - z lies in at least one class.
inline bool is_scattered_modulator(const Graph& g, const VertexSet& z, const ClassFamily& classes) {
    Graph rest = remove_vertices(g, z);
    for (const auto& comp : connected_components(rest))
        if (!detail::set_in_some_class(rest, comp, classes)) return false;
    return true;
}

/// Minimal set C inside one component containing, for every family, a subset
/// inducing one of its patterns.
struct ForbiddenSet {
    VertexSet vertices;                   // C
    std::vector<VertexSet> witnesses;     // C_i per family
};

namespace detail {

/// Does `c` (interpreted in g) contain a witness for every family?
inline bool carries_all_families(const Graph& g, const VertexSet& c, const ClassFamily& classes) {
    for (const auto& fam : classes.families) {
        bool hit = false;
        for (const auto& pat : fam.patterns)
            if (has_induced(g, pat, c)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

}  // namespace detail

/// Find a forbidden set, or nullopt when the empty set is already a
/// scattered modulator. Witness per family is the lexicographically least
/// over the family's patterns; minimization removes vertices in ascending
/// id order until stable.
inline std::optional<ForbiddenSet> find_forbidden_set(const Graph& g, const ClassFamily& classes) {
    for (const auto& comp : connected_components(g)) {
        if (detail::set_in_some_class(g, comp, classes)) continue;
        Graph cg = induced_subgraph(g, comp);
        VertexSet c;
        for (const auto& fam : classes.families) {
            std::optional<VertexSet> best;
            for (const auto& pat : fam.patterns) {
                auto w = contains_induced(cg, pat);
                if (w && (!best || *w < *best)) best = *w;
            }
            c = vset::unite(c, *best);  // component fails every family, so best exists
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (Vertex v : c) {
                VertexSet trimmed = c;
                vset::erase(trimmed, v);
                if (detail::carries_all_families(g, trimmed, classes)) {
                    c = trimmed;
                    changed = true;
                    break;
                }
            }
        }
        ForbiddenSet out;
        out.vertices = c;
        Graph cind = induced_subgraph(g, c);
        for (const auto& fam : classes.families) {
            std::optional<VertexSet> best;
            for (const auto& pat : fam.patterns) {
                auto w = contains_induced(cind, pat);
                if (w && (!best || *w < *best)) best = *w;
            }
            out.witnesses.push_back(*best);
        }
        return out;
    }
    return std::nullopt;
}

namespace detail {

inline PatternGraph path_graph(int n) {
    PatternGraph g;
    g.add_vertex(1);
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline PatternGraph cycle_graph(int n) {
    PatternGraph g = path_graph(n);
    g.add_edge(1, n);
    return g;
}

inline PatternGraph complete_graph(int n) {
    PatternGraph g;
    g.add_vertex(1);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
    return g;
}

inline PatternGraph two_k2() {
    PatternGraph g;
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    return g;
}

}  // namespace detail

/// Builtin families: clique -> {P3}; biclique -> {K3,P4}; cograph -> {P4};
/// split -> {2K2,C4,C5}; cluster-within-component -> {P3}; edgeless -> {K2}.
inline ForbiddenFamily builtin_family(const std::string& name) {
    using namespace detail;
    if (name == "clique") return {name, {path_graph(3)}};
    if (name == "biclique") return {name, {complete_graph(3), path_graph(4)}};
    if (name == "cograph") return {name, {path_graph(4)}};
    if (name == "split") return {name, {two_k2(), cycle_graph(4), cycle_graph(5)}};
    if (name == "cluster-within-component") return {name, {path_graph(3)}};
    if (name == "edgeless") return {name, {complete_graph(2)}};
    throw GraphError("unknown builtin class: " + name);
}

}  // namespace scatter
