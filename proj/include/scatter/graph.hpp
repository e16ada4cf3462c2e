#pragma once

#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "scatter/vertex_set.hpp"

namespace scatter {

class GraphError : public std::runtime_error {
  public:
    explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

/// Simple undirected graph over stable integer vertex ids. Adjacency lists
/// are kept sorted; iteration over vertices and neighbors is always in
/// ascending id order.
class Graph {
  public:
    Graph() = default;

    void add_vertex(Vertex v) { adj_.try_emplace(v); }

    void add_edge(Vertex u, Vertex v) {
        if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
        add_vertex(u);
        add_vertex(v);
        vset::insert(adj_[u], v);
        vset::insert(adj_[v], u);
    }

    void remove_edge(Vertex u, Vertex v) {
        if (!has_edge(u, v)) throw GraphError("no such edge");
        vset::erase(adj_[u], v);
        vset::erase(adj_[v], u);
    }

    bool has_vertex(Vertex v) const { return adj_.count(v) != 0; }

    bool has_edge(Vertex u, Vertex v) const {
        auto it = adj_.find(u);
        return it != adj_.end() && vset::contains(it->second, v);
    }

    const VertexSet& neighbors(Vertex v) const {
        auto it = adj_.find(v);
        if (it == adj_.end()) throw GraphError("unknown vertex " + std::to_string(v));
        return it->second;
    }

    std::size_t degree(Vertex v) const { return neighbors(v).size(); }

    std::size_t num_vertices() const { return adj_.size(); }

    std::size_t num_edges() const {
        std::size_t twice = 0;
        for (const auto& [v, nb] : adj_) twice += nb.size();
        return twice / 2;
    }

    VertexSet vertices() const {
        VertexSet out;
        out.reserve(adj_.size());
        for (const auto& [v, nb] : adj_) out.push_back(v);
        return out;
    }

    Vertex max_vertex_id() const {
        return adj_.empty() ? 0 : adj_.rbegin()->first;
    }

    /// Neighborhood of a set, excluding the set itself.
    VertexSet neighborhood(const VertexSet& s) const {
        VertexSet out;
        for (Vertex v : s)
            for (Vertex w : neighbors(v))
                if (!vset::contains(s, w)) vset::insert(out, w);
        return out;
    }

    bool operator==(const Graph& other) const { return adj_ == other.adj_; }

  private:
    std::map<Vertex, VertexSet> adj_;
};

/// G[s]: vertex ids are preserved, so sets computed on the subgraph remain
/// meaningful in the host graph.
inline Graph induced_subgraph(const Graph& g, const VertexSet& s) {
    Graph out;
    for (Vertex v : s) {
        if (!g.has_vertex(v)) throw GraphError("unknown vertex " + std::to_string(v));
        out.add_vertex(v);
        for (Vertex w : g.neighbors(v))
            if (w > v && vset::contains(s, w)) out.add_edge(v, w);
    }
    return out;
}

inline Graph remove_vertices(const Graph& g, const VertexSet& s) {
    return induced_subgraph(g, vset::subtract(g.vertices(), s));
}

/// Partition of V(g) into maximal connected sets, ordered by smallest id.
inline std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> comps;
    VertexSet seen;
    for (Vertex root : g.vertices()) {
        if (vset::contains(seen, root)) continue;
        VertexSet comp{root};
        std::vector<Vertex> stack{root};
        vset::insert(seen, root);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (!vset::contains(seen, w)) {
                    vset::insert(seen, w);
                    vset::insert(comp, w);
                    stack.push_back(w);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline bool is_connected(const Graph& g) {
    return g.num_vertices() <= 1 || connected_components(g).size() == 1;
}

/// R_G(X,S): vertices in the connected components of G - S that meet X.
inline VertexSet reach(const Graph& g, const VertexSet& x, const VertexSet& s) {
    if (x.empty()) throw GraphError("reach: X must be nonempty");
    if (!vset::disjoint(x, s)) throw GraphError("reach: X intersects S");
    VertexSet out;
    std::vector<Vertex> stack;
    for (Vertex v : x) {
        if (!g.has_vertex(v)) throw GraphError("unknown vertex " + std::to_string(v));
        vset::insert(out, v);
        stack.push_back(v);
    }
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : g.neighbors(v)) {
            if (vset::contains(s, w) || vset::contains(out, w)) continue;
            vset::insert(out, w);
            stack.push_back(w);
        }
    }
    return out;
}

/// R_G[X,S] = R_G(X,S) ∪ S.
inline VertexSet reach_closed(const Graph& g, const VertexSet& x, const VertexSet& s) {
    return vset::unite(reach(g, x, s), s);
}

/// NR_G(X,S) = V ∖ R_G[X,S].
inline VertexSet non_reach(const Graph& g, const VertexSet& x, const VertexSet& s) {
    return vset::subtract(g.vertices(), reach_closed(g, x, s));
}

inline bool is_separator(const Graph& g, const VertexSet& s, const VertexSet& x,
                         const VertexSet& y) {
    if (!vset::disjoint(s, x) || !vset::disjoint(s, y))
        throw GraphError("is_separator: S must be disjoint from X and Y");
    return vset::disjoint(reach(g, x, s), y);
}

/// Graph with an ordered labelled boundary and an annotated set.
struct BoundariedGraph {
    Graph graph;
    std::vector<Vertex> boundary;  // distinct, ordered terminals
    VertexSet annotated;           // disjoint from the boundary

    BoundariedGraph() = default;
    BoundariedGraph(Graph g, std::vector<Vertex> b, VertexSet ann = {})
        : graph(std::move(g)), boundary(std::move(b)), annotated(std::move(ann)) {
        VertexSet bset;
        for (Vertex v : boundary) {
            if (!graph.has_vertex(v))
                throw GraphError("boundary vertex not in graph: " + std::to_string(v));
            if (vset::contains(bset, v))
                throw GraphError("duplicate boundary vertex: " + std::to_string(v));
            vset::insert(bset, v);
        }
        for (Vertex v : annotated) {
            if (!graph.has_vertex(v))
                throw GraphError("annotated vertex not in graph: " + std::to_string(v));
            if (vset::contains(bset, v))
                throw GraphError("annotated vertex on boundary: " + std::to_string(v));
        }
    }

    VertexSet boundary_set() const { return vset::normalized(boundary); }
};

struct GlueResult {
    Graph graph;
    /// Old id in g2 -> id in the glued graph (boundary maps per mu,
    /// non-boundary vertices get fresh ids above max id of g1).
    std::map<Vertex, Vertex> g2_map;
};

/// Glue g2 onto g1, identifying boundary(g2)[i] with mu[i] in boundary(g1).
/// mu is given positionally: mu[i] is the g1 terminal for g2 terminal i.
inline GlueResult glue(const BoundariedGraph& g1, const BoundariedGraph& g2,
                       const std::vector<Vertex>& mu) {
    if (g1.boundary.size() != g2.boundary.size() || mu.size() != g1.boundary.size())
        throw GraphError("glue: boundary size mismatch");
    std::map<Vertex, Vertex> map2;  // g2 vertex -> glued vertex
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (!vset::contains(g1.boundary_set(), mu[i]))
            throw GraphError("glue: mu image not a g1 terminal");
        map2[g2.boundary[i]] = mu[i];
    }
    if (map2.size() != g2.boundary.size()) throw GraphError("glue: mu not injective");
    // mu must be an isomorphism of the boundary-induced graphs.
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = i + 1; j < mu.size(); ++j)
            if (g2.graph.has_edge(g2.boundary[i], g2.boundary[j]) !=
                g1.graph.has_edge(mu[i], mu[j]))
                throw GraphError("glue: mu is not a boundary isomorphism");

    GlueResult res;
    res.graph = g1.graph;
    Vertex next = std::max(g1.graph.max_vertex_id(), g2.graph.max_vertex_id()) + 1;
    for (Vertex v : g2.graph.vertices())
        if (!map2.count(v)) map2[v] = next++;
    for (Vertex v : g2.graph.vertices()) {
        res.graph.add_vertex(map2[v]);
        for (Vertex w : g2.graph.neighbors(v))
            if (w > v) res.graph.add_edge(map2[v], map2[w]);
    }
    res.g2_map = std::move(map2);
    return res;
}

/// Replace a degree-2 path by one with exactly target_len internal vertices.
/// `path` lists the vertices in order, endpoints included; every internal
/// vertex must have degree 2 in g. Keeps the first ceil(target/2) and last
/// floor(target/2) internal vertices.
inline Graph contract_degree2_path(const Graph& g, const std::vector<Vertex>& path,
                                   std::size_t target_len) {
    if (path.size() < 2) throw GraphError("contract: path needs two endpoints");
    std::size_t internal = path.size() - 2;
    if (internal <= target_len) throw GraphError("contract: path not longer than target");
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!g.has_edge(path[i], path[i + 1]))
            throw GraphError("contract: not a path in g");
        if (i > 0 && g.degree(path[i]) != 2)
            throw GraphError("contract: internal vertex of degree != 2");
    }
    std::size_t keep_head = (target_len + 1) / 2;
    std::size_t keep_tail = target_len / 2;
    VertexSet dropped;
    for (std::size_t i = 1 + keep_head; i + 1 + keep_tail < path.size(); ++i)
        vset::insert(dropped, path[i]);
    Graph out = remove_vertices(g, dropped);
    Vertex left = path[keep_head];          // last kept on the head side
    Vertex right = path[path.size() - 1 - keep_tail];  // first kept on the tail side
    out.add_edge(left, right);
    return out;
}

/// All connected sets B with v ∈ B, |B| = b+1 and |N(B)| = f. The count is
/// at most C(b+f, b); enumeration is the usual include/exclude expansion of
/// the frontier.
inline std::vector<VertexSet> enumerate_connected_sets(const Graph& g, Vertex v,
                                                       std::size_t b, std::size_t f) {
    if (!g.has_vertex(v)) throw GraphError("unknown vertex " + std::to_string(v));
    std::vector<VertexSet> out;
    std::function<void(VertexSet&, VertexSet&)> rec = [&](VertexSet& cur, VertexSet& excluded) {
        VertexSet nb = g.neighborhood(cur);
        VertexSet blocked = vset::intersect(nb, excluded);
        if (blocked.size() > f) return;  // boundary already too large
        if (cur.size() == b + 1) {
            if (nb.size() == f) out.push_back(cur);
            return;
        }
        VertexSet open = vset::subtract(nb, excluded);
        if (open.empty()) return;
        Vertex u = open.front();
        vset::insert(cur, u);
        rec(cur, excluded);
        vset::erase(cur, u);
        vset::insert(excluded, u);
        rec(cur, excluded);
        vset::erase(excluded, u);
    };
    VertexSet cur{v}, excluded;
    rec(cur, excluded);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace scatter
