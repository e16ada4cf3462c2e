#pragma once

#include <deque>
#include <optional>

#include "scatter/graph.hpp"

namespace scatter {

/// Hard cap on separator budgets; queries beyond it are refused loudly.
inline constexpr int kMaxSeparatorBudget = 16;

struct SeparatorQuery {
    Graph graph;
    VertexSet x;
    VertexSet y;
    int k = 0;
    VertexSet undeletable;

    void validate() const {
        if (x.empty() || y.empty()) throw GraphError("separator query: X and Y must be nonempty");
        if (!vset::disjoint(x, y)) throw GraphError("separator query: X intersects Y");
        if (k < 0) throw GraphError("separator query: negative budget");
        if (k > kMaxSeparatorBudget)
            throw GraphError("separator query: budget exceeds cap of " +
                             std::to_string(kMaxSeparatorBudget));
        for (Vertex v : vset::unite(x, y))
            if (!graph.has_vertex(v)) throw GraphError("separator query: unknown vertex");
    }
};

namespace detail {

/// Unit-capacity vertex-split flow network for X-Y vertex cuts. Undeletable
/// vertices (and X, Y themselves) get effectively infinite capacity.
struct VertexCutNetwork {
    // Node numbering: 0 = source, 1 = sink, then 2+2i / 3+2i for the in/out
    // copy of the i-th vertex (ascending id order).
    VertexSet verts;
    std::map<Vertex, int> index;
    std::vector<std::vector<int>> cap;  // dense; graphs here are small
    int n_nodes;

    VertexCutNetwork(const Graph& g, const VertexSet& x, const VertexSet& y,
                     const VertexSet& undeletable)
        : verts(g.vertices()) {
        int big = static_cast<int>(verts.size()) + kMaxSeparatorBudget + 2;
        n_nodes = 2 + 2 * static_cast<int>(verts.size());
        cap.assign(n_nodes, std::vector<int>(n_nodes, 0));
        for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = static_cast<int>(i);
        for (Vertex v : verts) {
            bool rigid = vset::contains(x, v) || vset::contains(y, v) ||
                         vset::contains(undeletable, v);
            cap[in(v)][out(v)] = rigid ? big : 1;
            for (Vertex w : g.neighbors(v)) cap[out(v)][in(w)] = big;
        }
        for (Vertex v : x) cap[0][in(v)] = big;
        for (Vertex v : y) cap[out(v)][1] = big;
    }

    int in(Vertex v) const { return 2 + 2 * index.at(v); }
    int out(Vertex v) const { return 3 + 2 * index.at(v); }

    /// BFS augmenting paths, stopping once flow exceeds `limit`.
    int max_flow(int limit) {
        int flow = 0;
        while (flow <= limit) {
            std::vector<int> prev(n_nodes, -1);
            std::deque<int> queue{0};
            prev[0] = 0;
            while (!queue.empty() && prev[1] < 0) {
                int u = queue.front();
                queue.pop_front();
                for (int v = 0; v < n_nodes; ++v)
                    if (prev[v] < 0 && cap[u][v] > 0) {
                        prev[v] = u;
                        queue.push_back(v);
                    }
            }
            if (prev[1] < 0) break;
            for (int v = 1; v != 0; v = prev[v]) {
                cap[prev[v]][v] -= 1;
                cap[v][prev[v]] += 1;
            }
            ++flow;
        }
        return flow;
    }

    /// Min cut closest to Y: vertices whose split edge crosses into the set
    /// of nodes that still reach the sink in the residual network.
    VertexSet sink_side_cut() const {
        std::vector<bool> to_sink(n_nodes, false);
        to_sink[1] = true;
        std::deque<int> queue{1};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int u = 0; u < n_nodes; ++u)
                if (!to_sink[u] && cap[u][v] > 0) {
                    to_sink[u] = true;
                    queue.push_back(u);
                }
        }
        VertexSet cut;
        for (Vertex v : verts)
            if (!to_sink[in(v)] && to_sink[out(v)]) vset::insert(cut, v);
        return cut;
    }
};

inline bool adjacent_sets(const Graph& g, const VertexSet& a, const VertexSet& b) {
    for (Vertex v : a)
        for (Vertex w : g.neighbors(v))
            if (vset::contains(b, w)) return true;
    return false;
}

}  // namespace detail

/// Minimum X-Y vertex separator disjoint from u, of size <= k; among minimum
/// cuts, the one closest to Y. Absent when X touches Y directly or every
/// cut needs more than k deletable vertices.
inline std::optional<VertexSet> min_vertex_cut(const SeparatorQuery& q) {
    q.validate();
    if (detail::adjacent_sets(q.graph, q.x, q.y)) return std::nullopt;
    detail::VertexCutNetwork net(q.graph, q.x, q.y, q.undeletable);
    if (net.max_flow(q.k) > q.k) return std::nullopt;
    return net.sink_side_cut();
}

/// R(X,S1) strictly contains R(X,S) — S1 sits closer to Y than S.
inline bool covers(const Graph& g, const VertexSet& x, const VertexSet& s1, const VertexSet& s) {
    VertexSet r1 = reach(g, x, s1);
    VertexSet r = reach(g, x, s);
    return r != r1 && vset::is_subset(r, r1);
}

inline bool dominates(const Graph& g, const VertexSet& x, const VertexSet& s1,
                      const VertexSet& s) {
    return s1.size() <= s.size() && covers(g, x, s1, s);
}

inline bool is_minimal_separator(const Graph& g, const VertexSet& s, const VertexSet& x,
                                 const VertexSet& y) {
    if (!is_separator(g, s, x, y)) return false;
    for (Vertex v : s) {
        VertexSet sub = s;
        vset::erase(sub, v);
        if (is_separator(g, sub, x, y)) return false;
    }
    return true;
}

/// All important X-Y separators of size <= k disjoint from u, i.e. minimal
/// separators dominated by no other. When X and Y are already disconnected
/// the answer is the empty separator alone. Candidates come from the usual
/// branching on the min cut closest to Y (take a cut vertex into the
/// separator, or push X past it); a final filter enforces importance.
inline std::vector<VertexSet> enumerate_important_separators(const SeparatorQuery& q) {
    q.validate();
    std::vector<VertexSet> candidates;
    std::function<void(const Graph&, const VertexSet&, VertexSet, int)> rec =
        [&](const Graph& g, const VertexSet& xc, VertexSet chosen, int budget) {
            if (budget < 0 || detail::adjacent_sets(g, xc, q.y)) return;
            detail::VertexCutNetwork net(g, xc, q.y, q.undeletable);
            int flow = net.max_flow(budget);
            if (flow > budget) return;
            if (flow == 0) {
                candidates.push_back(std::move(chosen));
                return;
            }
            VertexSet cut = net.sink_side_cut();
            Vertex v = cut.front();
            VertexSet with = chosen;
            vset::insert(with, v);
            rec(remove_vertices(g, {v}), xc, std::move(with), budget - 1);
            rec(g, vset::unite(reach(g, xc, cut), {v}), std::move(chosen), budget);
        };
    rec(q.graph, q.x, {}, q.k);

    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<VertexSet> result;
    for (const auto& s : candidates) {
        if (!is_minimal_separator(q.graph, s, q.x, q.y)) continue;
        bool dominated = false;
        for (const auto& t : candidates)
            if (t != s && dominates(q.graph, q.x, t, s)) {
                dominated = true;
                break;
            }
        if (!dominated) result.push_back(s);
    }
    return result;
}

/// A separator covered by no other size-<= k separator disjoint from u.
/// Any separator covering s is itself covered-or-matched by an important
/// one, so scanning the important separators suffices. Ties broken
/// lexicographically for determinism.
inline std::optional<VertexSet> component_maximal_separator(const SeparatorQuery& q) {
    auto imp = enumerate_important_separators(q);
    std::optional<VertexSet> best;
    for (const auto& s : imp) {
        bool covered = false;
        for (const auto& t : imp)
            if (t != s && covers(q.graph, q.x, t, s)) {
                covered = true;
                break;
            }
        if (!covered && (!best || s < *best)) best = s;
    }
    return best;
}

/// Tight separator sequence of order k with undeletable set u, ordered from
/// closest-to-X to closest-to-Y. Built by repeatedly taking a
/// component-maximal separator and shrinking the far side onto it; the
/// members are pairwise disjoint and totally ordered by coverage. Empty when
/// X and Y are adjacent or already disconnected.
inline std::vector<VertexSet> tight_separator_sequence(const SeparatorQuery& q) {
    q.validate();
    std::vector<VertexSet> seq;
    VertexSet ycur = q.y;
    while (!detail::adjacent_sets(q.graph, q.x, ycur)) {
        auto s = component_maximal_separator({q.graph, q.x, ycur, q.k, q.undeletable});
        if (!s || s->empty()) break;
        seq.push_back(*s);
        ycur = *s;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
}

}  // namespace scatter
