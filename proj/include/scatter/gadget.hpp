#pragma once

#include <cmath>

#include "scatter/classes.hpp"
#include "scatter/solver.hpp"

namespace scatter {

namespace detail {

/// All minimal forbidden sets of g contained in pool (each lies inside one
/// component and carries a witness for every family). Work is C(|pool|, p·d).
inline std::vector<VertexSet> enumerate_forbidden_sets(const Graph& g, const VertexSet& pool,
                                                       const ClassFamily& classes) {
    std::size_t max_size = classes.p() * classes.d();
    double work = 1;
    for (std::size_t i = 0; i < max_size; ++i) work *= static_cast<double>(pool.size());
    if (work > 5e7)
        throw GraphError("forbidden-set enumeration pool too large for gadget construction");

    auto comps = connected_components(g);
    auto same_component = [&](const VertexSet& c) {
        for (const auto& comp : comps)
            if (vset::is_subset(c, comp)) return true;
        return false;
    };
    std::vector<VertexSet> out;
    for (std::size_t r = 1; r <= max_size && r <= pool.size(); ++r)
        for_each_subset(pool, r, [&](const VertexSet& c) {
            if (!same_component(c) || !carries_all_families(g, c, classes)) return false;
            for (Vertex v : c) {
                VertexSet sub = c;
                vset::erase(sub, v);
                if (carries_all_families(g, sub, classes)) return false;  // not minimal
            }
            out.push_back(c);
            return false;
        });
    return out;
}

/// Maximal paths in g whose internal vertices have degree 2 and avoid
/// `protect`; each returned path lists its vertices in order, endpoints
/// included.
inline std::vector<std::vector<Vertex>> degree2_chains(const Graph& g, const VertexSet& protect) {
    auto contractible = [&](Vertex v) {
        return g.degree(v) == 2 && !vset::contains(protect, v);
    };
    std::vector<std::vector<Vertex>> chains;
    VertexSet used;
    for (Vertex a : g.vertices()) {
        if (contractible(a)) continue;
        for (Vertex b : g.neighbors(a)) {
            if (!contractible(b) || vset::contains(used, b)) continue;
            // walk a -> b -> ... until the first non-contractible vertex
            std::vector<Vertex> path{a, b};
            vset::insert(used, b);
            while (contractible(path.back())) {
                const auto& nb = g.neighbors(path.back());
                Vertex nxt = nb[0] == path[path.size() - 2] ? nb[1] : nb[0];
                path.push_back(nxt);
                if (contractible(nxt)) vset::insert(used, nxt);
            }
            chains.push_back(path);
        }
    }
    return chains;
}

}  // namespace detail

/// Upper bound on the marked-gadget vertex count from the marking analysis:
/// 2(ηpd + k)²(4pd + 2) with η = f^d · 2^{pd} · k^{(p+1)d} · k^{2(pd)²};
/// returned as a double since it overflows integers for any real k.
inline double gadget_size_bound(const ClassFamily& classes, int k) {
    double p = static_cast<double>(classes.p());
    double d = static_cast<double>(classes.d());
    double f = static_cast<double>(classes.f_max());
    double kk = std::max(2.0, static_cast<double>(k));
    double eta = std::pow(f, d) * std::pow(2.0, p * d) * std::pow(kk, (p + 1) * d) *
                 std::pow(kk, 2.0 * (p * d) * (p * d));
    return 2.0 * std::pow(eta * p * d + kk, 2.0) * (4.0 * p * d + 2.0);
}

/// Witness-guided gadget of the marking scheme. Given a separator x
/// incomparable with p1 and a modulator kmod of the w1 side of x extending
/// x, builds a small boundaried graph that can replace everything beyond
/// R[w1,p1]: marked forbidden-set fragments, connectivity preserved through
/// kept vertices, long unmarked degree-2 paths contracted to 4pd+2, boundary
/// p1^r, annotated set K^nr.
inline BoundariedGraph construct_marked_gadget(const Graph& g, const VertexSet& w1,
                                               const VertexSet& p1, const VertexSet& x,
                                               const VertexSet& kmod, const ClassFamily& classes) {
    if (!vset::disjoint(p1, kmod)) throw GraphError("gadget: p1 intersects the modulator");
    if (!vset::is_subset(x, kmod)) throw GraphError("gadget: modulator must extend x");
    VertexSet rwx = reach(g, w1, x);
    VertexSet rwp = reach(g, w1, p1);
    VertexSet p1r = vset::intersect(p1, rwx);
    VertexSet p1nr = vset::subtract(p1, p1r);
    VertexSet xr = vset::intersect(x, rwp);
    VertexSet xnr = vset::subtract(x, xr);
    if (p1r.empty() || p1nr.empty() || xr.empty() || xnr.empty())
        throw GraphError("gadget: x and p1 are not incomparable");
    VertexSet side_x = vset::unite(rwx, x);  // R[w1,x]
    if (!vset::is_subset(kmod, side_x) ||
        !is_scattered_modulator(induced_subgraph(g, side_x), kmod, classes))
        throw GraphError("gadget: kmod is not a modulator of the w1 side of x");

    VertexSet rwp_closed = vset::unite(rwp, p1);  // R[w1,p1]
    VertexSet kr = vset::intersect(kmod, rwp_closed);
    VertexSet knr = vset::subtract(kmod, kr);
    VertexSet nr = vset::subtract(g.vertices(), rwp_closed);  // NR(w1,p1)
    VertexSet v2 = vset::unite(vset::unite(vset::intersect(nr, rwx), p1r), knr);

    // Marking: fragments of forbidden sets of G - K^nr reaching into v2.
    Graph gk = remove_vertices(g, knr);
    VertexSet pool = vset::intersect(vset::unite(v2, rwp_closed), gk.vertices());
    VertexSet marked;
    for (const auto& c : detail::enumerate_forbidden_sets(gk, pool, classes))
        marked = vset::unite(marked, vset::intersect(c, v2));

    // Keep a vertex set in v2 preserving connectivity among marked vertices
    // and the boundary, as witnessed in G[v2] - K^nr.
    Graph gv2 = induced_subgraph(g, vset::subtract(v2, knr));
    VertexSet terminals = vset::unite(marked, p1r);
    VertexSet kept = terminals;
    auto connected_in = [](const Graph& h, Vertex a, Vertex b) {
        return h.has_vertex(a) && h.has_vertex(b) && vset::contains(reach(h, {a}, {}), b);
    };
    for (Vertex a : terminals)
        for (Vertex b : terminals) {
            if (b <= a || !connected_in(gv2, a, b)) continue;
            if (connected_in(induced_subgraph(gv2, vset::intersect(kept, gv2.vertices())), a, b))
                continue;
            // add a shortest a-b path in gv2
            std::map<Vertex, Vertex> par;
            std::deque<Vertex> queue{a};
            par[a] = a;
            while (!queue.empty() && !par.count(b)) {
                Vertex v = queue.front();
                queue.pop_front();
                for (Vertex w : gv2.neighbors(v))
                    if (!par.count(w)) {
                        par[w] = v;
                        queue.push_back(w);
                    }
            }
            for (Vertex v = b; v != a; v = par[v]) vset::insert(kept, v);
        }
    // prune fillers no longer needed, ascending id
    for (Vertex v : vset::subtract(kept, terminals)) {
        VertexSet trial = kept;
        vset::erase(trial, v);
        Graph h = induced_subgraph(gv2, trial);
        bool ok = true;
        for (Vertex a : terminals)
            for (Vertex b : terminals)
                if (a < b && connected_in(gv2, a, b) && !connected_in(h, a, b)) ok = false;
        if (ok) kept = trial;
    }

    Graph gadget = induced_subgraph(g, vset::unite(kept, knr));
    // Contract long unmarked degree-2 paths to the pattern-safe length.
    std::size_t target = 4 * classes.p() * classes.d() + 2;
    VertexSet protect = vset::unite(terminals, knr);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& chain : detail::degree2_chains(gadget, protect)) {
            if (chain.size() < 2 || chain.size() - 2 <= target) continue;
            gadget = contract_degree2_path(gadget, chain, target);
            changed = true;
            break;
        }
    }
    return BoundariedGraph(gadget, std::vector<Vertex>(p1r.begin(), p1r.end()),
                           vset::intersect(knr, gadget.vertices()));
}

}  // namespace scatter
