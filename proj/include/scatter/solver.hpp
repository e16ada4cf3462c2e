#pragma once

#include <chrono>
#include <future>
#include <optional>
#include <stdexcept>

#include "scatter/classes.hpp"
#include "scatter/oracle.hpp"
#include "scatter/separators.hpp"

namespace scatter {

enum class Engine { fpt, oracle, auto_select };

struct SolverConfig {
    Engine engine = Engine::fpt;
    /// Max vertices (boundary included) of an enumerated gadget graph.
    int gadget_cap = 6;
    /// Max glued gadget instances explored per branching-set call.
    long gadget_work_limit = 50;
    /// Branch sets wider than this route the sub-instance to the exact
    /// bounded subset search instead of branching.
    std::size_t branch_width_limit = 10;
    /// Instances whose bad region (after deleting clean components) exceeds
    /// this many vertices are routed to the exact bounded search directly;
    /// the branching machinery's constants grow too fast beyond it.
    std::size_t direct_search_size_limit = 25;
    int threads = 1;
    /// Vertex limit for the standalone oracle engine.
    std::size_t oracle_limit = kOracleVertexLimit;
};

struct SolveStats {
    long branch_nodes = 0;
    long separator_enumerations = 0;
    long fallbacks = 0;
    long gadget_instances = 0;
    double wall_ms = 0.0;

    void merge(const SolveStats& o) {
        branch_nodes += o.branch_nodes;
        separator_enumerations += o.separator_enumerations;
        fallbacks += o.fallbacks;
        gadget_instances += o.gadget_instances;
    }
};

struct SolveResult {
    bool answer = false;
    std::optional<VertexSet> witness;
    SolveStats stats;
};

struct ScatteredInstance {
    Graph g;
    int k = 0;
    ClassFamily classes;
};

/// Disjoint-compression instance: find Z ⊆ V ∖ (w ∪ u), |Z| ≤ k, whose
/// deletion scatters the graph. w must already be a modulator.
struct CompressionInstance {
    Graph g;
    int k = 0;
    VertexSet w;
    VertexSet u;
    ClassFamily classes;

    void validate() const {
        if (k < 0) throw GraphError("compression instance: negative budget");
        for (Vertex v : vset::unite(w, u))
            if (!g.has_vertex(v)) throw GraphError("compression instance: unknown vertex");
        if (!is_scattered_modulator(g, w, classes))
            throw GraphError("compression instance: w is not a modulator");
    }
};

struct SeparationContext {
    VertexSet w1;
    VertexSet w2;
};

struct BranchTuple {
    int lambda = 1;  // separator size, 1..k
    int ell = 0;     // residual budget on the w1 side, 0..k-1
};

namespace detail {

/// Vertices of components that belong to no class — the only place a
/// minimal solution needs to touch.
inline VertexSet bad_component_vertices(const Graph& g, const ClassFamily& classes) {
    VertexSet bad;
    for (const auto& comp : connected_components(g))
        if (!set_in_some_class(g, comp, classes)) bad = vset::unite(bad, comp);
    return bad;
}

/// Exact bounded search: smallest Z scattering g with Z ∩ excluded = ∅ and
/// |Z| ≤ k. Bad components are independent, so the optimum is the sum of
/// per-component minima; per component the work is C(|component|, k).
inline std::optional<VertexSet> exact_bounded_search(const Graph& g, const ClassFamily& classes,
                                                     int k, const VertexSet& excluded) {
    if (k < 0) return std::nullopt;
    VertexSet total;
    for (const auto& comp : connected_components(g)) {
        if (set_in_some_class(g, comp, classes)) continue;
        Graph cg = induced_subgraph(g, comp);
        VertexSet pool = vset::subtract(comp, excluded);
        int left = k - static_cast<int>(total.size());
        std::optional<VertexSet> found;
        for (std::size_t r = 1; r <= static_cast<std::size_t>(std::max(left, 0)) && !found; ++r)
            for_each_subset(pool, r, [&](const VertexSet& z) {
                if (is_scattered_modulator(cg, z, classes)) {
                    found = z;
                    return true;
                }
                return false;
            });
        if (!found) return std::nullopt;
        total = vset::unite(total, *found);
    }
    return total;
}

}  // namespace detail

/// Delete every component that already belongs to some class. Safe and
/// idempotent; w and u are trimmed alongside the graph.
inline CompressionInstance reduction_rule_1(const CompressionInstance& ci) {
    VertexSet keep = detail::bad_component_vertices(ci.g, ci.classes);
    CompressionInstance out;
    out.g = induced_subgraph(ci.g, keep);
    out.k = ci.k;
    out.w = vset::intersect(ci.w, keep);
    out.u = vset::intersect(ci.u, keep);
    out.classes = ci.classes;
    return out;
}

/// Solver for instances whose sought solution leaves w inside one component.
/// Branches on the vertices of a minimal forbidden set and, for each of its
/// vertices, on every important {v}-w separator avoiding u. Sound always;
/// complete whenever a non-separating solution exists.
inline std::optional<VertexSet> solve_non_separating(const CompressionInstance& ci,
                                                     SolveStats& stats) {
    CompressionInstance cur = reduction_rule_1(ci);
    auto forb = find_forbidden_set(cur.g, cur.classes);
    if (!forb) return VertexSet{};
    if (cur.k == 0) return std::nullopt;
    ++stats.branch_nodes;

    for (Vertex v : vset::subtract(forb->vertices, vset::unite(cur.w, cur.u))) {
        CompressionInstance next = cur;
        next.g = remove_vertices(cur.g, {v});
        next.k = cur.k - 1;
        vset::erase(next.w, v);
        auto sub = solve_non_separating(next, stats);
        if (sub) return vset::unite({v}, *sub);
    }
    if (cur.w.empty()) return std::nullopt;
    for (Vertex v : forb->vertices) {
        if (vset::contains(cur.w, v)) continue;
        SeparatorQuery q{cur.g, {v}, cur.w, std::min(cur.k, kMaxSeparatorBudget), cur.u};
        ++stats.separator_enumerations;
        for (const auto& sep : enumerate_important_separators(q)) {
            if (sep.empty()) continue;
            CompressionInstance next = cur;
            next.g = remove_vertices(cur.g, sep);
            next.k = cur.k - static_cast<int>(sep.size());
            auto sub = solve_non_separating(next, stats);
            if (sub) return vset::unite(sep, *sub);
        }
    }
    return std::nullopt;
}

namespace detail {
inline std::optional<VertexSet> solve_disjoint_core(const Graph& g, int k,
                                                    const ClassFamily& classes, const VertexSet& w,
                                                    const VertexSet& u, const SolverConfig& cfg,
                                                    SolveStats& stats);
}

/// Is p, a w1-w2 separator avoiding u, extendable by at most ell deletable
/// vertices to a modulator of the w1 side? Decided by a recursive
/// disjoint-compression solve with the strictly smaller budget ell.
inline bool is_good_separator(const Graph& g, const ClassFamily& classes, const VertexSet& w1,
                              const VertexSet& u, const VertexSet& p, int ell,
                              const SolverConfig& cfg, SolveStats& stats) {
    if (!vset::disjoint(p, u)) return false;
    VertexSet side = reach(g, w1, p);
    Graph gs = induced_subgraph(g, side);
    return detail::solve_disjoint_core(gs, ell, classes, w1, vset::intersect(u, side), cfg, stats)
        .has_value();
}

/// Outcome of splitting a tight sequence into a good prefix and a bad
/// suffix. last_good / first_bad are indices into the sequence, or -1.
struct SequencePartition {
    int last_good = -1;
    int first_bad = -1;
    bool all_good() const { return first_bad < 0 && last_good >= 0; }
    bool all_bad() const { return last_good < 0 && first_bad >= 0; }
    bool mixed() const { return last_good >= 0 && first_bad >= 0; }
};

/// Binary search for the good/bad boundary; valid because goodness is
/// monotone along the sequence (closer to w1 stays good).
inline SequencePartition partition_tight_sequence(const Graph& g, const ClassFamily& classes,
                                                  const VertexSet& w1, const VertexSet& u,
                                                  const std::vector<VertexSet>& seq, int ell,
                                                  const SolverConfig& cfg, SolveStats& stats) {
    if (seq.empty()) throw GraphError("partition_tight_sequence: empty sequence");
    std::map<int, bool> memo;
    auto good = [&](int i) {
        auto it = memo.find(i);
        if (it != memo.end()) return it->second;
        bool r = is_good_separator(g, classes, w1, u, seq[i], ell, cfg, stats);
        memo[i] = r;
        return r;
    };
    int n = static_cast<int>(seq.size());
    if (!good(0)) return {-1, 0};
    if (good(n - 1)) return {n - 1, -1};
    // invariant: good(lo), !good(hi)
    int lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        (good(mid) ? lo : hi) = mid;
    }
    return {lo, hi};
}

struct BranchingSetResult {
    bool valid = false;
    /// The enumeration was truncated by the gadget cap; the returned set
    /// still carries the intersection guarantee via the completion region
    /// but may be wide.
    bool capped = false;
    VertexSet set;
};

/// A set R intersecting every solution (avoiding u) that contains an
/// (ell,u)-important w1-w2 separator of size <= lambda. For lambda = 1,
/// R = P1 ∪ P2 is exact. For larger lambda the paper's full gadget
/// enumeration is replaced by a cap-bounded one; the guarantee is kept by
/// also adding the completion region P1 ∪ P2 ∪ (R(w1,P2) ∖ (w1 ∪ u)):
/// any qualifying separator disjoint from P1 ∪ P2 either meets R(w1,P2)
/// or would cover P2, which contradicts P2 being bad.
inline BranchingSetResult branching_set(const Graph& g, int k, const ClassFamily& classes,
                                        const VertexSet& w1, const VertexSet& w2,
                                        const VertexSet& u, const BranchTuple& bt,
                                        const SolverConfig& cfg, SolveStats& stats,
                                        int depth = 0) {
    BranchingSetResult res;
    if (bt.lambda < 1 || bt.lambda > k || bt.ell < 0 || bt.ell >= k) return res;
    if (depth > 2 * kMaxSeparatorBudget) return res;  // hard safety stop

    SeparatorQuery q{g, w1, w2, std::min(bt.lambda, kMaxSeparatorBudget), u};
    ++stats.separator_enumerations;
    auto seq = tight_separator_sequence(q);
    if (seq.empty()) return res;  // no separator of size <= lambda: tuple invalid

    auto part = partition_tight_sequence(g, classes, w1, u, seq, bt.ell, cfg, stats);
    if (!part.mixed()) {
        // All-good / all-bad: the tuple carries no exact branch set; fall
        // back to the completion region around the outermost separator.
        const VertexSet& edge_sep = seq[part.all_good() ? seq.size() - 1 : 0];
        res.valid = true;
        res.capped = true;
        res.set = vset::unite(edge_sep,
                              vset::subtract(reach(g, w1, edge_sep), vset::unite(w1, u)));
        return res;
    }
    const VertexSet& p1 = seq[part.last_good];
    const VertexSet& p2 = seq[part.first_bad];
    res.valid = true;
    res.set = vset::unite(p1, p2);
    if (bt.lambda == 1) return res;  // exact: size-1 separators are never incomparable

    // Cap-bounded gadget enumeration: glue small boundaried graphs onto
    // subsets of P1/P2 and recurse with smaller lambda. These calls refine
    // the branch set on tiny instances; the completion region below is what
    // preserves the guarantee once the cap truncates the enumeration.
    long budget = cfg.gadget_work_limit;
    for (const VertexSet* pi : {&p1, &p2}) {
        VertexSet side = reach_closed(g, w1, *pi);
        Graph g1 = induced_subgraph(g, side);
        std::vector<Vertex> all(pi->begin(), pi->end());
        for (std::uint32_t mask = 1; mask < (1u << all.size()) && budget > 0; ++mask) {
            VertexSet pir;
            for (std::size_t i = 0; i < all.size(); ++i)
                if (mask & (1u << i)) vset::insert(pir, all[i]);
            VertexSet pinr = vset::subtract(*pi, pir);
            if (pinr.empty()) continue;  // recursive instance needs a far side
            int t = static_cast<int>(pir.size());
            int max_internal = cfg.gadget_cap - t;
            if (max_internal < 0) continue;
            BoundariedGraph host(g1, std::vector<Vertex>(pir.begin(), pir.end()));

            for (int qn = 0; qn <= max_internal && budget > 0; ++qn) {
                // Gadget = copy of G[pir] on the boundary plus qn fresh
                // internal vertices with every possible edge pattern.
                Vertex base = g.max_vertex_id() + 1;
                std::vector<std::pair<Vertex, Vertex>> slots;
                for (int a = 0; a < qn; ++a) {
                    for (int b = a + 1; b < qn; ++b) slots.push_back({base + a, base + b});
                    for (Vertex bv : pir) slots.push_back({base + a, bv});
                }
                std::uint64_t patterns = slots.size() >= 63 ? 0 : (1ull << slots.size());
                for (std::uint64_t em = 0; em < patterns && budget > 0; ++em) {
                    Graph gad = induced_subgraph(g, pir);
                    for (int a = 0; a < qn; ++a) gad.add_vertex(base + a);
                    for (std::size_t s = 0; s < slots.size(); ++s)
                        if (em & (1ull << s)) gad.add_edge(slots[s].first, slots[s].second);
                    VertexSet internals;
                    for (int a = 0; a < qn; ++a) vset::insert(internals, base + a);
                    BoundariedGraph gadget(gad, host.boundary, {});
                    GlueResult glued = glue(host, gadget, host.boundary);
                    ++stats.gadget_instances;
                    --budget;
                    VertexSet internal_imgs;
                    for (Vertex iv : internals) vset::insert(internal_imgs, glued.g2_map.at(iv));
                    VertexSet u2 = vset::unite(vset::intersect(u, glued.graph.vertices()),
                                               internal_imgs);
                    for (int lam2 = 1; lam2 < bt.lambda; ++lam2)
                        for (int j = 1; j <= k - 1; ++j)
                            for (int ell2 = 0; ell2 <= bt.ell; ++ell2) {
                                if (lam2 > k - j || ell2 >= k - j) continue;
                                auto sub = branching_set(glued.graph, k - j, classes, w1, pinr,
                                                         u2, {lam2, ell2}, cfg, stats, depth + 1);
                                if (sub.valid)
                                    res.set = vset::unite(
                                        res.set, vset::intersect(sub.set, g.vertices()));
                            }
                }
            }
        }
    }
    res.capped = true;  // the paper's full enumeration always exceeds the cap
    res.set = vset::unite(res.set, vset::subtract(reach(g, w1, p2), vset::unite(w1, u)));
    return res;
}

namespace detail {

/// Main-Algorithm: exists Z ⊆ V ∖ (w1 ∪ w2 ∪ u), |Z| ≤ k, scattering g?
/// RR1, then the non-separating solver, then RR2 when the sides are already
/// apart, then tight-sequence branching per (lambda, ell) tuple. Wide capped
/// branch sets route the sub-instance to the exact bounded search.
inline std::optional<VertexSet> main_algorithm(const Graph& g_in, int k,
                                               const ClassFamily& classes, const VertexSet& w1_in,
                                               const VertexSet& w2_in, const VertexSet& u_in,
                                               const SolverConfig& cfg, SolveStats& stats) {
    ++stats.branch_nodes;
    CompressionInstance ci{g_in, k, vset::unite(w1_in, w2_in), u_in, classes};
    CompressionInstance cur = reduction_rule_1(ci);
    if (cur.g.num_vertices() == 0) return VertexSet{};
    if (cur.g.num_vertices() > cfg.direct_search_size_limit) {
        ++stats.fallbacks;
        return exact_bounded_search(cur.g, classes, cur.k, vset::unite(cur.w, cur.u));
    }

    auto ns = solve_non_separating(cur, stats);
    if (ns) return ns;
    if (cur.k == 0) return std::nullopt;

    VertexSet w1 = vset::intersect(w1_in, cur.g.vertices());
    VertexSet w2 = vset::intersect(w2_in, cur.g.vertices());
    const VertexSet& u = cur.u;
    if (w1.empty() || w2.empty())
        return solve_disjoint_core(cur.g, cur.k, classes, vset::unite(w1, w2), u, cfg, stats);

    if (vset::disjoint(reach(cur.g, w1, {}), w2)) {
        // RR2: the sides are disconnected; resolve the w1 side with a
        // minimal-budget non-separating solution, then recurse on the rest.
        VertexSet left = reach(cur.g, w1, {});
        CompressionInstance li{induced_subgraph(cur.g, left), 0, w1, vset::intersect(u, left),
                               classes};
        std::optional<VertexSet> zl;
        for (int kp = 0; kp <= cur.k && !zl; ++kp) {
            li.k = kp;
            zl = solve_non_separating(li, stats);
        }
        if (!zl) return std::nullopt;
        Graph rest = remove_vertices(cur.g, *zl);
        auto zr = solve_disjoint_core(rest, cur.k - static_cast<int>(zl->size()), classes, w2,
                                      vset::intersect(u, rest.vertices()), cfg, stats);
        if (!zr) return std::nullopt;
        return vset::unite(*zl, *zr);
    }

    // One branch set per node: the union over all (lambda, ell) tuples, so a
    // failed branch is never retried under a different tuple.
    VertexSet excluded = vset::unite(vset::unite(w1, w2), u);
    VertexSet pool;
    bool any_valid = false;
    for (int lambda = 1; lambda <= std::min(cur.k, kMaxSeparatorBudget); ++lambda)
        for (int ell = 0; ell < cur.k; ++ell) {
            auto bs = branching_set(cur.g, cur.k, classes, w1, w2, u, {lambda, ell}, cfg, stats);
            if (!bs.valid) continue;
            any_valid = true;
            VertexSet cand = vset::subtract(bs.set, excluded);
            if (bs.capped && cand.size() > cfg.branch_width_limit) {
                ++stats.fallbacks;
                return exact_bounded_search(cur.g, classes, cur.k, excluded);
            }
            pool = vset::unite(pool, cand);
        }
    if (!any_valid) return std::nullopt;
    for (Vertex v : pool) {
        auto sub = main_algorithm(remove_vertices(cur.g, {v}), cur.k - 1, classes, w1, w2, u, cfg,
                                  stats);
        if (sub) return vset::unite({v}, *sub);
    }
    return std::nullopt;
}

inline std::optional<VertexSet> solve_disjoint_core(const Graph& g, int k,
                                                    const ClassFamily& classes, const VertexSet& w,
                                                    const VertexSet& u, const SolverConfig& cfg,
                                                    SolveStats& stats) {
    if (k < 0) return std::nullopt;
    CompressionInstance ci{g, k, w, u, classes};
    CompressionInstance red = reduction_rule_1(ci);
    if (red.g.num_vertices() > cfg.direct_search_size_limit) {
        ++stats.fallbacks;
        return exact_bounded_search(red.g, classes, red.k, vset::unite(red.w, red.u));
    }
    auto ns = solve_non_separating(ci, stats);
    if (ns) return ns;
    // Separating solutions: guess the part of w sharing a component with its
    // least vertex; fixing that vertex into w1 halves the splits.
    std::vector<Vertex> wv(w.begin(), w.end());
    for (std::uint32_t mask = 1; mask + 1 < (1u << wv.size()); mask += 2) {
        VertexSet w1;
        for (std::size_t i = 0; i < wv.size(); ++i)
            if (mask & (1u << i)) vset::insert(w1, wv[i]);
        auto z = main_algorithm(g, k, classes, w1, vset::subtract(w, w1), u, cfg, stats);
        if (z) return z;
    }
    return std::nullopt;
}

}  // namespace detail

/// Disjoint-compression entry point: verifies the instance, then solves.
inline SolveResult solve_disjoint(const CompressionInstance& ci, const SolverConfig& cfg = {}) {
    ci.validate();
    SolveResult res;
    auto t0 = std::chrono::steady_clock::now();
    auto z = detail::solve_disjoint_core(ci.g, ci.k, ci.classes, ci.w, ci.u, cfg, res.stats);
    res.answer = z.has_value();
    res.witness = z;
    if (res.answer &&
        (!is_scattered_modulator(ci.g, *res.witness, ci.classes) ||
         res.witness->size() > static_cast<std::size_t>(ci.k) ||
         !vset::disjoint(*res.witness, vset::unite(ci.w, ci.u))))
        throw std::logic_error("solver invariant violated: bad disjoint witness");
    res.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

namespace detail {

/// One compression step: w (old solution plus the new vertex) is a modulator
/// of size <= k+1; branch over the part of w deleted outright.
inline std::optional<VertexSet> compress(const Graph& g, int k, const ClassFamily& classes,
                                         const VertexSet& w, const SolverConfig& cfg,
                                         SolveStats& stats) {
    std::vector<Vertex> wv(w.begin(), w.end());
    std::uint32_t total = 1u << wv.size();

    auto eval = [&](std::uint32_t mask, SolveStats& st) -> std::optional<VertexSet> {
        VertexSet deleted;
        for (std::size_t i = 0; i < wv.size(); ++i)
            if (mask & (1u << i)) vset::insert(deleted, wv[i]);
        if (deleted.size() > static_cast<std::size_t>(k)) return std::nullopt;
        Graph rest = remove_vertices(g, deleted);
        auto z = solve_disjoint_core(rest, k - static_cast<int>(deleted.size()), classes,
                                     vset::subtract(w, deleted), {}, cfg, st);
        if (!z) return std::nullopt;
        return vset::unite(deleted, *z);
    };

    if (cfg.threads <= 1) {
        for (std::uint32_t mask = 0; mask < total; ++mask) {
            auto r = eval(mask, stats);
            if (r) return r;
        }
        return std::nullopt;
    }
    // Parallel evaluation; the answer is the first successful mask in
    // enumeration order, so results are independent of the thread count.
    std::optional<VertexSet> best;
    std::vector<std::future<std::pair<std::optional<VertexSet>, SolveStats>>> futs;
    for (std::uint32_t start = 0; start < total && !best; start += cfg.threads) {
        futs.clear();
        for (std::uint32_t m = start; m < std::min<std::uint32_t>(start + cfg.threads, total); ++m)
            futs.push_back(std::async(std::launch::async, [&, m] {
                SolveStats st;
                auto r = eval(m, st);
                return std::make_pair(r, st);
            }));
        for (auto& f : futs) {
            auto [r, st] = f.get();
            stats.merge(st);
            if (r && !best) best = r;
        }
    }
    return best;
}

}  // namespace detail

/// Full solver. fpt = iterative compression over vertices in id order;
/// oracle = exhaustive reference; auto = oracle when the graph is within
/// the oracle's size limit, fpt otherwise.
inline SolveResult solve(const ScatteredInstance& inst, const SolverConfig& cfg = {}) {
    if (inst.k < 0) throw GraphError("solve: negative budget");
    SolveResult res;
    auto t0 = std::chrono::steady_clock::now();
    auto finish = [&](bool ans, std::optional<VertexSet> z) -> SolveResult& {
        res.answer = ans;
        res.witness = std::move(z);
        if (res.answer && (!is_scattered_modulator(inst.g, *res.witness, inst.classes) ||
                           res.witness->size() > static_cast<std::size_t>(inst.k)))
            throw std::logic_error("solver invariant violated: bad witness");
        res.stats.wall_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        return res;
    };

    Engine engine = cfg.engine;
    if (engine == Engine::auto_select)
        engine = inst.g.num_vertices() <= cfg.oracle_limit ? Engine::oracle : Engine::fpt;
    if (engine == Engine::oracle) {
        auto z = oracle_solve(inst.g, inst.classes, inst.k);
        return finish(z.has_value(), z);
    }

    if (static_cast<std::size_t>(inst.k) >= inst.g.num_vertices())
        return finish(true, inst.g.vertices());
    if (inst.k > kMaxSeparatorBudget)
        throw GraphError("solve: budget exceeds cap of " + std::to_string(kMaxSeparatorBudget));

    // Iterative compression, vertices in ascending id order.
    VertexSet prefix, sol;
    for (Vertex v : inst.g.vertices()) {
        vset::insert(prefix, v);
        Graph gi = induced_subgraph(inst.g, prefix);
        if (is_scattered_modulator(gi, sol, inst.classes)) continue;
        VertexSet w = vset::unite(sol, {v});
        auto z = detail::compress(gi, inst.k, inst.classes, w, cfg, res.stats);
        if (!z) return finish(false, std::nullopt);
        sol = *z;
    }
    return finish(true, sol);
}

/// Resolve the w1 side of an instance whose w1 and w2 are disconnected
/// (Reduction Rule 2): delete a minimal-budget non-separating solution of
/// the w1-side graph and return the reduced instance.
inline CompressionInstance reduction_rule_2(const CompressionInstance& ci,
                                            const SeparationContext& ctx, SolveStats& stats) {
    if (ctx.w1.empty() || ctx.w2.empty())
        throw GraphError("reduction_rule_2: both sides must be nonempty");
    if (!vset::disjoint(reach(ci.g, ctx.w1, {}), ctx.w2))
        throw GraphError("reduction_rule_2: w1 and w2 are connected");
    VertexSet left = reach(ci.g, ctx.w1, {});
    CompressionInstance li{induced_subgraph(ci.g, left), 0, ctx.w1,
                           vset::intersect(ci.u, left), ci.classes};
    std::optional<VertexSet> zl;
    for (int kp = 0; kp <= ci.k && !zl; ++kp) {
        li.k = kp;
        zl = solve_non_separating(li, stats);
    }
    if (!zl) throw GraphError("reduction_rule_2: w1 side needs more than k deletions");
    CompressionInstance out;
    out.g = remove_vertices(ci.g, *zl);
    out.k = ci.k - static_cast<int>(zl->size());
    out.w = vset::intersect(ctx.w2, out.g.vertices());
    out.u = vset::intersect(ci.u, out.g.vertices());
    out.classes = ci.classes;
    return out;
}

}  // namespace scatter
