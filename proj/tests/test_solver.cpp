#include <catch_amalgamated.hpp>

#include <random>

#include "scatter/oracle.hpp"
#include "scatter/solver.hpp"

using namespace scatter;

namespace {

// vertices 1..4: triangle 1,2,3 plus pendant 4 on 3
Graph paw() {
    Graph g;
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(1, 3);
    g.add_edge(3, 4);
    return g;
}

Graph path_on(int n) {
    Graph g;
    g.add_vertex(1);
    for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
    return g;
}

ClassFamily make_classes(std::initializer_list<const char*> names) {
    ClassFamily c;
    for (const char* n : names) c.families.push_back(builtin_family(n));
    return c;
}

Graph random_graph(std::mt19937& rng, int n, double p) {
    Graph g;
    for (int v = 1; v <= n; ++v) g.add_vertex(v);
    std::uniform_real_distribution<double> coin(0, 1);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (coin(rng) < p) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("solve: frozen small instances") {
    ClassFamily cb = make_classes({"clique", "biclique"});
    auto yes = solve({paw(), 1, cb});
    REQUIRE(yes.answer);
    REQUIRE(yes.witness);
    REQUIRE(yes.witness->size() <= 1);
    REQUIRE(is_scattered_modulator(paw(), *yes.witness, cb));

    REQUIRE_FALSE(solve({paw(), 0, cb}).answer);

    Graph c4;
    c4.add_edge(1, 2);
    c4.add_edge(2, 3);
    c4.add_edge(3, 4);
    c4.add_edge(1, 4);
    REQUIRE(solve({c4, 0, cb}).answer);

    REQUIRE(solve({Graph{}, 0, cb}).answer);
    REQUIRE_THROWS_AS(solve({paw(), -1, cb}), GraphError);
    std::mt19937 rng(1);
    REQUIRE_THROWS_AS(solve({random_graph(rng, 30, 0.3), kMaxSeparatorBudget + 1, cb}),
                      GraphError);
}

TEST_CASE("solve_non_separating: frozen examples") {
    ClassFamily cb = make_classes({"clique", "biclique"});
    SolveStats stats;
    CompressionInstance ci{paw(), 1, {3, 4}, {}, cb};
    auto z = solve_non_separating(ci, stats);
    REQUIRE(z == VertexSet{1});

    ci.k = 0;
    REQUIRE_FALSE(solve_non_separating(ci, stats).has_value());

    // empty after RR1
    Graph tri;
    tri.add_edge(1, 2);
    tri.add_edge(2, 3);
    tri.add_edge(1, 3);
    CompressionInstance clean{tri, 0, {}, {}, make_classes({"clique"})};
    REQUIRE(solve_non_separating(clean, stats) == VertexSet{});
}

TEST_CASE("reduction_rule_1") {
    ClassFamily cb = make_classes({"clique", "biclique"});
    Graph g = paw();
    g.add_edge(11, 12);
    g.add_edge(12, 13);
    g.add_edge(11, 13);  // clean triangle component
    CompressionInstance ci{g, 1, {3, 11}, {12}, cb};
    auto red = reduction_rule_1(ci);
    REQUIRE(red.g.vertices() == VertexSet{1, 2, 3, 4});
    REQUIRE(red.w == VertexSet{3});
    REQUIRE(red.u.empty());
    REQUIRE(red.k == 1);
    // idempotent
    auto red2 = reduction_rule_1(red);
    REQUIRE(red2.g == red.g);

    // all components good -> empty graph
    Graph tri;
    tri.add_edge(1, 2);
    tri.add_edge(2, 3);
    tri.add_edge(1, 3);
    REQUIRE(reduction_rule_1({tri, 0, {}, {}, cb}).g.num_vertices() == 0);
    // no good component -> unchanged
    REQUIRE(reduction_rule_1({paw(), 0, {}, {}, cb}).g == paw());
}

TEST_CASE("reduction_rule_1 preserves oracle answers") {
    std::mt19937 rng(71);
    ClassFamily cb = make_classes({"clique", "biclique"});
    for (int t = 0; t < 200; ++t) {
        Graph g = random_graph(rng, 9, std::uniform_real_distribution<double>(0.1, 0.55)(rng));
        int k = std::uniform_int_distribution<int>(0, 3)(rng);
        auto red = reduction_rule_1({g, k, {}, {}, cb});
        auto before = oracle_solve(g, cb, k);
        auto after = oracle_solve(red.g, cb, red.k);
        REQUIRE(before.has_value() == after.has_value());
        if (after) REQUIRE(is_scattered_modulator(g, *after, cb));
    }
}

TEST_CASE("reduction_rule_2") {
    ClassFamily cb = make_classes({"clique", "biclique"});
    // left component: paw on 1..4 (w1 = {3}); right: paw on 11..14 (w2 = {13})
    Graph g = paw();
    g.add_edge(11, 12);
    g.add_edge(12, 13);
    g.add_edge(11, 13);
    g.add_edge(13, 14);
    SolveStats stats;
    CompressionInstance ci{g, 2, {3, 13}, {}, cb};
    auto red = reduction_rule_2(ci, {{3}, {13}}, stats);
    // left side resolved with one deletion avoiding w1 = {3}
    REQUIRE(red.k == 1);
    REQUIRE(red.w == VertexSet{13});
    REQUIRE(vset::is_subset(VertexSet{11, 12, 13, 14}, red.g.vertices()));
    REQUIRE(vset::contains(red.g.vertices(), 3));

    REQUIRE_THROWS_AS(reduction_rule_2(ci, {{3}, {4}}, stats), GraphError);  // connected sides
    REQUIRE_THROWS_AS(reduction_rule_2(ci, {{}, {13}}, stats), GraphError);
}

TEST_CASE("reduction_rule_2 preserves oracle answers") {
    std::mt19937 rng(73);
    ClassFamily cb = make_classes({"clique", "biclique"});
    int checked = 0;
    for (int t = 0; t < 400 && checked < 200; ++t) {
        Graph left = random_graph(rng, 6, 0.4);
        Graph g = left;
        for (int v = 7; v <= 12; ++v) g.add_vertex(v);
        std::uniform_real_distribution<double> coin(0, 1);
        for (int a = 7; a <= 12; ++a)
            for (int b = a + 1; b <= 12; ++b)
                if (coin(rng) < 0.4) g.add_edge(a, b);
        int k = std::uniform_int_distribution<int>(1, 3)(rng);
        // w must be a modulator with one vertex per side
        auto zl = oracle_solve(induced_subgraph(g, {1, 2, 3, 4, 5, 6}), cb, k);
        auto zr = oracle_solve(induced_subgraph(g, {7, 8, 9, 10, 11, 12}), cb, k);
        if (!zl || !zr || zl->size() != 1 || zr->empty()) continue;
        VertexSet w = vset::unite(*zl, *zr);
        CompressionInstance ci{g, k, w, {}, cb};
        if (!is_scattered_modulator(g, w, cb)) continue;
        SolveStats stats;
        CompressionInstance red;
        try {
            red = reduction_rule_2(ci, {*zl, *zr}, stats);
        } catch (const GraphError&) {
            // left side has no solution avoiding w1 within budget; the
            // original disjoint instance must then be a no as well
            REQUIRE_FALSE(oracle_solve(g, cb, k, w).has_value());
            ++checked;
            continue;
        }
        ++checked;
        auto before = oracle_solve(g, cb, k, w);
        auto after = oracle_solve(red.g, cb, red.k, red.w);
        REQUIRE(before.has_value() == after.has_value());
    }
    REQUIRE(checked >= 100);
}

TEST_CASE("is_good_separator: frozen examples") {
    ClassFamily clique = make_classes({"clique"});
    // path w1-v1-v2-w2 as 1-2-3-4
    Graph p4 = path_on(4);
    SolverConfig cfg;
    SolveStats stats;
    REQUIRE(is_good_separator(p4, clique, {1}, {}, {3}, 0, cfg, stats));
    REQUIRE(is_good_separator(p4, clique, {1}, {}, {2}, 0, cfg, stats));
    // a paw on the w1 side of the separator: needs one deletion
    Graph g = paw();
    g.add_edge(4, 5);
    g.add_edge(5, 6);  // w2 side
    REQUIRE_FALSE(is_good_separator(g, clique, {1}, {}, {5}, 0, cfg, stats));
    REQUIRE(is_good_separator(g, clique, {1}, {}, {5}, 1, cfg, stats));
    REQUIRE_FALSE(is_good_separator(g, clique, {1}, {3, 4}, {5}, 1, cfg, stats));
}

TEST_CASE("partition_tight_sequence matches a linear scan") {
    std::mt19937 rng(79);
    ClassFamily cb = make_classes({"clique", "biclique"});
    SolverConfig cfg;
    int seen_mixed = 0;
    for (int t = 0; t < 150; ++t) {
        Graph g = random_graph(rng, 9, std::uniform_real_distribution<double>(0.2, 0.5)(rng));
        Vertex a = std::uniform_int_distribution<int>(1, 9)(rng);
        Vertex b = std::uniform_int_distribution<int>(1, 9)(rng);
        if (a == b || g.has_edge(a, b)) continue;
        int k = std::uniform_int_distribution<int>(1, 3)(rng);
        int ell = std::uniform_int_distribution<int>(0, 2)(rng);
        auto seq = tight_separator_sequence({g, {a}, {b}, k, {}});
        if (seq.empty()) continue;
        SolveStats stats;
        auto part = partition_tight_sequence(g, cb, {a}, {}, seq, ell, cfg, stats);
        std::vector<bool> good(seq.size());
        for (std::size_t i = 0; i < seq.size(); ++i) {
            SolveStats st;
            good[i] = is_good_separator(g, cb, {a}, {}, seq[i], ell, cfg, st);
        }
        // goodness is monotone: once bad, stays bad
        for (std::size_t i = 1; i < seq.size(); ++i)
            if (!good[i - 1]) REQUIRE_FALSE(good[i]);
        int last_good = -1, first_bad = -1;
        for (std::size_t i = 0; i < seq.size(); ++i)
            if (good[i])
                last_good = static_cast<int>(i);
            else if (first_bad < 0)
                first_bad = static_cast<int>(i);
        REQUIRE(part.last_good == last_good);
        REQUIRE(part.first_bad == first_bad);
        if (part.mixed()) ++seen_mixed;
    }
    (void)seen_mixed;
}

TEST_CASE("branching_set basics") {
    ClassFamily clique = make_classes({"clique"});
    SolverConfig cfg;
    SolveStats stats;
    // out-of-range tuples are invalid
    Graph p5 = path_on(5);
    REQUIRE_FALSE(branching_set(p5, 2, clique, {1}, {5}, {}, {0, 0}, cfg, stats).valid);
    REQUIRE_FALSE(branching_set(p5, 2, clique, {1}, {5}, {}, {3, 0}, cfg, stats).valid);
    REQUIRE_FALSE(branching_set(p5, 2, clique, {1}, {5}, {}, {1, 2}, cfg, stats).valid);
    // adjacent w1/w2: no separator, tuple invalid
    REQUIRE_FALSE(branching_set(path_on(2), 2, clique, {1}, {2}, {}, {1, 0}, cfg, stats).valid);

    // lambda = 1 mixed case is exact: P1 ∪ P2. On the path 1..7 with ell = 0,
    // {3} is the last good separator (w1 side is a clique) and {4} the first
    // bad one (w1 side is a P3).
    auto bs = branching_set(path_on(7), 2, clique, {1}, {7}, {}, {1, 0}, cfg, stats);
    REQUIRE(bs.valid);
    REQUIRE_FALSE(bs.capped);
    REQUIRE(bs.set == VertexSet{3, 4});
}

TEST_CASE("solve_disjoint agrees with the oracle") {
    std::mt19937 rng(83);
    ClassFamily cb = make_classes({"clique", "biclique"});
    int checked = 0;
    for (int t = 0; t < 400 && checked < 150; ++t) {
        Graph g = random_graph(rng, 9, std::uniform_real_distribution<double>(0.15, 0.5)(rng));
        int k = std::uniform_int_distribution<int>(1, 3)(rng);
        auto w = oracle_solve(g, cb, k + 1);
        if (!w || w->empty()) continue;
        VertexSet u;
        for (Vertex v : g.vertices())
            if (!vset::contains(*w, v) && rng() % 6 == 0) vset::insert(u, v);
        CompressionInstance ci{g, k, *w, u, cb};
        ++checked;
        auto fast = solve_disjoint(ci);
        auto slow = oracle_solve(g, cb, k, vset::unite(*w, u));
        REQUIRE(fast.answer == slow.has_value());
        if (fast.answer) {
            REQUIRE(fast.witness->size() <= static_cast<std::size_t>(k));
            REQUIRE(vset::disjoint(*fast.witness, vset::unite(*w, u)));
            REQUIRE(is_scattered_modulator(g, *fast.witness, cb));
        }
    }
    REQUIRE(checked >= 100);
}

TEST_CASE("engines agree on random instances") {
    std::mt19937 rng(89);
    ClassFamily specs[] = {make_classes({"clique", "biclique"}),
                           make_classes({"cograph", "edgeless"})};
    for (int t = 0; t < 150; ++t) {
        Graph g = random_graph(rng, 10, std::uniform_real_distribution<double>(0.1, 0.5)(rng));
        int k = std::uniform_int_distribution<int>(0, 3)(rng);
        for (const auto& cb : specs) {
            SolverConfig fpt_cfg;
            auto fast = solve({g, k, cb}, fpt_cfg);
            SolverConfig ocfg;
            ocfg.engine = Engine::oracle;
            auto slow = solve({g, k, cb}, ocfg);
            REQUIRE(fast.answer == slow.answer);
            if (fast.answer) REQUIRE(is_scattered_modulator(g, *fast.witness, cb));
        }
    }
}

TEST_CASE("auto engine picks the oracle on small graphs") {
    ClassFamily cb = make_classes({"clique", "biclique"});
    SolverConfig cfg;
    cfg.engine = Engine::auto_select;
    auto res = solve({paw(), 1, cb}, cfg);
    REQUIRE(res.answer);
    REQUIRE(res.witness == VertexSet{1});  // oracle is lexicographic-least
}

TEST_CASE("thread count does not change the result") {
    std::mt19937 rng(97);
    ClassFamily cb = make_classes({"clique", "biclique"});
    for (int t = 0; t < 30; ++t) {
        Graph g = random_graph(rng, 10, 0.35);
        int k = std::uniform_int_distribution<int>(1, 3)(rng);
        SolverConfig seq;
        SolverConfig par;
        par.threads = 3;
        auto a = solve({g, k, cb}, seq);
        auto b = solve({g, k, cb}, par);
        REQUIRE(a.answer == b.answer);
        REQUIRE(a.witness == b.witness);
    }
}

TEST_CASE("invalid compression instances are rejected") {
    ClassFamily cb = make_classes({"clique", "biclique"});
    CompressionInstance bad{paw(), 1, {1}, {}, make_classes({"clique"})};  // P3 left over
    REQUIRE_THROWS_AS(solve_disjoint(bad), GraphError);
    CompressionInstance neg{paw(), -1, {3}, {}, cb};
    REQUIRE_THROWS_AS(solve_disjoint(neg), GraphError);
}
