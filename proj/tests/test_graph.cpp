#include <catch_amalgamated.hpp>

#include <random>

#include "scatter/graph.hpp"

using namespace scatter;

namespace {

Graph path_on(std::initializer_list<Vertex> vs) {
    Graph g;
    Vertex prev = -1;
    for (Vertex v : vs) {
        g.add_vertex(v);
        if (prev >= 0) g.add_edge(prev, v);
        prev = v;
    }
    return g;
}

Graph triangle(Vertex a, Vertex b, Vertex c) {
    Graph g;
    g.add_edge(a, b);
    g.add_edge(b, c);
    g.add_edge(a, c);
    return g;
}

// vertices 1..4, edges 12,23,13,34
Graph paw() {
    Graph g = triangle(1, 2, 3);
    g.add_edge(3, 4);
    return g;
}

// x=1, a=2, b=3, y=4
Graph diamond() {
    Graph g;
    g.add_edge(1, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 4);
    g.add_edge(3, 4);
    return g;
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

TEST_CASE("graph invariants") {
    Graph g = paw();
    REQUIRE(g.num_vertices() == 4);
    REQUIRE(g.num_edges() == 4);
    for (Vertex v : g.vertices())
        for (Vertex w : g.neighbors(v)) REQUIRE(vset::contains(g.neighbors(w), v));
    REQUIRE_THROWS_AS(g.add_edge(2, 2), GraphError);
    REQUIRE_THROWS_AS(g.neighbors(99), GraphError);
}

TEST_CASE("induced_subgraph") {
    Graph k3 = triangle(1, 2, 3);
    Graph e = induced_subgraph(k3, {1, 2});
    REQUIRE(e.vertices() == VertexSet{1, 2});
    REQUIRE(e.has_edge(1, 2));

    REQUIRE(induced_subgraph(k3, {}).num_vertices() == 0);

    Graph t = induced_subgraph(paw(), {1, 2, 3});
    REQUIRE(t.num_edges() == 3);
    REQUIRE(t.has_edge(1, 2));
    REQUIRE(t.has_edge(2, 3));
    REQUIRE(t.has_edge(1, 3));

    REQUIRE_THROWS_AS(induced_subgraph(k3, {1, 9}), GraphError);
}

TEST_CASE("connected_components") {
    REQUIRE(connected_components(Graph{}).empty());

    Graph g = triangle(1, 2, 3);
    g.add_edge(4, 5);
    auto comps = connected_components(g);
    REQUIRE(comps == std::vector<VertexSet>{{1, 2, 3}, {4, 5}});

    REQUIRE(connected_components(paw()) == std::vector<VertexSet>{{1, 2, 3, 4}});
}

TEST_CASE("reach and companions") {
    // path 1-2-3-4
    Graph p = path_on({1, 2, 3, 4});
    REQUIRE(reach(p, {1}, {3}) == VertexSet{1, 2});
    REQUIRE(reach(p, {1}, {}) == VertexSet{1, 2, 3, 4});
    REQUIRE(reach_closed(p, {1}, {3}) == VertexSet{1, 2, 3});
    REQUIRE(non_reach(p, {1}, {3}) == VertexSet{4});

    REQUIRE(reach(diamond(), {1}, {2}) == VertexSet{1, 3, 4});
    REQUIRE_THROWS_AS(reach(p, {1}, {1}), GraphError);
}

TEST_CASE("is_separator") {
    Graph p = path_on({1, 2, 3});
    REQUIRE(is_separator(p, {2}, {1}, {3}));
    REQUIRE_FALSE(is_separator(p, {}, {1}, {3}));
    REQUIRE(is_separator(diamond(), {2, 3}, {1}, {4}));
    REQUIRE_THROWS_AS(is_separator(p, {1}, {1}, {3}), GraphError);
}

TEST_CASE("glue") {
    BoundariedGraph t1(triangle(1, 2, 3), {1});
    BoundariedGraph t2(triangle(1, 2, 3), {1});
    auto res = glue(t1, t2, {1});
    REQUIRE(res.graph.num_vertices() == 5);  // bowtie
    REQUIRE(res.graph.num_edges() == 6);
    REQUIRE(res.graph.degree(1) == 4);
    REQUIRE(res.g2_map.at(1) == 1);

    // t = 0: disjoint union
    BoundariedGraph a(triangle(1, 2, 3), {});
    BoundariedGraph b(path_on({1, 2}), {});
    auto du = glue(a, b, {});
    REQUIRE(du.graph.num_vertices() == 5);
    REQUIRE(connected_components(du.graph).size() == 2);

    // boundary-induced graphs must be isomorphic under mu
    BoundariedGraph with_edge(triangle(1, 2, 3), {1, 2});
    Graph non_edge;
    non_edge.add_vertex(1);
    non_edge.add_vertex(2);
    BoundariedGraph without_edge(non_edge, {1, 2});
    REQUIRE_THROWS_AS(glue(with_edge, without_edge, {1, 2}), GraphError);
}

TEST_CASE("glue recovers g1 after removing fresh vertices") {
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        Graph g1 = random_graph(rng, 6, 0.5);
        Graph g2 = random_graph(rng, 5, 0.5);
        std::vector<Vertex> b1{2, 4}, b2{1, 3};
        // align boundary-induced graphs
        if (g1.has_edge(2, 4) != g2.has_edge(1, 3)) continue;
        auto res = glue(BoundariedGraph(g1, b1), BoundariedGraph(g2, b2), b1);
        VertexSet fresh;
        for (auto [from, to] : res.g2_map)
            if (!vset::contains({1, 3}, from)) vset::insert(fresh, to);
        Graph back = remove_vertices(res.graph, fresh);
        REQUIRE(back.vertices() == g1.vertices());
        REQUIRE(back.num_edges() == g1.num_edges());
    }
}

TEST_CASE("contract_degree2_path") {
    // path with 10 internal vertices contracted to 3
    std::vector<Vertex> path;
    Graph g;
    for (int v = 1; v <= 12; ++v) path.push_back(v);
    for (int v = 1; v < 12; ++v) g.add_edge(v, v + 1);
    Graph c = contract_degree2_path(g, path, 3);
    REQUIRE(c.num_vertices() == 5);
    REQUIRE(c.has_vertex(1));
    REQUIRE(c.has_vertex(12));
    REQUIRE(connected_components(c).size() == 1);
    REQUIRE(reach(c, {1}, {}) == c.vertices());

    // cycle arc from 8 internal to 4
    Graph cyc;
    for (int v = 1; v < 10; ++v) cyc.add_edge(v, v + 1);
    cyc.add_edge(10, 1);
    std::vector<Vertex> arc{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};  // internals 2..9
    Graph c6 = contract_degree2_path(cyc, arc, 4);
    REQUIRE(c6.num_vertices() == 6);
    for (Vertex v : c6.vertices()) REQUIRE(c6.degree(v) == 2);  // still a cycle
    REQUIRE(c6.has_edge(10, 1));  // outside-arc adjacency untouched

    // path already at target length
    Graph p5 = path_on({1, 2, 3, 4, 5});
    REQUIRE_THROWS_AS(contract_degree2_path(p5, {1, 2, 3, 4, 5}, 3), GraphError);
}

TEST_CASE("enumerate_connected_sets") {
    // star K_{1,3}, center 1
    Graph star;
    star.add_edge(1, 2);
    star.add_edge(1, 3);
    star.add_edge(1, 4);
    REQUIRE(enumerate_connected_sets(star, 1, 0, 3) == std::vector<VertexSet>{{1}});

    Graph p3 = path_on({1, 2, 3});
    REQUIRE(enumerate_connected_sets(p3, 1, 1, 1) == std::vector<VertexSet>{{1, 2}});

    REQUIRE_THROWS_AS(enumerate_connected_sets(p3, 9, 1, 1), GraphError);
}

TEST_CASE("enumerate_connected_sets matches exhaustive filter and bound") {
    std::mt19937 rng(11);
    auto binom = [](int a, int b) {
        double r = 1;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r + 0.5;
    };
    for (int t = 0; t < 100; ++t) {
        Graph g = random_graph(rng, 8, std::uniform_real_distribution<double>(0.1, 0.7)(rng));
        Vertex v = std::uniform_int_distribution<int>(1, 8)(rng);
        int b = std::uniform_int_distribution<int>(0, 4)(rng);
        int f = std::uniform_int_distribution<int>(0, 4)(rng);
        auto got = enumerate_connected_sets(g, v, b, f);
        REQUIRE(static_cast<double>(got.size()) <= binom(b + f, b));

        // exhaustive filter over all (b+1)-subsets containing v
        std::vector<VertexSet> want;
        VertexSet all = g.vertices();
        std::vector<int> idx(all.size(), 0);
        std::function<void(std::size_t, VertexSet)> rec = [&](std::size_t i, VertexSet cur) {
            if (cur.size() == static_cast<std::size_t>(b) + 1) {
                if (!vset::contains(cur, v)) return;
                if (!is_connected(induced_subgraph(g, cur))) return;
                VertexSet nb;
                for (Vertex u : cur)
                    for (Vertex w : g.neighbors(u))
                        if (!vset::contains(cur, w)) vset::insert(nb, w);
                if (nb.size() == static_cast<std::size_t>(f)) want.push_back(cur);
                return;
            }
            if (i == all.size()) return;
            rec(i + 1, cur);
            vset::insert(cur, all[i]);
            rec(i + 1, cur);
        };
        rec(0, {});
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        REQUIRE(got == want);
    }
}

TEST_CASE("reach properties on random graphs") {
    std::mt19937 rng(3);
    for (int t = 0; t < 100; ++t) {
        Graph g = random_graph(rng, 9, 0.4);
        Vertex x = std::uniform_int_distribution<int>(1, 9)(rng);
        VertexSet s;
        for (int v = 1; v <= 9; ++v)
            if (v != x && rng() % 3 == 0) vset::insert(s, v);
        VertexSet r = reach(g, {x}, s);
        REQUIRE(vset::disjoint(r, s));
        for (Vertex v : r)
            for (Vertex w : g.neighbors(v))
                if (!vset::contains(s, w)) REQUIRE(vset::contains(r, w));
        // components partition the graph and are connected
        auto comps = connected_components(g);
        std::size_t total = 0;
        for (const auto& c : comps) {
            total += c.size();
            REQUIRE(is_connected(induced_subgraph(g, c)));
        }
        REQUIRE(total == g.num_vertices());
    }
}
