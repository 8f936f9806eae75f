#include "doctest.h"

#include <random>
#include <set>

#include "dpd/graph.hpp"

using namespace dpd;

namespace {

// two-vertex (1,3)-tree: upper vertex takes inputs {a,b}, lower takes the
// internal edge plus input c and carries the output
LabeledGraph yy_tree(int a, int b, int c) {
    LabeledGraph g;
    g.num_vertices = 2;
    g.edges = {{0, 1}};
    g.in_legs.resize(3);
    g.in_legs[a - 1] = 0;
    g.in_legs[b - 1] = 0;
    g.in_legs[c - 1] = 1;
    g.out_legs = {1};
    return g;
}

LabeledGraph random_tree(std::mt19937& rng, int max_v) {
    int k = 1 + static_cast<int>(rng() % max_v);
    LabeledGraph g;
    g.num_vertices = k;
    for (int v = 1; v < k; ++v) {
        int u = static_cast<int>(rng() % v);
        if (rng() % 2) g.edges.emplace_back(u, v);
        else g.edges.emplace_back(v, u);
    }
    int m = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) g.in_legs.push_back(static_cast<int>(rng() % k));
    for (int i = 0; i < m; ++i) g.out_legs.push_back(static_cast<int>(rng() % k));
    return g;
}

LabeledGraph rename_vertices(const LabeledGraph& g, const std::vector<int>& newid) {
    LabeledGraph h;
    h.num_vertices = g.num_vertices;
    for (auto& [u, v] : g.edges) h.edges.emplace_back(newid[u], newid[v]);
    for (int t : g.in_legs) h.in_legs.push_back(newid[t]);
    for (int t : g.out_legs) h.out_legs.push_back(newid[t]);
    return h;
}

} // namespace

TEST_CASE("classification") {
    CHECK(classify(LabeledGraph::corolla(1, 2)) == GraphClass::RootedTree);
    CHECK(classify(LabeledGraph::corolla(1, 1)) == GraphClass::Ladder);

    LabeledGraph two_cycle;
    two_cycle.num_vertices = 2;
    two_cycle.edges = {{0, 1}, {1, 0}};
    two_cycle.in_legs = {0};
    two_cycle.out_legs = {1};
    CHECK(classify(two_cycle) == GraphClass::Wheeled);

    LabeledGraph chain;
    chain.num_vertices = 3;
    chain.edges = {{0, 1}, {1, 2}};
    chain.in_legs = {0};
    chain.out_legs = {2};
    CHECK(classify(chain) == GraphClass::Ladder);

    LabeledGraph self_loop;
    self_loop.num_vertices = 1;
    self_loop.edges = {{0, 0}};
    self_loop.in_legs = {0};
    self_loop.out_legs = {0};
    CHECK(classify(self_loop) == GraphClass::Wheeled);

    LabeledGraph disconnected;
    disconnected.num_vertices = 2;
    disconnected.in_legs = {0, 1};
    disconnected.out_legs = {0, 1};
    CHECK(classify(disconnected) == GraphClass::Dag);

    // parallel edges: no directed cycle, but an undirected one
    LabeledGraph parallel;
    parallel.num_vertices = 2;
    parallel.edges = {{0, 1}, {0, 1}};
    parallel.in_legs = {0, 0};
    parallel.out_legs = {1, 1};
    CHECK(classify(parallel) == GraphClass::ConnectedDag);

    CHECK(classify(yy_tree(1, 2, 3)) == GraphClass::RootedTree);
}

TEST_CASE("class nesting chain") {
    CHECK(class_contains(GraphClass::Wheeled, GraphClass::Ladder));
    CHECK(class_contains(GraphClass::Tree, GraphClass::RootedTree));
    CHECK(!class_contains(GraphClass::Ladder, GraphClass::Tree));
}

TEST_CASE("leg labels separate isomorphism classes") {
    CHECK(canonical_certificate(yy_tree(1, 2, 3)) == canonical_certificate(yy_tree(2, 1, 3)));
    CHECK(canonical_certificate(yy_tree(1, 2, 3)) != canonical_certificate(yy_tree(1, 3, 2)));

    // relabeling a corolla's legs permutes attachment and changes nothing,
    // but a multi-vertex graph with moved labels is distinct
    CHECK(canonical_certificate(yy_tree(2, 3, 1)) != canonical_certificate(yy_tree(1, 2, 3)));
}

TEST_CASE("certificate is invariant under vertex renaming") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        LabeledGraph g = random_tree(rng, 6);
        std::vector<int> newid(g.num_vertices);
        for (int i = 0; i < g.num_vertices; ++i) newid[i] = i;
        std::shuffle(newid.begin(), newid.end(), rng);
        CHECK(canonical_certificate(g) == canonical_certificate(rename_vertices(g, newid)));
    }
}

TEST_CASE("contraction basics") {
    LabeledGraph g = yy_tree(1, 2, 3);
    // whole graph -> corolla with the same legs
    LabeledGraph whole = contract(g, {0, 1});
    CHECK(whole.num_vertices == 1);
    CHECK(whole.edges.empty());
    CHECK(whole.m() == 1);
    CHECK(whole.n() == 3);
    // single vertex -> same graph up to renaming
    LabeledGraph one = contract(g, {0});
    CHECK(canonical_certificate(one) == canonical_certificate(g));
    CHECK(one.num_vertices == g.num_vertices);

    CHECK_THROWS_AS(contract(g, {}), std::invalid_argument);
    CHECK_THROWS_AS(contract(g, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(contract(g, {5}), std::invalid_argument);
}

TEST_CASE("contraction drops |V_H| - 1 vertices") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        LabeledGraph g = random_tree(rng, 6);
        if (g.num_vertices < 2) continue;
        int a = static_cast<int>(rng() % g.num_vertices);
        int b = static_cast<int>(rng() % g.num_vertices);
        std::set<int> hs{a, b};
        std::vector<int> h(hs.begin(), hs.end());
        LabeledGraph q = contract(g, h);
        CHECK(q.num_vertices == g.num_vertices - static_cast<int>(h.size()) + 1);
    }
}

TEST_CASE("iterated contraction agrees with contracting the union") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 80; ++trial) {
        LabeledGraph g = random_tree(rng, 6);
        if (g.num_vertices < 3) continue;
        // pick an edge path u-v-w when available: contract {u,v} then the image
        int u = g.edges[0].first, v = g.edges[0].second;
        int w = -1;
        for (auto& [a, b] : g.edges) {
            if ((a == v && b != u) || (a == u && b != v && b != u)) { w = (a == v) ? b : b; }
            if ((b == v && a != u) || (b == u && a != v && a != u)) { w = (b == v) ? a : a; }
        }
        if (w < 0) continue;
        auto ct1 = contract_with_map(g, {u, v});
        // image of w in the quotient
        int wq = 0;
        {
            std::vector<int> newid(g.num_vertices, -1);
            int c = 0;
            for (int x = 0; x < g.num_vertices; ++x)
                if (x != u && x != v) newid[x] = c++;
            wq = newid[w];
        }
        LabeledGraph two_step = contract(ct1.quotient, {wq, ct1.vH});
        LabeledGraph one_step = contract(g, {u, v, w});
        CHECK(canonical_certificate(two_step) == canonical_certificate(one_step));
    }
}

TEST_CASE("graft unit and identity laws at graph level") {
    // single corolla template with an identity-labeled plug returns the plug
    LabeledGraph plug = yy_tree(1, 2, 3);
    LabeledGraph tpl = LabeledGraph::corolla(1, 3);
    LabeledGraph r = graft(tpl, {plug});
    CHECK(canonical_certificate(r) == canonical_certificate(plug));

    // unit plug in a (1,1) chain splices through
    LabeledGraph chain;
    chain.num_vertices = 2;
    chain.edges = {{0, 1}};
    chain.in_legs = {0, 0};
    chain.out_legs = {1};
    LabeledGraph spliced = graft(chain, {LabeledGraph::corolla(1, 2), LabeledGraph::unit_edge()});
    CHECK(canonical_certificate(spliced) == canonical_certificate(LabeledGraph::corolla(1, 2)));

    CHECK(graft(LabeledGraph::corolla(1, 1), {LabeledGraph::unit_edge()}).is_unit_edge());

    CHECK_THROWS_AS(graft(tpl, {LabeledGraph::corolla(2, 3)}), std::invalid_argument);
}

TEST_CASE("two-vertex graft example") {
    // (2,2)-template from a (1,2)- and a (2,1)-corolla
    LabeledGraph tpl;
    tpl.num_vertices = 2;
    tpl.edges = {{0, 1}};
    tpl.in_legs = {0, 0};
    tpl.out_legs = {1, 1};
    LabeledGraph r = graft(tpl, {LabeledGraph::corolla(1, 2), LabeledGraph::corolla(2, 1)});
    CHECK(r.num_vertices == 2);
    CHECK(r.edges.size() == 1);
    CHECK(r.m() == 2);
    CHECK(r.n() == 2);
}

TEST_CASE("graft is associative at graph level") {
    // grafting a pre-grafted template equals grafting in stages
    std::mt19937 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        LabeledGraph inner = random_tree(rng, 3);
        if (classify(inner) == GraphClass::Dag) continue;
        LabeledGraph mid = LabeledGraph::corolla(inner.m(), inner.n());
        // template around the corolla: a chain appending one vertex below
        LabeledGraph outer;
        outer.num_vertices = 2;
        outer.edges = {{0, 1}};
        outer.in_legs.assign(inner.n(), 0);
        outer.out_legs.assign(inner.m(), 1);
        if (inner.m() < 1) continue;
        outer.out_legs[0] = 1;
        // lower vertex: (m, 1)-corolla absorbing the single edge
        LabeledGraph lower = LabeledGraph::corolla(inner.m(), 1);
        // one-step: graft outer with (inner, lower); two-step: first make the
        // template by grafting corollas, then plug
        LabeledGraph direct = graft(outer, {inner, lower});
        LabeledGraph staged_tpl = graft(outer, {mid, LabeledGraph::corolla(inner.m(), 1)});
        LabeledGraph staged = graft(staged_tpl, [&] {
            std::vector<LabeledGraph> plugs;
            plugs.push_back(inner);
            for (int v = 1; v < staged_tpl.num_vertices; ++v)
                plugs.push_back(LabeledGraph::corolla(staged_tpl.out_degree(v), staged_tpl.in_degree(v)));
            return plugs;
        }());
        CHECK(canonical_certificate(direct) == canonical_certificate(staged));
    }
}

TEST_CASE("enumeration counts") {
    // one corolla at weight 1
    auto c = enumerate_graphs(GraphClass::Tree, 2, 3, 1, {{2, 3}});
    CHECK(c.size() == 1);

    // three leaf pairings at (1,3) weight 2
    auto t13 = enumerate_graphs(GraphClass::Tree, 1, 3, 2, {{1, 2}});
    CHECK(t13.size() == 3);

    // five shapes at (2,2) weight 2 over mixed arities: one with the
    // single-output generator above, four with it below
    auto t22 = enumerate_graphs(GraphClass::Tree, 2, 2, 2, {{1, 2}, {2, 1}});
    CHECK(t22.size() == 5);

    // certificate-sorted and duplicate free
    for (size_t i = 1; i < t22.size(); ++i)
        CHECK(canonical_certificate(t22[i - 1]) < canonical_certificate(t22[i]));

    CHECK_THROWS_AS(enumerate_graphs(GraphClass::Tree, 4, 4, 7, {{1, 2}}), std::length_error);
}

TEST_CASE("classification respects enumeration class filter") {
    auto rooted = enumerate_graphs(GraphClass::RootedTree, 1, 3, 2, {{1, 2}});
    CHECK(rooted.size() == 3);
    auto ladders = enumerate_graphs(GraphClass::Ladder, 1, 3, 2, {{1, 2}});
    CHECK(ladders.empty());
}

TEST_CASE("debug dump is line based") {
    std::string d = dump_graph(yy_tree(1, 2, 3));
    CHECK(d.find("vertices: 2") != std::string::npos);
    CHECK(d.find("edges: 0->1") != std::string::npos);
    CHECK(d.find("out-legs: 1->1") != std::string::npos);
}
