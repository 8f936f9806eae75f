#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dpd/perm.hpp"

namespace dpd {

// Classes of labeled directed graphs, nested
// Ladder < RootedTree < Tree < ConnectedDag < Dag < Wheeled.
enum class GraphClass { Ladder, RootedTree, Tree, ConnectedDag, Dag, Wheeled };

const char* to_string(GraphClass c);
bool class_contains(GraphClass big, GraphClass small);

// Directed (m,n)-graph with labeled external legs.  Vertices are
// 0..num_vertices-1; internal edges are ordered pairs (src,dst) and may
// repeat (parallel edges) or loop (src == dst).  in_legs[k] / out_legs[k]
// give the vertex carrying the input/output leg labeled k+1.
//
// The trivial edge graph "|" (one edge, no vertex, m = n = 1) is encoded as
// num_vertices == 0 with in_legs == out_legs == {-1}.
struct LabeledGraph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> in_legs;
    std::vector<int> out_legs;

    int m() const { return static_cast<int>(out_legs.size()); }
    int n() const { return static_cast<int>(in_legs.size()); }
    bool is_unit_edge() const { return num_vertices == 0 && m() == 1 && n() == 1; }

    static LabeledGraph corolla(int m, int n);
    static LabeledGraph unit_edge();

    void validate() const; // throws std::invalid_argument on malformed data

    int out_degree(int v) const; // internal out-edges + output legs
    int in_degree(int v) const;

    bool operator==(const LabeledGraph& o) const = default;
};

GraphClass classify(const LabeledGraph& g);

// Canonical form machinery.  Two graphs get equal certificates iff they are
// isomorphic with leg labels preserved exactly.
struct CanonicalForm {
    LabeledGraph graph;        // vertices renumbered canonically, edges sorted
    std::string certificate;   // byte string identifying the iso class
    Perm vertex_map;           // one-based: old vertex v sits at position vertex_map(v+1)-1
};

CanonicalForm canonicalize_graph(const LabeledGraph& g);
std::string canonical_certificate(const LabeledGraph& g);

// Subgraph handling: a subgraph is specified by a nonempty vertex subset;
// incident edges and legs are induced.  contract() replaces the subgraph by
// a single vertex.  The alignment records how the contracted vertex's local
// edges correspond to the induced subgraph's (canonically chosen) leg labels.
struct SubgraphInduced {
    LabeledGraph graph;                       // the induced subgraph, canonical global labels
    std::vector<int> out_leg_edge;            // for its out-leg k+1: index of the g-edge it came from, or -1 (was a g-leg)
    std::vector<int> in_leg_edge;
    std::vector<int> out_leg_orig_label;      // original g out-leg label, or -1 (was internal)
    std::vector<int> in_leg_orig_label;
};

struct Contraction {
    LabeledGraph quotient;  // G/H
    int vH;                 // index of the contracted vertex inside quotient
    SubgraphInduced sub;
    // Alignment of the contracted vertex's incident structure with the
    // subgraph's legs, in the quotient's edge/leg indexing:
    // quotient-local slot -> subgraph leg label; filled by contract_with_map.
    std::vector<int> vH_out_edge_sub_label;   // per quotient edge index with src==vH (in edge order), plus out-legs by label
    std::vector<int> vH_out_leg_sub_label;    // per quotient out-leg at vH, ascending label order
    std::vector<int> vH_in_edge_sub_label;
    std::vector<int> vH_in_leg_sub_label;
};

SubgraphInduced induced_subgraph(const LabeledGraph& g, const std::vector<int>& vertices);
LabeledGraph contract(const LabeledGraph& g, const std::vector<int>& vertices);
Contraction contract_with_map(const LabeledGraph& g, const std::vector<int>& vertices);

// Grafting G(G_1,...,G_k).  The plug at template vertex v must have
// (m,n) = (out-degree, in-degree) of v.  Local labelings are fixed by the
// template's local edge order (see local_out_edges/local_in_edges): the
// plug's out-leg j+1 attaches to local out-slot j, in-leg j+1 to in-slot j.
// Unit edge plugs are allowed at (1,1)-vertices and splice through.
LabeledGraph graft(const LabeledGraph& tmpl, const std::vector<LabeledGraph>& plugs);

// Local edge enumeration used for all decoration bookkeeping: internal edges
// first (by index in g.edges), then legs in ascending label order.  Entries
// are {kind, id}: kind 0 = internal edge (id = edge index), kind 1 = leg
// (id = label).
struct LocalEdge {
    int kind;
    int id;
    bool operator==(const LocalEdge&) const = default;
};
std::vector<LocalEdge> local_out_edges(const LabeledGraph& g, int v);
std::vector<LocalEdge> local_in_edges(const LabeledGraph& g, int v);

// Exhaustive enumeration of Tree-class (m,n)-graphs with the given vertex
// count whose vertices take arities from `arities`.  Result is duplicate
// free and sorted by certificate.  Enumeration scale is capped; beyond it an
// std::length_error is thrown.
std::vector<LabeledGraph> enumerate_graphs(GraphClass cls, int m, int n, int weight,
                                           const std::vector<std::pair<int, int>>& arities);

// Line-based debug serialization (the CLI's --dump-graphs form).
std::string dump_graph(const LabeledGraph& g);

} // namespace dpd
